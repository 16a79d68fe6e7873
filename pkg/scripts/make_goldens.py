"""Regenerate the machine-format CLI reports in tests/golden/.

    python scripts/make_goldens.py

Run from the repository root after an intentional change to a report layout.
"""

from __future__ import annotations

import io
import json
from pathlib import Path

from hlysa.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"


def run(argv: list[str]) -> tuple[int, str]:
    argv = [str(ROOT / a) if a.startswith("fixtures/") else a for a in argv]
    out = io.StringIO()
    code = main(argv + ["--format", "machine"], out=out)
    return code, out.getvalue()


def main_() -> None:
    for case in json.loads((GOLDEN / "commands.json").read_text()):
        code, text = run(case["argv"])
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (GOLDEN / f"{case['name']}.json").write_text(text, encoding="utf-8")
        print(f"wrote {case['name']}.json")


if __name__ == "__main__":
    main_()
