from __future__ import annotations

import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" in rep.nodeid and rep.when == "call" or (
                    "test_acceptance.py::test_criterion_" in rep.nodeid and outcome == "error"):
                name = rep.nodeid.split("::")[-1]
                rows.append((int(name.split("_")[2]), name, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for _, name, verdict in sorted(rows):
            terminalreporter.write_line(f"{verdict}  {name}")
