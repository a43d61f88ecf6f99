import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "F2 x F2 oracle table over Lambda(F_p^2)",
    2: "H_{2,4} and the derived kernel for F2 x F2",
    3: "Blumer ideal is not quadratic",
    4: "Koszulity of exterior and symmetric algebras, n <= 4",
    5: "Demushkin alpha maps and Koszulity of the kernel",
    6: "elementary-type closure on 10 nested groups",
    7: "direct and dual routes agree on 50 random ideals",
    8: "property suites",
    9: "search null result",
}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(k): counts towards acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    notes = [v for k, v in item.user_properties if k == "acceptance_note"]
    _results.setdefault(mark.args[0], []).append((rep.passed, rep.duration, notes))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, title in CRITERIA.items():
        runs = _results.get(k)
        if not runs:
            tr.write_line(f"ACCEPTANCE {k} NOT RUN  {title}")
            continue
        ok = all(passed for passed, _, _ in runs)
        secs = sum(d for _, d, _ in runs)
        tr.write_line(f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'}  {title}  "
                      f"[{len(runs)} tests, {secs:.1f}s]")
        for _, _, notes in runs:
            for note in notes:
                tr.write_line(f"    {note}")
