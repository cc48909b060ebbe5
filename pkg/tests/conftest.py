"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[str, list]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid): test belongs to acceptance criterion cid")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when != "call":
        return
    case = item.callspec.id if hasattr(item, "callspec") else item.name
    detail = dict(item.user_properties).get("summary", "")
    _RESULTS.setdefault(mark.args[0], []).append((case, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=lambda c: int(c.split("-")[0])):
        cases = _RESULTS[cid]
        bad = [c for c, ok, _ in cases if not ok]
        verdict = "PASS" if not bad else "FAIL"
        note = f"{len(cases) - len(bad)}/{len(cases)} cases"
        if bad:
            note += "; failing: " + ", ".join(bad)
        tr.write_line(f"criterion {cid}: {verdict} ({note})")
        for case, ok, detail in cases:
            tr.write_line(f"    [{'pass' if ok else 'FAIL'}] {case}: {detail}")
