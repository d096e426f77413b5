import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "q=0.5 comparison table",
    2: "spot check q=0.1, theta=pi/2",
    3: "unitary scenario sweep",
    4: "dominance on random instances",
    5: "Kraus-representation invariance",
    6: "pure-state complementarity and variance identity",
    7: "block-norm identities and Hlawka",
    8: "exhaustive-search soundness",
}

_outcomes: dict[int, list[tuple[str, bool]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    n = dict(report.user_properties).get("criterion")
    if n is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[n].append((report.nodeid, report.outcome == "passed"))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n}: NOT RUN  {title}")
            continue
        failed = [nodeid for nodeid, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {n}: {status}  {title} ({len(results) - len(failed)}/{len(results)} tests)")
        for nodeid in failed:
            tr.write_line(f"    failed: {nodeid}")
