import pytest

_results: dict[int, list[tuple[str, bool, float]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(mark.args[0], []).append((item.name, rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        checks = _results[n]
        ok = all(p for _, p, _ in checks)
        secs = sum(d for _, _, d in checks)
        failed = [name for name, p, _ in checks if not p]
        extra = f"  failing: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.1f}s){extra}")
