import pytest

CRITERIA = {
    1: "oracle equivalence (50 random sets, 1e-8)",
    2: "closed-form vs Wootters concurrence (1e4 outcomes, 1e-10)",
    3: "maximality law at T_n, n = 0..5",
    4: "theta = (2n+1) pi/2 regime",
    5: "Theta step profile vs theta",
    6: "local maxima 0.6 and 1.0 (theta=pi/3, phi=3pi/2)",
    7: "dissipative maximality where P1 = 1/2",
    8: "ideal-system equivalence",
    9: "subspace invariance of the full Hamiltonian",
    10: "byte-identical evolve CSV",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = marker.args[0]
        _outcomes.setdefault(n, []).append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        results = _outcomes[n]
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        suffix = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {CRITERIA.get(n, '')}{suffix}")
