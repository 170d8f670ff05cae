"""Acceptance gate: one test (or parametrized group) per criterion."""
import math
import time

import numpy as np
import pytest
from scipy.signal import argrelextrema

from kerrswap.cli import main
from kerrswap.conditions import closed_form_times
from kerrswap.model import InitialState, SystemParams
from kerrswap.oracle import verify_subspace_invariance
from kerrswap.swap import angular_distance, swap_outcome
from kerrswap.verify import random_init, random_params, suite_oracle, suite_wootters

SEED = 20240611


@pytest.mark.criterion(1)
def test_oracle_equivalence():
    start = time.perf_counter()
    result = suite_oracle(np.random.default_rng(SEED), 50)
    elapsed = time.perf_counter() - start
    assert result.cases == 50
    assert result.passed, result.failing_case
    assert result.max_error < 1e-8
    assert elapsed < 60.0


@pytest.mark.criterion(2)
def test_wootters_consistency():
    result = suite_wootters(np.random.default_rng(SEED), 100, per_draw=100)
    assert result.cases >= 9900  # only exact t = 0 draws could be degenerate
    assert result.passed, result.failing_case


@pytest.mark.criterion(3)
def test_maximality_law():
    p = SystemParams(0.0, 0.0, 0.7, 0.7)
    times = closed_form_times(p, 5)
    assert times[0] == pytest.approx(math.pi / (4 * math.sqrt(2)), abs=1e-14)
    out = swap_outcome(p, InitialState(math.pi / 4, 0.0), times)
    assert np.all(out.concurrence > 1 - 1e-8)
    np.testing.assert_allclose(out.p1, 0.5, atol=1e-8)
    np.testing.assert_allclose(out.p2, 0.5, atol=1e-8)


@pytest.mark.criterion(4)
def test_excited_free_regime():
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        p = random_params(rng)
        init = InitialState((2 * int(rng.integers(0, 4)) + 1) * math.pi / 2, float(rng.uniform(0, 2 * math.pi)))
        t = rng.uniform(0.0, 15.0, 100)
        t = t[t > 0]
        out = swap_outcome(p, init, t)
        np.testing.assert_allclose(out.concurrence, 1.0, atol=1e-10)
        np.testing.assert_allclose(out.p1, 0.5, atol=1e-10)
        np.testing.assert_allclose(out.p2, 0.5, atol=1e-10)
        assert np.all(angular_distance(out.theta_phase, 0.0) < 1e-10)
        assert swap_outcome(p, init, 0.0).degenerate


@pytest.mark.criterion(5)
def test_theta_step_profile():
    from kerrswap.conditions import theta_scan

    scan = theta_scan(SystemParams(0.0, 0.0, 1.0, 1.0), math.pi / 2, n=0)
    assert scan.time == pytest.approx(math.pi / (4 * math.sqrt(2)), abs=1e-14)
    defined = scan.phase[np.isfinite(scan.phase)]
    assert defined.size > 0.9 * scan.phase.size
    to_step = np.minimum(angular_distance(defined, 0.0), angular_distance(defined, math.pi))
    assert np.all(to_step < 1e-6)
    # both steps are present
    assert np.any(angular_distance(defined, 0.0) < 1e-6) and np.any(angular_distance(defined, math.pi) < 1e-6)

    scan = theta_scan(SystemParams(7.0, 0.4, 1.0, 1.0), math.pi / 2, n=0, samples=9)
    assert angular_distance(scan.phase[0], math.pi) < 1e-6


@pytest.mark.criterion(6)
def test_fig5a_local_maxima():
    p = SystemParams(0.0, 0.0, 1.0, 1.0)
    init = InitialState(math.pi / 3, 3 * math.pi / 2)
    t = np.linspace(0.0, 15.0, 30001)
    c = swap_outcome(p, init, t).concurrence
    peaks = c[argrelextrema(c, np.greater_equal, order=5)[0]]
    peaks = peaks[np.isfinite(peaks)]
    assert np.any(np.abs(peaks - 0.6) <= 0.05)
    # refine the top maxima: C reaches 1 where P1 = 1/2
    from kerrswap.conditions import find_maximal_times_numeric

    report = find_maximal_times_numeric(p, init, 15.0)
    top = swap_outcome(p, init, report.times).concurrence
    assert np.any(np.abs(top - 1.0) <= 1e-6)


FIG6 = {
    "fig6a": (SystemParams(10.0, 0.0, 0.1, 0.3), InitialState(math.pi / 4, 0.0)),
    "fig6c": (SystemParams(7.0, 0.0, 0.1, 0.3), InitialState(math.pi / 3, 3 * math.pi / 2)),
}


@pytest.mark.criterion(7)
@pytest.mark.parametrize("panel", sorted(FIG6))
def test_dissipative_maximality(panel):
    p, init = FIG6[panel]
    t = np.linspace(0.0, 15.0, 150001)
    out = swap_outcome(p, init, t)
    near = np.abs(out.p1 - 0.5) < 1e-6
    assert np.all(out.concurrence[near] > 1 - 1e-5)
    # zeros of P1 - 1/2, refined, must exist inside [0, 15]
    f = out.p1 - 0.5
    crossings = np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)[0]
    assert crossings.size > 0, f"P1 never reaches 1/2 on gt in [0, 15] (max C = {np.nanmax(out.concurrence):.4f})"
    from scipy.optimize import brentq

    for i in crossings:
        root = brentq(lambda s: swap_outcome(p, init, s).p1 - 0.5, t[i], t[i + 1], xtol=1e-15)
        at = swap_outcome(p, init, root)
        assert abs(at.p1 - 0.5) < 1e-6
        assert at.concurrence > 1 - 1e-5


@pytest.mark.criterion(8)
@pytest.mark.parametrize("c", [0.0, 0.5, 2.0])
def test_ideal_equivalence(c):
    rng = np.random.default_rng(SEED)
    t = np.linspace(0.0, 15.0, 1501)
    for _ in range(20):
        base, init = random_params(rng, ideal=True), random_init(rng)
        ref = swap_outcome(SystemParams(base.delta, base.chi, 0.0, 0.0), init, t)
        out = swap_outcome(SystemParams(base.delta, base.chi, c, c), init, t)
        for name in ("concurrence", "p1", "p2"):
            np.testing.assert_allclose(getattr(out, name), getattr(ref, name), atol=1e-10, rtol=0)
        np.testing.assert_array_equal(np.isnan(out.theta_phase), np.isnan(ref.theta_phase))
        ok = np.isfinite(ref.theta_phase)
        assert np.all(angular_distance(out.theta_phase[ok], ref.theta_phase[ok]) < 1e-10)


@pytest.mark.criterion(9)
@pytest.mark.parametrize(
    "params",
    [
        SystemParams(0.0, 0.0, 0.0, 0.0, omega=12.0, nu=12.0),
        SystemParams(10.0, 0.4, 2.0, 3.0, omega=20.0, nu=10.0),
        SystemParams(-7.0, 0.7, 0.1, 0.3, omega=5.0, nu=12.0),
    ],
    ids=["resonant", "detuned-kerr-lossy", "negative-detuning"],
)
def test_subspace_invariance(params):
    report = verify_subspace_invariance(params, n_max=8, t_max=15.0)
    assert report.max_leak < 1e-10
    assert report.max_deviation < 1e-8


@pytest.mark.criterion(10)
def test_evolve_deterministic(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("delta = 10\nchi = 0.4\nkappa = 2\ngamma = 3\ntheta = pi/4\nphi = 0\n")
    outputs = []
    for k in range(2):
        path = tmp_path / f"out{k}.csv"
        assert main(["evolve", "--config", str(cfg), "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) > 3000
