"""Differential and invariant suites run by ``kerrswap verify``.

Every suite draws its own generator from (seed, suite index), so results do
not depend on which suites run or in what order.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import evolution
from .conditions import closed_form_times
from .errors import LeakDetected
from .model import InitialState, SystemParams, derive_frequencies
from .oracle import integrate_interaction_picture, verify_subspace_invariance
from .swap import TwoQubitDensity, angular_distance, concurrence_wootters, swap_outcome

ORACLE_TOL = 1e-8


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    cases: int
    max_error: float
    tolerance: float
    failing_case: Optional[dict] = None

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def random_params(rng, ideal: bool = False) -> SystemParams:
    kappa = float(rng.uniform(0, 3))
    gamma = kappa if ideal else float(rng.uniform(0, 3))
    return SystemParams(float(rng.uniform(-10, 10)), float(rng.uniform(0, 1)), kappa, gamma)


def random_init(rng) -> InitialState:
    return InitialState(float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, 2 * math.pi)))


def _case(params: SystemParams, init: Optional[InitialState] = None, **extra) -> dict:
    case = {"params": dataclasses.asdict(params)}
    if init is not None:
        case["init"] = dataclasses.asdict(init)
    case.update({k: (float(v) if isinstance(v, (np.floating, float)) else v) for k, v in extra.items()})
    return case


class _Tracker:
    def __init__(self, name, tol):
        self.name = name
        self.tol = tol
        self.worst = 0.0
        self.cases = 0
        self.failing = None

    def record(self, err, case_fn: Callable[[], dict]):
        self.cases += 1
        err = float(err)
        if not np.isfinite(err):
            err = math.inf
        if err > self.worst:
            self.worst = err
        if err > self.tol and self.failing is None:
            self.failing = case_fn()

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.failing is None, self.cases, self.worst, self.tol, self.failing)


def suite_determinant_identity(rng, draws: int) -> SuiteResult:
    """eta eta' + 8 g^2 sinh^2(Omega t/2)/Omega^2 = 1, relative to the size of the terms."""
    tr = _Tracker("determinant-identity", 1e-12)
    t = np.linspace(0.0, 20.0, 81)
    for _ in range(draws):
        p = random_params(rng)
        df = derive_frequencies(p)
        eta, eta_p = evolution.eta_pair(df, t)
        w = evolution.coupling_term(df, t)
        lhs = eta * eta_p - w * w
        scale = np.maximum(1.0, np.maximum(np.abs(eta * eta_p), np.abs(w) ** 2))
        err = np.abs(lhs - 1.0) / scale
        tr.record(err.max(), lambda: _case(p, t=float(t[np.argmax(err)])))
    return tr.result()


def suite_branch_independence(rng, draws: int) -> SuiteResult:
    tr = _Tracker("branch-independence", 1e-12)
    t = np.linspace(0.0, 15.0, 61)
    for _ in range(draws):
        p, init = random_params(rng), random_init(rng)
        df = derive_frequencies(p)
        flipped = dataclasses.replace(df, omega_c=-df.omega_c)
        a = evolution.amplitudes_from_frequencies(df, init, t)
        b = evolution.amplitudes_from_frequencies(flipped, init, t)
        err = 0.0
        for x, y in zip(a, b):
            for u, v in ((x.a_e1, y.a_e1), (x.a_g2, y.a_g2)):
                err = max(err, float(np.max(np.abs(u - v) / np.maximum(1.0, np.abs(u)))))
        tr.record(err, lambda: _case(p, init))
    return tr.result()


def suite_oracle(rng, draws: int, ode_tol: float = 1e-12, tol: float = ORACLE_TOL) -> SuiteResult:
    """Normalized closed-form amplitudes against the adaptive ODE integration."""
    tr = _Tracker("oracle-equivalence", tol)
    times = np.linspace(0.0, 15.0, 151)
    for _ in range(draws):
        p, init = random_params(rng), random_init(rng)
        s1, s2 = evolution.normalized_amplitudes(p, init, times)
        start = (init.cos_theta, init.sin_theta * init.phase)
        n1 = integrate_interaction_picture(p, start, t_eval=times, tol=ode_tol).normalized()
        n2 = integrate_interaction_picture(p, (0.0, 1.0), t_eval=times, tol=ode_tol).normalized()
        err = max(
            np.max(np.abs(n1[:, 0] - s1.a_e1)), np.max(np.abs(n1[:, 1] - s1.a_g2)),
            np.max(np.abs(n2[:, 0] - s2.a_e1)), np.max(np.abs(n2[:, 1] - s2.a_g2)),
        )
        tr.record(err, lambda: _case(p, init, ode_tol=ode_tol))
    return tr.result()


def suite_wootters(rng, draws: int, per_draw: int = 100) -> SuiteResult:
    """Closed-form concurrence against the general two-qubit formula."""
    tr = _Tracker("wootters-consistency", 1e-10)
    for _ in range(draws):
        p, init = random_params(rng), random_init(rng)
        times = np.sort(rng.uniform(0.0, 15.0, per_draw))
        out = swap_outcome(p, init, times)
        for j, t in enumerate(times):
            if out.degenerate[j]:
                continue
            single = swap_outcome(p, init, float(t))
            w = concurrence_wootters(TwoQubitDensity.from_outcome(single))
            tr.record(abs(w - single.concurrence), lambda: _case(p, init, t=t))
    return tr.result()


def suite_excited_free(rng, draws: int, per_draw: int = 100) -> SuiteResult:
    """theta = (2n+1) pi/2: C = 1, P1 = P2 = 1/2, Theta = 0 for t > 0; degenerate at t = 0."""
    tr = _Tracker("excited-free-regime", 1e-10)
    for _ in range(draws):
        p = random_params(rng)
        k = int(rng.integers(0, 4))
        init = InitialState((2 * k + 1) * math.pi / 2, float(rng.uniform(0, 2 * math.pi)))
        times = rng.uniform(1e-3, 15.0, per_draw)
        out = swap_outcome(p, init, times)
        err = max(
            np.max(np.abs(out.concurrence - 1.0)),
            np.max(np.abs(out.p1 - 0.5)),
            np.max(np.abs(out.p2 - 0.5)),
            np.max(angular_distance(out.theta_phase, 0.0)),
        )
        at_zero = swap_outcome(p, init, 0.0)
        if not at_zero.degenerate:
            err = math.inf
        tr.record(err, lambda: _case(p, init))
    return tr.result()


def suite_maximality_law(rng, draws: int) -> SuiteResult:
    """kappa = gamma, theta = pi/4, phi = 0, delta = chi = 0: C(T_n) = 1, P1 = P2 = 1/2."""
    tr = _Tracker("maximality-law", 1e-8)
    init = InitialState(math.pi / 4, 0.0)
    for _ in range(draws):
        c = float(rng.uniform(0, 3))
        p = SystemParams(0.0, 0.0, c, c)
        times = closed_form_times(p, 5)
        out = swap_outcome(p, init, times)
        err = max(np.max(1.0 - out.concurrence), np.max(np.abs(out.p1 - 0.5)), np.max(np.abs(out.p2 - 0.5)))
        tr.record(err, lambda: _case(p, init))
    return tr.result()


def suite_ideal_equivalence(rng, draws: int) -> SuiteResult:
    """kappa = gamma = c reproduces the loss-free observables."""
    tr = _Tracker("ideal-system-equivalence", 1e-10)
    times = np.linspace(0.0, 15.0, 301)
    for _ in range(draws):
        base, init = random_params(rng, ideal=True), random_init(rng)
        ref = swap_outcome(dataclasses.replace(base, kappa=0.0, gamma_a=0.0), init, times)
        for c in (0.5, 2.0):
            p = dataclasses.replace(base, kappa=c, gamma_a=c)
            out = swap_outcome(p, init, times)
            err = max(
                np.nanmax(np.abs(out.concurrence - ref.concurrence), initial=0.0),
                np.nanmax(np.abs(out.p1 - ref.p1), initial=0.0),
                np.nanmax(np.abs(out.p2 - ref.p2), initial=0.0),
                np.nanmax(angular_distance(out.theta_phase, ref.theta_phase), initial=0.0),
            )
            if not np.array_equal(np.isnan(out.theta_phase), np.isnan(ref.theta_phase)):
                err = math.inf
            tr.record(err, lambda: _case(p, init))
    return tr.result()


def suite_subspace(rng, draws: int) -> SuiteResult:
    tr = _Tracker("subspace-invariance", 1e-10)
    for _ in range(draws):
        base = random_params(rng)
        nu = float(rng.uniform(5, 20))
        p = dataclasses.replace(base, nu=nu, omega=nu + base.delta * base.g)
        try:
            rep = verify_subspace_invariance(p, n_max=8, t_max=15.0, samples=31)
            err = rep.max_leak
            if rep.max_deviation >= ORACLE_TOL or rep.max_overlap_defect >= ORACLE_TOL:
                err = math.inf
        except LeakDetected as exc:
            err = exc.magnitude
        tr.record(err, lambda: _case(p))
    return tr.result()


SUITES = {
    "determinant-identity": (suite_determinant_identity, 1.0),
    "branch-independence": (suite_branch_independence, 1.0),
    "oracle-equivalence": (suite_oracle, 1.0),
    "wootters-consistency": (suite_wootters, 1.0),
    "excited-free-regime": (suite_excited_free, 0.4),
    "maximality-law": (suite_maximality_law, 0.2),
    "ideal-system-equivalence": (suite_ideal_equivalence, 0.4),
    "subspace-invariance": (suite_subspace, 0.1),
}


def run_suites(seed: int = 0, draws: int = 50, names=None, **oracle_options) -> list[SuiteResult]:
    """Run the named suites (all by default); ``draws`` scales every suite.

    ``oracle_options`` (``ode_tol``, ``tol``) are forwarded to the oracle suite.
    """
    results = []
    for index, (name, (fn, weight)) in enumerate(SUITES.items()):
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng([seed, index])
        n = max(1, int(round(draws * weight)))
        extra = oracle_options if name == "oracle-equivalence" else {}
        results.append(fn(rng, n, **extra))
    return results
