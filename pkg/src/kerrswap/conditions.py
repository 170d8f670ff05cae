"""Times of maximal atom-atom entanglement and phase scans at those times."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import ClosedFormInapplicable, NoMaximaFound, PreconditionDissipative
from .evolution import eta_pair
from .model import InitialState, SystemParams, derive_frequencies
from .swap import swap_outcome

# grid density for numeric searches, per period 2 pi / Omega_0
POINTS_PER_PERIOD = 2000
MAXIMAL_TOL = 1e-6


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    ROOT_FIND = "root-find"


@dataclass
class MaximalityReport:
    """Ordered scaled times at which the concurrence is maximal.

    ``all_times`` marks the theta = (2n+1) pi/2 case where every t > 0
    qualifies; ``times`` is then empty.
    """

    times: np.ndarray
    method: Method
    residuals: np.ndarray
    all_times: bool = False
    notes: list = field(default_factory=list)


def _require_ideal(params: SystemParams):
    if not params.ideal:
        raise PreconditionDissipative(
            f"requires kappa == gamma_a (got kappa={params.kappa}, gamma_a={params.gamma_a})"
        )


def closed_form_applicable(params: SystemParams) -> bool:
    d = params.delta - 2 * params.chi
    return 8 * params.g**2 - d * d >= 0


def maximality_residual(params: SystemParams, t) -> float:
    """|eta(t)|^4 - (64 g^4 / Omega_0^4) sin^4(Omega_0 t / 2), for kappa == gamma_a.

    With kappa == gamma_a, Omega = i Omega_0 and sinh(Omega t/2)^4 equals
    sin(Omega_0 t/2)^4.
    """
    _require_ideal(params)
    df = derive_frequencies(params)
    eta, _ = eta_pair(df, t)
    w0 = df.omega0
    s = np.sin(0.5 * w0 * np.asarray(t, dtype=float))
    return (np.abs(eta) ** 4 - 64 * params.g**4 / w0**4 * s**4)[()]


def closed_form_times(params: SystemParams, n_max: int) -> np.ndarray:
    """T_n = 2 n pi / Omega_0 + (2 / Omega_0) atan(Omega_0 / sqrt(8 g^2 - (delta - 2 chi)^2))."""
    _require_ideal(params)
    if not closed_form_applicable(params):
        raise ClosedFormInapplicable(
            "8 g^2 - (delta - 2 chi)^2 < 0: the maximality equation has no real root"
        )
    d = params.delta - 2 * params.chi
    w0 = derive_frequencies(params).omega0
    # atan2 keeps the boundary case 8 g^2 == d^2 finite (atan -> pi/2)
    offset = 2.0 / w0 * math.atan2(w0, math.sqrt(8 * params.g**2 - d * d))
    n = np.arange(n_max + 1)
    return 2 * n * math.pi / w0 + offset


def mirror_times(params: SystemParams, n_max: int) -> np.ndarray:
    """Second root family of the maximality equation, 2 ((n+1) pi - atan(.)) / Omega_0.

    The equation fixes tan^2(Omega_0 t / 2), so both signs of the arctangent
    solve it; `closed_form_times` keeps only the positive one.
    """
    t0 = closed_form_times(params, 0)[0]
    w0 = derive_frequencies(params).omega0
    n = np.arange(n_max + 1)
    return 2 * (n + 1) * math.pi / w0 - t0


def maximal_times_closed_form(
    params: SystemParams,
    n_max: int = 5,
    init: InitialState | None = None,
    t_max: float = 50.0,
) -> MaximalityReport:
    """Closed-form maximal times T_0 .. T_{n_max}.

    Falls back to `find_maximal_times_numeric` (needs ``init``) when the
    closed form has no real solution; the report is then flagged ROOT_FIND.
    """
    _require_ideal(params)
    if init is not None and init.excited_free:
        return MaximalityReport(np.array([]), Method.CLOSED_FORM, np.array([]), all_times=True)
    if not closed_form_applicable(params):
        if init is None:
            raise ClosedFormInapplicable(
                "8 g^2 - (delta - 2 chi)^2 < 0 and no initial state given for a numeric search"
            )
        report = find_maximal_times_numeric(params, init, t_max)
        keep = slice(0, n_max + 1)
        report.times = report.times[keep]
        report.residuals = report.residuals[keep]
        report.notes.append("closed form inapplicable: 8 g^2 < (delta - 2 chi)^2")
        return report
    times = closed_form_times(params, n_max)
    residuals = np.abs(maximality_residual(params, times))
    return MaximalityReport(times, Method.CLOSED_FORM, residuals)


def _dedupe(times, tol=1e-9):
    out = []
    for t in sorted(times):
        if not out or t - out[-1] > tol:
            out.append(t)
    return out


def find_maximal_times_numeric(
    params: SystemParams,
    init: InitialState,
    t_max: float,
    points_per_period: int = POINTS_PER_PERIOD,
) -> MaximalityReport:
    """Locate every t in (0, t_max] where the concurrence reaches 1 (within 1e-6).

    Since C = 2 sqrt(P1 P2), maximal points are the zeros of P1 - 1/2; sign
    changes on a dense grid are refined with Brent's method.  Grid maxima of
    C that touch 1 without a sign change are refined by bounded minimization.
    Works for any kappa, gamma_a.
    """
    if t_max <= 0:
        raise ValueError("t_max must be > 0")
    if init.excited_free:
        return MaximalityReport(np.array([]), Method.ROOT_FIND, np.array([]), all_times=True)
    w0 = derive_frequencies(params).omega0
    n_grid = int(math.ceil(points_per_period * t_max * w0 / (2 * math.pi))) + 1
    grid = np.linspace(0.0, t_max, max(n_grid, 64))
    out = swap_outcome(params, init, grid)
    f = out.p1 - 0.5
    conc = out.concurrence

    def p1_offset(t):
        return swap_outcome(params, init, t).p1 - 0.5

    def deficit(t):
        return 1.0 - swap_outcome(params, init, t).concurrence

    candidates = []
    ok = np.isfinite(f)
    crossing = ok[:-1] & ok[1:] & (np.sign(f[:-1]) * np.sign(f[1:]) < 0)
    for i in np.nonzero(crossing)[0]:
        candidates.append(brentq(p1_offset, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-15))
    candidates.extend(grid[1:][f[1:] == 0.0])
    # touching maxima without a sign change of P1 - 1/2
    touching = (conc[1:-1] >= conc[:-2]) & (conc[1:-1] >= conc[2:]) & (conc[1:-1] > 1 - 1e-4)
    touching &= ~crossing[:-1] & ~crossing[1:] & (f[1:-1] != 0.0)
    for i in np.nonzero(touching)[0] + 1:
        res = minimize_scalar(deficit, bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                              options={"xatol": 1e-12})
        candidates.append(float(res.x))
    times = [t for t in _dedupe(candidates) if t > 0 and deficit(t) < MAXIMAL_TOL]
    if not times:
        raise NoMaximaFound(f"concurrence never reaches 1 - {MAXIMAL_TOL:g} on (0, {t_max}]")
    times = np.array(times)
    residuals = np.array([deficit(t) for t in times])
    return MaximalityReport(times, Method.ROOT_FIND, residuals)


def closest_approach_times(params: SystemParams, n_max: int) -> np.ndarray:
    """Times minimizing |maximality residual| in each period 2 pi / Omega_0.

    Used in place of T_n when the maximality equation has no real root.
    """
    _require_ideal(params)
    w0 = derive_frequencies(params).omega0
    period = 2 * math.pi / w0
    times = []
    for n in range(n_max + 1):
        res = minimize_scalar(
            lambda t: abs(maximality_residual(params, t)),
            bounds=(n * period, (n + 1) * period),
            method="bounded",
            options={"xatol": 1e-12},
        )
        times.append(float(res.x))
    return np.array(times)


@dataclass
class ThetaScan:
    time: float
    method: Method
    theta: np.ndarray
    phase: np.ndarray  # NaN where undefined
    concurrence: np.ndarray


def scan_time(params: SystemParams, n: int = 0) -> tuple[float, Method]:
    if closed_form_applicable(params):
        return float(closed_form_times(params, n)[n]), Method.CLOSED_FORM
    return float(closest_approach_times(params, n)[n]), Method.ROOT_FIND


def theta_scan(params: SystemParams, phi: float, n: int = 0, samples: int = 361) -> ThetaScan:
    """Bell phase Theta over theta in [0, 2 pi] at the n-th maximal time.

    theta_k = 2 pi k / (samples - 1), so multiples of pi/2 land exactly on the
    grid when (samples - 1) is divisible by 4.
    """
    _require_ideal(params)
    t, method = scan_time(params, n)
    thetas = np.array([math.pi * (2 * k / (samples - 1)) for k in range(samples)])
    phase = np.empty(samples)
    conc = np.empty(samples)
    for k, th in enumerate(thetas):
        out = swap_outcome(params, InitialState(float(th), phi), t)
        phase[k] = out.theta_phase
        conc[k] = out.concurrence
    return ThetaScan(t, method, thetas, phase, conc)
