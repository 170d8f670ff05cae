"""Bell-state measurement on the two cavity fields and the atom-atom outcome.

Projecting |Psi(t)> = (A1|e,1> + A2|g,2>) (x) (A3|e,1> + A4|g,2>) onto the
field state (|1,2> - |2,1>)/sqrt(2) leaves the atoms in

    (A1 A4 |e,g> - A2 A3 |g,e>) / sqrt(2),

with squared norm N = (|A1 A4|^2 + |A2 A3|^2) / 2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOutcome, NonPhysicalDensity, UndefinedPhase
from .evolution import EPS_NORM, SubsystemAmplitudes, normalized_amplitudes
from .model import InitialState, SystemParams

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

# basis order of TwoQubitDensity
BASIS = ("ee", "eg", "ge", "gg")


def principal_angle(x):
    """Map angles onto (-pi, pi]."""
    y = np.angle(np.exp(1j * np.asarray(x, dtype=float)))
    return np.where(y <= -math.pi, math.pi, y)[()]


def angular_distance(a, b):
    """Distance between two angles on the circle, in [0, pi]."""
    return np.abs(principal_angle(np.asarray(a) - np.asarray(b)))[()]


@dataclass(frozen=True)
class SwapOutcome:
    """Atom-atom state left by the measurement.

    ``amp_eg``/``amp_ge`` are normalized coefficients of |e,g> and |g,e>.
    When ``degenerate`` is set the projection was the null vector and every
    observable is NaN.  Fields hold arrays when `swap_outcome` is given an
    array of times.
    """

    amp_eg: complex
    amp_ge: complex
    n_t: float
    concurrence: float
    p1: float
    p2: float
    theta_phase: float
    degenerate: bool


def _require_normalized(*amps: SubsystemAmplitudes):
    for a in amps:
        if not a.normalized:
            raise ValueError("expected normalized amplitudes (use evolution.normalize)")


def _project(a1, a2, a3, a4):
    """Vectorized projection; returns the SwapOutcome fields as arrays."""
    a1, a2, a3, a4 = (np.asarray(a, dtype=complex) for a in (a1, a2, a3, a4))
    eg = a1 * a4
    ge = a2 * a3
    x = np.abs(eg)
    y = np.abs(ge)
    n_t = 0.5 * (x * x + y * y)
    degenerate = n_t <= EPS_NORM
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(degenerate, np.nan, 1.0 / np.sqrt(2.0 * n_t))
        amp_eg = eg * scale
        amp_ge = -ge * scale
        # 2N = x^2 + y^2, so C = |A1||A2||A3||A4| / N = 2xy / (x^2 + y^2)
        concurrence = np.where(degenerate, np.nan, np.minimum(1.0, x * y / n_t))
        p1 = np.where(degenerate, np.nan, x * x / (2.0 * n_t))
        p2 = np.where(degenerate, np.nan, y * y / (2.0 * n_t))
    moduli = np.stack([np.abs(a1), np.abs(a2), np.abs(a3), np.abs(a4)])
    phase_ok = np.all(moduli > EPS_NORM, axis=0) & ~degenerate
    theta = np.where(phase_ok, principal_angle(np.angle(ge * np.conj(eg))), np.nan)
    return amp_eg, amp_ge, n_t, concurrence, p1, p2, theta, degenerate


def bsm_project(s1: SubsystemAmplitudes, s2: SubsystemAmplitudes) -> SwapOutcome:
    """Project the field modes onto |Psi^->_F and return the atom-atom outcome."""
    _require_normalized(s1, s2)
    fields = _project(s1.a_e1, s1.a_g2, s2.a_e1, s2.a_g2)
    amp_eg, amp_ge, n_t, conc, p1, p2, theta, degenerate = (f[()] for f in fields)
    return SwapOutcome(
        complex(amp_eg) if np.ndim(amp_eg) == 0 else amp_eg,
        complex(amp_ge) if np.ndim(amp_ge) == 0 else amp_ge,
        float(n_t) if np.ndim(n_t) == 0 else n_t,
        float(conc) if np.ndim(conc) == 0 else conc,
        float(p1) if np.ndim(p1) == 0 else p1,
        float(p2) if np.ndim(p2) == 0 else p2,
        float(theta) if np.ndim(theta) == 0 else theta,
        bool(degenerate) if np.ndim(degenerate) == 0 else degenerate,
    )


def swap_outcome(params: SystemParams, init: InitialState, t) -> SwapOutcome:
    """Evolve both subsystems to ``t`` (scalar or array) and measure."""
    s1, s2 = normalized_amplitudes(params, init, t)
    return bsm_project(s1, s2)


def _norm_check(s1, s2):
    _require_normalized(s1, s2)
    x = abs(s1.a_e1 * s2.a_g2)
    y = abs(s1.a_g2 * s2.a_e1)
    n_t = 0.5 * (x * x + y * y)
    if n_t <= EPS_NORM:
        raise DegenerateOutcome(f"N(t) = {n_t!r}: Bell-state projection is the null vector")
    return x, y, n_t


def concurrence_closed_form(s1: SubsystemAmplitudes, s2: SubsystemAmplitudes) -> float:
    """|A1||A2||A3||A4| / N(t)."""
    _, _, n_t = _norm_check(s1, s2)
    prod = abs(s1.a_e1) * abs(s1.a_g2) * abs(s2.a_e1) * abs(s2.a_g2)
    return min(1.0, float(prod / n_t))


def occupation_probabilities(s1: SubsystemAmplitudes, s2: SubsystemAmplitudes):
    """(P1, P2): populations of |e,g> and |g,e> after the swap."""
    x, y, n_t = _norm_check(s1, s2)
    return float(x * x / (2 * n_t)), float(y * y / (2 * n_t))


def bell_phase(s1: SubsystemAmplitudes, s2: SubsystemAmplitudes) -> float:
    """Relative phase Theta with the state written as |e,g> - e^{i Theta}|g,e>.

    With A_i = |A_i| e^{-i phi_i}, Theta = (phi_1 + phi_4) - (phi_2 + phi_3),
    reduced to (-pi, pi].
    """
    _require_normalized(s1, s2)
    amps = (s1.a_e1, s1.a_g2, s2.a_e1, s2.a_g2)
    if min(abs(a) for a in amps) <= EPS_NORM:
        raise UndefinedPhase("an amplitude vanishes; Theta is undefined")
    a1, a2, a3, a4 = amps
    return float(principal_angle(np.angle(a2 * a3 * np.conj(a1 * a4))))


@dataclass(frozen=True)
class TwoQubitDensity:
    """Two-qubit density matrix on the basis |ee>, |eg>, |ge>, |gg>."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise NonPhysicalDensity(f"expected a 4x4 matrix, got shape {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise NonPhysicalDensity("density matrix has non-finite entries")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise NonPhysicalDensity("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > 1e-12:
            raise NonPhysicalDensity(f"trace {np.trace(rho)} != 1")
        if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -1e-10:
            raise NonPhysicalDensity("density matrix has negative eigenvalues")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_outcome(cls, outcome: SwapOutcome) -> "TwoQubitDensity":
        if outcome.degenerate:
            raise DegenerateOutcome("degenerate outcome has no density matrix")
        psi = np.array([0.0, outcome.amp_eg, outcome.amp_ge, 0.0], dtype=complex)
        return cls(np.outer(psi, psi.conj()))


def wootters_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of rho (sy x sy) rho* (sy x sy), descending, from a general eigensolver.

    Negative values above -1e-10 are clamped to zero.  On pure states the
    smallest ones carry errors of order 1e-17, which become ~1e-8 after a
    square root; `concurrence_wootters` therefore does not use them directly.
    """
    rho = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    r = rho @ SIGMA_YY @ rho.conj() @ SIGMA_YY
    ev = np.linalg.eigvals(r).real
    if np.min(ev) < -1e-10:
        raise NonPhysicalDensity(f"eigenvalue {np.min(ev)} of R is negative")
    return np.sort(np.clip(ev, 0.0, None))[::-1]


def wootters_roots(density: TwoQubitDensity) -> np.ndarray:
    """Square roots of the Wootters eigenvalues, descending.

    Writing rho = Phi Phi^dagger (Phi from its eigendecomposition), the
    eigenvalues of rho (sy x sy) rho* (sy x sy) are the squared singular
    values of the symmetric matrix Phi^T (sy x sy) Phi.  Taking singular
    values avoids the square root of eigenvalues that are zero up to rounding.
    """
    d, v = np.linalg.eigh(density.rho)
    phi = v * np.sqrt(np.clip(d, 0.0, None))
    tau = phi.T @ SIGMA_YY @ phi
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_wootters(density: TwoQubitDensity) -> float:
    """max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)), clamped to [0, 1]."""
    if not isinstance(density, TwoQubitDensity):
        density = TwoQubitDensity(density)
    s = wootters_roots(density)
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


class BellKind(enum.Enum):
    PSI_MINUS = "psi-"
    PSI_PLUS = "psi+"
    MAX_ENTANGLED_OTHER = "max-entangled"
    NOT_MAXIMAL = "not-maximal"


def classify_bell(outcome: SwapOutcome, tol: float = 1e-8) -> BellKind:
    """Classify a non-degenerate outcome.

    Maximally entangled outcomes carry their phase in ``outcome.theta_phase``;
    Theta = 0 is |Psi^->, Theta = pi is |Psi^+>.
    """
    if outcome.degenerate:
        raise DegenerateOutcome("cannot classify a degenerate outcome")
    if abs(outcome.concurrence - 1.0) > tol:
        return BellKind.NOT_MAXIMAL
    theta = outcome.theta_phase
    if math.isnan(theta):
        return BellKind.MAX_ENTANGLED_OTHER
    if angular_distance(theta, 0.0) <= tol:
        return BellKind.PSI_MINUS
    if angular_distance(theta, math.pi) <= tol:
        return BellKind.PSI_PLUS
    return BellKind.MAX_ENTANGLED_OTHER
