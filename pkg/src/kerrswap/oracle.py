"""Brute-force references for the closed-form evolution.

Two independent routes:

* `integrate_interaction_picture` integrates i dc/dt = M(t) c on
  span{|e,1>, |g,2>} with M(t) = g sqrt(2) [[0, e^{i zeta t}], [e^{-i zeta t}, 0]]
  (note: not Hermitian once zeta is complex).  The exponential factor sits to
  the left of a sigma^+, so it is evaluated on the one-photon state and picks
  up zeta = lambda - 2 chi.
* `verify_subspace_invariance` exponentiates the full non-Hermitian
  Hamiltonian on a truncated Fock space and maps the result back to the
  interaction frame.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import InvalidParameters, LeakDetected, MissingAbsoluteFrequencies, StepUnderflow
from .evolution import SubsystemAmplitudes
from .model import SQRT2, SystemParams, derive_frequencies

TOL_RANGE = (1e-13, 1e-6)


@dataclass
class OdeTrajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), 2): c_e1, c_g2
    step_stats: dict = field(default_factory=dict)

    def normalized(self) -> np.ndarray:
        return self.states / np.linalg.norm(self.states, axis=1, keepdims=True)


def _rk4(t, h, c1, c2, k, zeta):
    """One classical RK4 step of the two-level interaction-picture system."""

    def rhs(s, y1, y2):
        ph = cmath.exp(1j * zeta * s)
        return -1j * k * ph * y2, -1j * k * y1 / ph

    a1, a2 = rhs(t, c1, c2)
    b1, b2 = rhs(t + 0.5 * h, c1 + 0.5 * h * a1, c2 + 0.5 * h * a2)
    d1, d2 = rhs(t + 0.5 * h, c1 + 0.5 * h * b1, c2 + 0.5 * h * b2)
    e1, e2 = rhs(t + h, c1 + h * d1, c2 + h * d2)
    return (
        c1 + h * (a1 + 2 * b1 + 2 * d1 + e1) / 6,
        c2 + h * (a2 + 2 * b2 + 2 * d2 + e2) / 6,
    )


def integrate_interaction_picture(
    params: SystemParams,
    init_amplitudes,
    t_max: float = 15.0,
    tol: float = 1e-12,
    t_eval=None,
    samples: int = 151,
) -> OdeTrajectory:
    """Adaptive RK4 with step doubling and local Richardson extrapolation.

    The local error of each accepted step, relative to the state norm, stays
    below ``tol``.  Samples are hit exactly (steps are clipped onto them).

    Parameters
    ----------
    init_amplitudes : SubsystemAmplitudes or pair of complex
        Amplitudes on (|e,1>, |g,2>) at t = 0.
    t_eval : array_like, optional
        Output times; defaults to ``samples`` points on [0, t_max].
    """
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise InvalidParameters(f"tol must lie in {TOL_RANGE}, got {tol}")
    if isinstance(init_amplitudes, SubsystemAmplitudes):
        c1, c2 = complex(init_amplitudes.a_e1), complex(init_amplitudes.a_g2)
    else:
        c1, c2 = (complex(c) for c in init_amplitudes)
    if t_eval is None:
        t_eval = np.linspace(0.0, t_max, samples)
    t_eval = np.asarray(t_eval, dtype=float)
    if t_eval.ndim != 1 or t_eval[0] < 0 or np.any(np.diff(t_eval) <= 0):
        raise InvalidParameters("t_eval must be strictly increasing and start at t >= 0")

    zeta = derive_frequencies(params).zeta
    k = SQRT2 * params.g
    # resolve the fastest phase rotation from the start
    h = 0.05 / (abs(zeta) + 2 * k + 1.0)
    t = 0.0
    out = np.empty((len(t_eval), 2), dtype=complex)
    n_acc = n_rej = 0
    max_err = 0.0
    for i, target in enumerate(t_eval):
        while t < target:
            clipped = target - t <= h
            step = target - t if clipped else h
            big = _rk4(t, step, c1, c2, k, zeta)
            half = _rk4(t, 0.5 * step, c1, c2, k, zeta)
            small = _rk4(t + 0.5 * step, 0.5 * step, half[0], half[1], k, zeta)
            d1 = (small[0] - big[0]) / 15.0
            d2 = (small[1] - big[1]) / 15.0
            scale = math.hypot(abs(small[0]), abs(small[1])) or 1e-300
            err = math.hypot(abs(d1), abs(d2)) / scale
            if err <= tol:
                c1, c2 = small[0] + d1, small[1] + d2
                t = target if clipped else t + step
                n_acc += 1
                max_err = max(max_err, err)
            else:
                n_rej += 1
            factor = 5.0 if err == 0 else min(5.0, max(0.2, 0.9 * (tol / err) ** 0.2))
            if not (clipped and err <= tol and factor > 1):
                h = step * factor
            if h < 1e-13 * max(1.0, t):
                raise StepUnderflow(f"step size {h:.3e} underflowed at gt={t:.6g}")
        out[i] = (c1, c2)
    return OdeTrajectory(t_eval, out, {"accepted": n_acc, "rejected": n_rej, "max_error": max_err})


@dataclass(frozen=True)
class FockOperators:
    """Atom (x) field operators on the truncated space, atom basis (|e>, |g>).

    Index of |s, n> is ``s * (n_max + 1) + n`` with s = 0 for e, 1 for g.
    """

    n_max: int
    a_matrix: np.ndarray
    adag_matrix: np.ndarray
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    sigma_z: np.ndarray

    @classmethod
    def build(cls, n_max: int) -> "FockOperators":
        if n_max < 2:
            raise InvalidParameters("n_max must be >= 2 to contain |g,2>")
        a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)
        id_f = np.eye(n_max + 1)
        id_a = np.eye(2)
        sp = np.array([[0, 1], [0, 0]], dtype=complex)
        sz = np.diag([1.0, -1.0]).astype(complex)
        return cls(
            n_max,
            np.kron(id_a, a),
            np.kron(id_a, a.conj().T),
            np.kron(sp, id_f),
            np.kron(sp.T, id_f),
            np.kron(sz, id_f),
        )

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)

    @property
    def number(self) -> np.ndarray:
        return self.adag_matrix @ self.a_matrix

    @property
    def excitation_number(self) -> np.ndarray:
        return self.sigma_plus @ self.sigma_minus + self.number

    def index(self, atom: str, n: int) -> int:
        return {"e": 0, "g": 1}[atom] * (self.n_max + 1) + n


def build_full_hamiltonian(params: SystemParams, n_max: int = 8) -> np.ndarray:
    """Non-Hermitian single-cavity Hamiltonian with detuning, Kerr and losses."""
    if params.omega is None or params.nu is None:
        raise MissingAbsoluteFrequencies("omega and nu are required for the full Hamiltonian")
    ops = FockOperators.build(n_max)
    a, ad = ops.a_matrix, ops.adag_matrix
    sp, sm = ops.sigma_plus, ops.sigma_minus
    return (
        0.5 * params.omega * ops.sigma_z
        + params.nu * ad @ a
        + params.g * (a @ sp + ad @ sm)
        + params.chi * ad @ ad @ a @ a
        - 0.5j * params.kappa * ad @ a
        - 0.5j * params.gamma_a * sp @ sm
    )


@dataclass
class SubspaceReport:
    n_max: int
    times: np.ndarray
    max_leak: float
    max_deviation: float
    max_overlap_defect: float
    free_frame_overlap_defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_leak < self.tol and self.max_deviation < 1e-8 and self.max_overlap_defect < 1e-8


def verify_subspace_invariance(
    params: SystemParams,
    n_max: int = 8,
    t_max: float = 15.0,
    tol: float = 1e-10,
    samples: int = 61,
    ode_tol: float = 1e-12,
) -> SubspaceReport:
    """Evolve |e,1> and |g,2> under the full Hamiltonian and check the two-state ansatz.

    Leakage is the population outside span{|e,1>, |g,2>} relative to the
    total.  The frame change back to the interaction picture uses the whole
    diagonal part of the Hamiltonian (free + Kerr + loss): only then is the
    generator exactly the oscillating coupling integrated by
    `integrate_interaction_picture`.  ``free_frame_overlap_defect`` records how
    far a free-part-only frame change lands from it.

    Raises
    ------
    LeakDetected
        If any sampled leak reaches ``tol``.
    """
    ham = build_full_hamiltonian(params, n_max)
    ops = FockOperators.build(n_max)
    idx = [ops.index("e", 1), ops.index("g", 2)]
    diag = np.diag(ham)[idx]
    free = np.real(np.diag(0.5 * params.omega * ops.sigma_z + params.nu * ops.number))[idx]
    times = np.linspace(0.0, t_max, samples)

    leak = deviation = overlap_defect = free_defect = 0.0
    for label, start in (("|e,1>", (1.0, 0.0)), ("|g,2>", (0.0, 1.0))):
        psi0 = np.zeros(ops.dim, dtype=complex)
        psi0[idx] = start
        reference = integrate_interaction_picture(params, start, t_eval=times, tol=ode_tol).normalized()
        for j, t in enumerate(times):
            psi = expm(-1j * ham * t) @ psi0
            weights = np.abs(psi) ** 2
            outside = np.delete(weights, idx)
            frac = float(np.sum(outside) / np.sum(weights))
            if frac >= tol:
                raise LeakDetected(label, frac, t)
            leak = max(leak, frac)
            frame = np.exp(1j * diag * t) * psi[idx]
            frame /= np.linalg.norm(frame)
            deviation = max(deviation, float(np.max(np.abs(frame - reference[j]))))
            overlap_defect = max(overlap_defect, abs(1.0 - abs(np.vdot(reference[j], frame))))
            free_frame = np.exp(1j * free * t) * psi[idx]
            free_frame /= np.linalg.norm(free_frame)
            free_defect = max(free_defect, abs(1.0 - abs(np.vdot(reference[j], free_frame))))
    return SubspaceReport(n_max, times, leak, deviation, overlap_defect, free_defect, tol)
