"""Closed-form evolution of the two atom-field subsystems.

Each subsystem lives in the two-photon sector span{|e,1>, |g,2>}.  The
interaction-picture solution is

    C1 = (eta cos(theta) + w e^{-i phi} sin(theta)) e^{+i zeta t/2}
    C2 = (eta' e^{-i phi} sin(theta) + w cos(theta)) e^{-i zeta t/2}
    C3 = w e^{+i zeta t/2}
    C4 = eta' e^{-i zeta t/2}

with w = -i 2 sqrt(2) g sinh(Omega t/2) / Omega and

    eta  = cosh(Omega t/2) - i zeta sinh(Omega t/2) / Omega
    eta' = cosh(Omega t/2) + i zeta sinh(Omega t/2) / Omega.

Every function accepts a scalar time or a numpy array of times.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateNorm
from .model import SQRT2, DerivedFrequencies, InitialState, SystemParams, derive_frequencies

ArrayLike = Union[float, np.ndarray]

EPS_NORM = 1e-150

# |Omega t| below this switches sinh(Omega t/2)/Omega to its Taylor series
SERIES_THRESHOLD = 1e-4
_SERIES_TERMS = 8


@dataclass(frozen=True)
class SubsystemAmplitudes:
    """Amplitudes on {|e,1>, |g,2>}; fields may be complex scalars or arrays."""

    a_e1: complex
    a_g2: complex
    normalized: bool = False

    @property
    def norm_sq(self):
        return np.abs(self.a_e1) ** 2 + np.abs(self.a_g2) ** 2

    def __mul__(self, phase):
        return SubsystemAmplitudes(self.a_e1 * phase, self.a_g2 * phase, self.normalized)

    __rmul__ = __mul__


def sinhc_series(omega: complex, t: ArrayLike) -> np.ndarray:
    """Taylor series of sinh(omega t/2)/omega around omega t = 0."""
    t = np.asarray(t, dtype=float)
    x2 = (0.5 * omega * t) ** 2
    term = np.ones_like(x2, dtype=complex)
    total = term.copy()
    for k in range(1, _SERIES_TERMS):
        term = term * x2 / ((2 * k) * (2 * k + 1))
        total = total + term
    return 0.5 * t * total


def _hyperbolics(df: DerivedFrequencies, t: ArrayLike, scaled: bool = False):
    """Return (cosh(Omega t/2), sinh(Omega t/2)/Omega).

    With ``scaled`` both are multiplied by the positive factor
    exp(-Re(Omega) t/2), which leaves every phase intact and keeps
    normalized amplitudes finite at large dissipative growth.
    """
    t = np.asarray(t, dtype=float)
    omega = df.omega_c
    x = 0.5 * omega * t
    small = np.abs(omega * t) < SERIES_THRESHOLD
    if scaled:
        unit = np.exp(1j * x.imag)
        decay = np.exp(-2.0 * x.real - 1j * x.imag)
        cosh = 0.5 * (unit + decay)
        sinh = 0.5 * (unit - decay)
        factor = np.exp(-x.real)
    else:
        cosh = np.cosh(x)
        sinh = np.sinh(x)
        factor = 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        sinhc = np.where(small, 0.0, sinh / (omega if omega != 0 else 1.0))
    if np.any(small):
        sinhc = np.where(small, sinhc_series(omega, t) * factor, sinhc)
    return cosh, sinhc


def _eta_from(zeta, cosh, sinhc):
    term = 1j * zeta * sinhc
    return cosh - term, cosh + term


def eta_pair(df: DerivedFrequencies, t: ArrayLike, scaled: bool = False):
    """Return (eta(t), eta'(t)); eta' flips the sign of the sinh term."""
    cosh, sinhc = _hyperbolics(df, t, scaled)
    return _eta_from(df.zeta, cosh, sinhc)


def coupling_term(df: DerivedFrequencies, t: ArrayLike, scaled: bool = False):
    """w(t) = -i 2 sqrt(2) g sinh(Omega t/2) / Omega, shared by C1, C2 and C3."""
    _, sinhc = _hyperbolics(df, t, scaled)
    return -2j * SQRT2 * df.g * sinhc


def _components(df: DerivedFrequencies, t: ArrayLike, scaled: bool):
    cosh, sinhc = _hyperbolics(df, t, scaled)
    eta, eta_p = _eta_from(df.zeta, cosh, sinhc)
    w = -2j * SQRT2 * df.g * sinhc
    t = np.asarray(t, dtype=float)
    half = 0.5 * df.zeta * t
    if scaled:
        # common positive factor exp(-|Im zeta| t/2) keeps both frame factors <= 1
        shift = np.abs(half.imag)
        rot = np.exp(1j * half.real - half.imag - shift)
        counter = np.exp(-1j * half.real + half.imag - shift)
    else:
        rot = np.exp(1j * half)
        counter = np.exp(-1j * half)
    return eta, eta_p, w, rot, counter


def _subsystem1(df, init: InitialState, t, scaled):
    eta, eta_p, w, rot, counter = _components(df, t, scaled)
    c, s, ph = init.cos_theta, init.sin_theta, init.phase
    c1 = (eta * c + w * ph * s) * rot
    c2 = (eta_p * ph * s + w * c) * counter
    return SubsystemAmplitudes(c1[()], c2[()], False)


def _subsystem2(df, t, scaled):
    _, eta_p, w, rot, counter = _components(df, t, scaled)
    return SubsystemAmplitudes((w * rot)[()], (eta_p * counter)[()], False)


def amplitudes_subsystem1(params: SystemParams, init: InitialState, t: ArrayLike) -> SubsystemAmplitudes:
    """Unnormalized (C1, C2) of the subsystem prepared in cos|e,1> + sin e^{-i phi}|g,2>."""
    return _subsystem1(derive_frequencies(params), init, t, scaled=False)


def amplitudes_subsystem2(params: SystemParams, t: ArrayLike) -> SubsystemAmplitudes:
    """Unnormalized (C3, C4) of the subsystem prepared in |g,2>."""
    return _subsystem2(derive_frequencies(params), t, scaled=False)


def normalize(amps: SubsystemAmplitudes) -> SubsystemAmplitudes:
    """Scale to unit norm, keeping phases.

    Raises
    ------
    DegenerateNorm
        If the squared norm is <= EPS_NORM (at any sample, for arrays).
    """
    norm_sq = amps.norm_sq
    if np.any(norm_sq <= EPS_NORM) or not np.all(np.isfinite(norm_sq)):
        raise DegenerateNorm(f"cannot normalize amplitudes with |C|^2 = {np.min(norm_sq)!r}")
    norm = np.sqrt(norm_sq)
    a_e1 = np.asarray(amps.a_e1, dtype=complex) / norm
    a_g2 = np.asarray(amps.a_g2, dtype=complex) / norm
    return SubsystemAmplitudes(a_e1[()], a_g2[()], True)


def normalized_amplitudes(params: SystemParams, init: InitialState, t: ArrayLike):
    """Normalized (A1, A2) and (A3, A4) at time(s) ``t``.

    Identical to normalizing the C-form amplitudes, but evaluated with
    rescaled hyperbolic functions so that strongly dissipative runs do not
    overflow before the ratio is taken.
    """
    df = derive_frequencies(params)
    s1 = normalize(_subsystem1(df, init, t, scaled=True))
    s2 = normalize(_subsystem2(df, t, scaled=True))
    return s1, s2


def amplitudes_from_frequencies(df: DerivedFrequencies, init: InitialState, t: ArrayLike):
    """Unnormalized (C1, C2), (C3, C4) for precomputed frequencies.

    Lets callers pick the other square-root branch for Omega.
    """
    return _subsystem1(df, init, t, scaled=False), _subsystem2(df, t, scaled=False)
