"""Physical parameters and the complex frequencies derived from them.

All rates are expressed in units of the coupling ``g`` and time is the scaled
time ``g t``.  ``g`` itself is kept as a field (default 1) so that the
scale-covariance of the derived quantities can be exercised directly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidParameters

SQRT2 = math.sqrt(2.0)

# absolute tolerance (relative to |delta| g) for omega - nu == delta * g
_FREQ_CONSISTENCY_RTOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """Parameters shared by both (identical) atom-cavity subsystems.

    Attributes
    ----------
    g : float
        Atom-field coupling, > 0.
    delta : float
        Detuning omega - nu, in units of g.
    chi : float
        Kerr susceptibility, in units of g.
    kappa : float
        Cavity photon loss rate, in units of g.
    gamma_a : float
        Atomic decay rate, in units of g.
    omega, nu : float, optional
        Absolute atomic and cavity frequencies.  Only the full-Hamiltonian
        check needs them.
    """

    delta: float = 0.0
    chi: float = 0.0
    kappa: float = 0.0
    gamma_a: float = 0.0
    g: float = 1.0
    omega: Optional[float] = None
    nu: Optional[float] = None

    def __post_init__(self):
        for name in ("delta", "chi", "kappa", "gamma_a", "g"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.g <= 0:
            raise InvalidParameters(f"g must be > 0, got {self.g}")
        if self.chi < 0:
            raise InvalidParameters(f"chi must be >= 0, got {self.chi}")
        if self.kappa < 0:
            raise InvalidParameters(f"kappa must be >= 0, got {self.kappa}")
        if self.gamma_a < 0:
            raise InvalidParameters(f"gamma_a must be >= 0, got {self.gamma_a}")
        if self.omega is not None and self.nu is not None:
            target = self.delta * self.g
            scale = max(1.0, abs(self.omega), abs(self.nu))
            if abs((self.omega - self.nu) - target) > _FREQ_CONSISTENCY_RTOL * scale:
                raise InvalidParameters(
                    f"omega - nu = {self.omega - self.nu} inconsistent with "
                    f"delta * g = {target}"
                )

    @property
    def ideal(self) -> bool:
        """True when cavity loss and atomic decay balance (kappa == gamma_a)."""
        return self.kappa == self.gamma_a

    def scaled(self, s: float) -> "SystemParams":
        """All rates multiplied by ``s`` (absolute frequencies dropped)."""
        return SystemParams(
            delta=self.delta * s,
            chi=self.chi * s,
            kappa=self.kappa * s,
            gamma_a=self.gamma_a * s,
            g=self.g * s,
        )


def _exact_cos_sin(angle: float) -> tuple[float, float]:
    # multiples of pi/2 return exact 0/+-1 so that cos(pi/2) is really zero
    quarter = angle / (math.pi / 2)
    k = round(quarter)
    if abs(angle - k * (math.pi / 2)) <= 8 * 2.220446049250313e-16 * max(1.0, abs(angle)):
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[k % 4]
    return math.cos(angle), math.sin(angle)


@dataclass(frozen=True)
class InitialState:
    """Initial state of subsystem 1, cos(theta)|e,1> + sin(theta) e^{-i phi}|g,2>.

    Subsystem 2 always starts in |g,2>.
    """

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise InvalidParameters("theta and phi must be finite")

    @property
    def cos_theta(self) -> float:
        return _exact_cos_sin(self.theta)[0]

    @property
    def sin_theta(self) -> float:
        return _exact_cos_sin(self.theta)[1]

    @property
    def phase(self) -> complex:
        """e^{-i phi}"""
        c, s = _exact_cos_sin(self.phi)
        return complex(c, -s)

    @property
    def excited_free(self) -> bool:
        """True for theta = (2n+1) pi/2, i.e. both subsystems start in |g,2>."""
        return self.cos_theta == 0.0


@dataclass(frozen=True)
class DerivedFrequencies:
    lambda_c: complex
    zeta: complex
    omega_c: complex
    omega0: float
    g: float


def derive_frequencies(params: SystemParams) -> DerivedFrequencies:
    """Compute lambda, zeta = lambda - 2 chi, Omega and Omega_0.

    Omega = sqrt(-zeta^2 - 8 g^2) is taken on the principal branch; a purely
    negative radicand maps onto the +i axis regardless of the sign of its
    (zero) imaginary part.
    """
    g = params.g
    lam = complex(params.delta, 0.5 * params.kappa - 0.5 * params.gamma_a)
    zeta = lam - 2.0 * params.chi
    radicand = -zeta * zeta - 8.0 * g * g
    if radicand.imag == 0.0:
        radicand = complex(radicand.real, 0.0)
    omega_c = cmath.sqrt(radicand)
    detuning = params.delta - 2.0 * params.chi
    omega0 = math.sqrt(detuning * detuning + 8.0 * g * g)
    return DerivedFrequencies(lam, zeta, omega_c, omega0, g)
