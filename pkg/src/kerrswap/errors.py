"""Exception types raised across the package."""


class KerrSwapError(Exception):
    """Base class for all package errors."""


class InvalidParameters(KerrSwapError, ValueError):
    pass


class DegenerateNorm(KerrSwapError, ArithmeticError):
    """Amplitude pair has (numerically) zero norm and cannot be normalized."""


class DegenerateOutcome(KerrSwapError, ArithmeticError):
    """The Bell-state projection returned the null vector, N(t) <= eps."""


class UndefinedPhase(KerrSwapError, ArithmeticError):
    """At least one amplitude modulus vanishes, so its phase is undefined."""


class NonPhysicalDensity(KerrSwapError, ValueError):
    pass


class PreconditionDissipative(KerrSwapError, ValueError):
    """Operation requires kappa == gamma_a."""


class ClosedFormInapplicable(KerrSwapError, ValueError):
    """8 g^2 - (delta - 2 chi)^2 < 0: the closed-form maximal times do not exist."""


class NoMaximaFound(KerrSwapError, RuntimeError):
    pass


class StepUnderflow(KerrSwapError, RuntimeError):
    pass


class MissingAbsoluteFrequencies(KerrSwapError, ValueError):
    pass


class LeakDetected(KerrSwapError, RuntimeError):
    def __init__(self, state, magnitude, time):
        self.state = state
        self.magnitude = magnitude
        self.time = time
        super().__init__(
            f"population leaked out of span{{|e,1>, |g,2>}} from {state}: "
            f"{magnitude:.3e} at gt={time:.6g}"
        )
