"""Exception types raised across quatlin."""


class QuatlinError(Exception):
    """Base class for all library errors."""


class ZeroQuaternion(QuatlinError, ZeroDivisionError):
    pass


class DimensionMismatch(QuatlinError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NotTwoByTwo(DimensionMismatch):
    pass


class NotHermitian(QuatlinError, ValueError):
    pass


class NotSymplectic(QuatlinError, ValueError):
    pass


class ZeroVector(QuatlinError, ValueError):
    pass


class EmptySubspace(QuatlinError, ValueError):
    pass


class NoConvergence(QuatlinError, RuntimeError):
    pass


class PairingFailure(QuatlinError, RuntimeError):
    """No conjugate partner found for an eigenvalue of the complex adjoint."""


class ReconstructionFailure(QuatlinError, RuntimeError):
    pass


class RootSolverFailure(QuatlinError, RuntimeError):
    pass


class NotCritical(QuatlinError, ValueError):
    pass


class NotTangent(QuatlinError, ValueError):
    pass


class IndexOutOfRange(QuatlinError, IndexError):
    pass


class NotLeftEigenvalue(QuatlinError, ValueError):
    pass


class InvariantViolation(QuatlinError, AssertionError):
    """A mathematical identity the library checks did not hold numerically."""


class ParseError(QuatlinError, ValueError):
    pass


class AmbiguousRho(UserWarning):
    """Issued when a unit quaternion is real, so its imaginary axis is undefined."""
