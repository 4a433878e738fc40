"""Exception types shared across modules."""


class ClusterLabError(Exception):
    """Base class for errors raised on invalid input."""


class PreconditionViolated(ClusterLabError, ValueError):
    pass


class NotFullRank(PreconditionViolated):
    pass


class OddDimension(PreconditionViolated):
    pass


class CompletionFailed(ClusterLabError, RuntimeError):
    pass


class DimensionCap(ClusterLabError, ValueError):
    pass


class NotConnected(PreconditionViolated):
    pass


class CertificateMismatch(ClusterLabError, ValueError):
    pass


class NotPrime(ClusterLabError, ValueError):
    pass


class NonIntegerSum(ClusterLabError, ArithmeticError):
    pass


class NoFit(ClusterLabError, ValueError):
    pass
