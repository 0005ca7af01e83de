"""Exception hierarchy shared by every hsdp module."""


class HSDPError(Exception):
    """Base class for all hsdp errors."""


class ValidationError(HSDPError, ValueError):
    """An input violates a documented invariant or precondition."""


class NonHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class BadTrace(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BadParameter(ValidationError):
    pass


class BadRange(BadParameter):
    """A scalar lies outside the domain of a bound formula."""


class NotDistribution(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class TooFewInputs(ValidationError):
    pass


class ZeroLambdaMin(BadRange):
    pass


class FixedPointNotFullRank(BadRange):
    pass


class DegenerateInterval(BadRange):
    pass


class ContractionNotStrict(BadRange):
    """The per-step contraction rate is not below one."""


class NoConvergence(HSDPError, ArithmeticError):
    pass


class QuadratureFailure(NoConvergence):
    pass


class KrausExplosion(HSDPError):
    """Composing channels would exceed the Kraus operator cap."""


class NonUniqueFixedPoint(HSDPError):
    pass


class NoFixedPointFound(HSDPError):
    pass


class Infinite(HSDPError):
    """No finite value exists (e.g. smoothed max-divergence below its limit)."""

NotHermitian = NonHermitian
Divergent = Infinite
OutOfRegime = BadRange
