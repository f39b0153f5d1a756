"""Exception types raised across the library."""


class GlsmStabError(Exception):
    """Base class for all library errors."""


class InvalidPackage(GlsmStabError):
    pass


class NotInvariant(GlsmStabError):
    pass


class ZeroThetaWeight(GlsmStabError):
    pass


class NoStableSupport(GlsmStabError):
    pass


class EmptyEnumeration(GlsmStabError):
    pass


class InvalidOmega(GlsmStabError):
    pass


class InconsistentDivisor(GlsmStabError):
    pass


class AllZeroNearX(GlsmStabError):
    pass


class EmptyInterval(GlsmStabError):
    pass


class NotNormalized(GlsmStabError):
    pass


class InconsistentFlags(GlsmStabError):
    pass


class DeltaZero(GlsmStabError):
    pass


class BadMu(GlsmStabError):
    pass


class NotATail(GlsmStabError):
    pass


class NotTailOrBridge(GlsmStabError):
    pass


class NegativeOrder(GlsmStabError):
    pass


class NonzeroDegree(GlsmStabError):
    pass


class NoValidRays(GlsmStabError):
    pass
