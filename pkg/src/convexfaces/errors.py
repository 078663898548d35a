"""Exception types raised across the package."""


class ConvexError(Exception):
    """Base class for all errors raised by convexfaces."""


class DimensionMismatch(ConvexError, ValueError):
    pass


class EmptySet(ConvexError, ValueError):
    pass


class EmptyInput(ConvexError, ValueError):
    pass


class NotMember(ConvexError, ValueError):
    pass


class UnsupportedStrict(ConvexError, ValueError):
    """A representation-level operation was given a set with strict rows."""


class UnsupportedRays(ConvexError, ValueError):
    pass


class UnsupportedComposite(ConvexError, ValueError):
    pass


class ZeroScale(ConvexError, ValueError):
    pass


class ContainsOrigin(ConvexError, ValueError):
    pass


class TooLarge(ConvexError, ValueError):
    """Input exceeds the desk-scale limits of the exact conversions."""


class ParentMismatch(ConvexError, ValueError):
    pass


class NotProperFace(ConvexError, ValueError):
    pass


class IsInteriorPoint(ConvexError, ValueError):
    pass


class OverlappingInteriors(ConvexError, ValueError):
    pass


class NotProperlySeparable(ConvexError, ValueError):
    pass


class ChainNotNested(ConvexError, ValueError):
    pass


class MethodDisagreement(ConvexError, RuntimeError):
    """Two intrinsic-core tests disagreed on the same input.

    This signals a bug in the library; it is never expected on valid input.
    """

    def __init__(self, verdicts):
        self.verdicts = dict(verdicts)
        yes = sorted(k for k, v in self.verdicts.items() if v)
        no = sorted(k for k, v in self.verdicts.items() if not v)
        super().__init__(f"icr methods disagree: true={yes} false={no}")
