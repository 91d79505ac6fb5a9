"""Exception hierarchy shared by every module of the package."""


class ArtinError(Exception):
    """Base class for all errors raised by artin_series."""

    tag = "general"


class AmbientMismatch(ArtinError):
    pass


class NotArtinian(ArtinError):
    pass


class UnsupportedPresentation(ArtinError):
    pass


class NotAField(ArtinError):
    pass


class FamilyMismatch(ArtinError):
    pass


class StreamFinite(ArtinError):
    pass


class ContextMismatch(ArtinError):
    pass


class IncompatibleIdeal(ArtinError):
    pass


class UnitGenerator(ArtinError):
    pass


class SearchExhausted(ArtinError):
    pass


class NotHeightGenerated(ArtinError):
    pass


class NotMonomial(ArtinError):
    pass


class NotSupportedSlice(ArtinError):
    pass


class ConstraintViolated(ArtinError):
    pass


class SamplingExhausted(ArtinError):
    pass


class NotProper(ArtinError):
    pass


class ParseError(ArtinError):
    pass


class InternalSelfCheck(ArtinError):
    """A result the mathematics guarantees could not be produced.

    Raised loudly instead of returning a wrong answer; it always indicates
    a bug in the solver, never bad input.
    """


class NoSolution(InternalSelfCheck):
    pass
