"""Exception hierarchy for gentangent."""


class GentangentError(Exception):
    """Base class for all library errors."""


class DimensionError(GentangentError):
    """Operands have mismatched or unsupported dimensions."""


class DegenerateFormError(GentangentError):
    """A bilinear form is numerically degenerate where nondegeneracy is required."""


class NotInjectiveError(GentangentError):
    """An endomorphism required to be injective is singular."""


class NotComplexError(GentangentError):
    """A matrix expected to square to -I does not."""


class NotPolynomialError(GentangentError):
    """A matrix squares to neither +I nor -I."""


class IncompatiblePairError(GentangentError):
    """An operator/metric pair is not an (alpha, epsilon)-structure."""


class UnknownFamilyError(GentangentError):
    """A family identifier is not in the registry."""


class NotAnticommutingError(GentangentError):
    """A triple expected to be pairwise anti-commuting is not."""


class WrongAlphaError(GentangentError):
    """Base data has the wrong square sign for the requested construction."""


class ProjectionSingularError(GentangentError):
    """The anchor projection of the constructed subspace is singular."""


class InvalidKahlerDataError(GentangentError):
    """Kahler input data violates its invariants."""
