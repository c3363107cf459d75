"""Exception taxonomy shared by all modules.

Two families matter for callers: usage errors (bad shapes, mixed fields,
violated preconditions) and *findings* (the mathematics disagreed with a
claim; e.g. ``DegreeBoundViolated``).  Findings carry a witness so reports
can embed it.
"""


class AtlasError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(AtlasError):
    """Operands belong to different fields."""


class ShapeError(AtlasError):
    """Matrix/vector dimensions are inconsistent."""


class SizeError(AtlasError):
    """A size or enumeration budget was exceeded."""


class BudgetExceeded(AtlasError):
    """An iteration budget ran out before the computation completed."""


class DegenerateSampler(AtlasError):
    """Interpolation grid produced a singular linear system."""


class DegreeBoundViolated(AtlasError):
    """A fresh verification point disagreed with the interpolant.

    This is a mathematical finding, not a bug: the sampled function is not
    a polynomial of the claimed degree.  ``witness`` is the offending point.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotZeroDimensional(AtlasError):
    """The ideal has infinitely many standard monomials."""


class NotOnStratum(AtlasError):
    """The queried corank exceeds the corank at the point."""


class NotOnOpenStratum(AtlasError):
    """The point does not have the exact corank required."""


class NotRankOne(AtlasError):
    """A rank <= 1 form was expected."""


class Degenerate(AtlasError):
    """A nondegenerate form or datum was expected."""


class EvenSizeNotSupported(AtlasError):
    """Symmetroid construction requires odd matrix size."""


class Unsupported(AtlasError):
    """The operation is not available for this field/configuration."""


class FrameDegenerate(AtlasError):
    """A frame dropped rank at the queried point."""


class HypothesisViolated(AtlasError):
    """An isotropic-reduction hypothesis failed at a sampled point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotTransverse(AtlasError):
    """The auxiliary Lagrangian is not transverse at a sampled point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotLagrangian(AtlasError):
    """An explicit subspace failed the Lagrangian invariant."""


class SigmaOne(AtlasError):
    """The point lies on the exceptional locus of the reduction."""


class NotGMRange(AtlasError):
    """dim(A restricted to the hyperplane) is too large for the reduction."""
