"""Exception and warning types raised across the package."""


class KoszulkitError(Exception):
    """Base class for all errors raised by koszulkit."""


class FieldMismatch(KoszulkitError):
    pass


class DimensionMismatch(KoszulkitError, ValueError):
    pass


class ContainmentViolation(KoszulkitError):
    """A subspace or submodule is not contained where it is required to be."""


class StructureError(KoszulkitError):
    """Structure constants violate an algebra or module axiom."""


class BudgetExceeded(KoszulkitError):
    """A construction would need more memory than the configured budget."""


class TruncationInsufficient(KoszulkitError):
    """The requested bidegree is not determined by the truncated data."""


class NotDegreeOneGenerated(KoszulkitError):
    pass


class LowestDegreeNonzero(KoszulkitError):
    pass


class AlgebraNotSymmetric(KoszulkitError):
    pass


class OddDemushkinRank(KoszulkitError):
    pass


class InputNotMonomorphism(KoszulkitError):
    pass


class GroupParseError(KoszulkitError, ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class H14NonzeroWarning(UserWarning):
    """H_{1,4}(Lambda, B) does not vanish, so B is not a quotient by an ideal generated in degree 2."""
