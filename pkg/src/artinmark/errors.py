"""Exception hierarchy.

Every domain error raised by the library derives from ArtinMarkError, so the
CLI can map them uniformly to exit code 1.  Malformed textual input raises
ParseError, which the CLI maps to exit code 2.
"""

from __future__ import annotations


class ArtinMarkError(Exception):
    """Base class for all domain errors."""


class UnsupportedType(ArtinMarkError):
    """(family, rank) is not one of the finite types."""


class MixedContext(ArtinMarkError):
    """Operands belong to different groups / root systems."""


class NotPositive(ArtinMarkError):
    """Operation defined only on elements of the monoid."""


class EmptySubset(ArtinMarkError):
    """Operation requires a nonempty generator subset."""


class Disconnected(ArtinMarkError):
    """Generator subset does not induce a connected subgraph."""


class NotIrreducible(ArtinMarkError):
    """Parabolic subgroup is not irreducible."""


class NotProper(ArtinMarkError):
    """Parabolic subgroup is the whole group."""


class NotASimplex(ArtinMarkError):
    """Vertex set is not pairwise adjacent (or has repeats)."""


class NotStandard(ArtinMarkError):
    """Operation requires standard parabolic subgroups."""


class NotMaximal(ArtinMarkError):
    """Simplex is not maximal."""


class NotConjugate(ArtinMarkError):
    """The two standardizations are not conjugate."""


class NotAStandardizer(ArtinMarkError):
    """Element does not carry the simplex to standard subgroups."""


class NotAStabilizer(ArtinMarkError):
    """Element does not permute the vertices of the simplex."""


class ExponentBoundExceeded(ArtinMarkError):
    """Exponent scan range exhausted during ascending-product extraction."""

    def __init__(self, bound: int, message: str = ""):
        self.bound = bound
        super().__init__(message or f"exponent scan range |n| <= {bound} exhausted")


class ScanExhausted(ArtinMarkError):
    """Twist scan range exhausted during transversal decomposition."""

    def __init__(self, bound: int, message: str = ""):
        self.bound = bound
        super().__init__(message or f"twist scan range |k| <= {bound} exhausted")


class SearchBudgetExceeded(ArtinMarkError):
    """Standardizer search exceeded its length budget."""

    def __init__(self, budget: int, message: str = ""):
        self.budget = budget
        super().__init__(message or f"standardizer search budget {budget} exhausted")


class NotCorankOne(ArtinMarkError):
    """Subset does not miss exactly one generator."""


class NotAnXRibbonX(ArtinMarkError):
    """Ribbon composition does not return to the starting subset."""


class BaseNotMaximal(ArtinMarkError):
    """Base of a marking does not span a maximal simplex."""


class TransversalityPatternBroken(ArtinMarkError):
    """z-commutation pattern of a marking fails at a pair of indices."""

    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"z-commutation pattern broken at pair ({i}, {j})")


class NotSimultaneouslyStandardizable(ArtinMarkError):
    """Transversal cannot be standardized together with the base."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"pair {index} is not simultaneously standardizable")


class PreconditionViolated(ArtinMarkError):
    """Operation preconditions not met."""


class UnknownFormat(ArtinMarkError):
    """Unknown export format."""


class ParseError(ArtinMarkError):
    """Malformed textual input."""

    def __init__(self, message: str, position: int = 0):
        self.position = position
        super().__init__(f"{message} (at offset {position})")
