"""Exception types shared across the package."""


class DendralgError(Exception):
    """Base class for all package-specific errors."""


class SortMismatch(DendralgError):
    """Two elements (or an element and a structure) live over different bases."""


class UnitMisuse(DendralgError):
    """A half-product received an operand with a nonzero unit coefficient."""


class EmptyArgumentList(DendralgError):
    """An iterated product was asked for zero arguments."""


class EmptyWord(DendralgError):
    """An operation that needs at least one letter got the empty word."""


class InvalidPermutation(DendralgError):
    """One-line data is not a bijection of {1..n}."""


class NormalizationError(DendralgError):
    """A series does not have the constant term the operation requires."""


class AxiomCheckFailure(DendralgError):
    """A structure failed its dendriform axiom self-test."""

    def __init__(self, structure_name, axiom, keys, lhs, rhs):
        self.structure_name = structure_name
        self.axiom = axiom
        self.keys = keys
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"{structure_name}: axiom {axiom} fails on {keys}: {lhs} != {rhs}"
        )


class RBWeightCheckFailure(DendralgError):
    """A candidate averaging operator violated its weighted product rule."""
