"""Dendriform dialgebras: the two half-products and everything derived from them.

A structure supplies two bilinear half-products on non-unit basis keys; their
sum is an associative product.  The three compatibility axioms are

    (a < b) < c = a < (b * c)
    (a > b) < c = a > (b < c)
    a > (b > c) = (a * b) > c        with  a * b = a < b + a > b.

The adjoined unit satisfies a < 1 = a = 1 > a and 1 < a = 0 = a > 1, while
1 < 1 and 1 > 1 stay undefined: the public half-products therefore reject any
operand with a nonzero unit coefficient, and only * is extended unitally.
"""

from __future__ import annotations

from .errors import AxiomCheckFailure, EmptyArgumentList, SortMismatch, UnitMisuse
from .ncalg import Elem

__all__ = [
    "DendriformStructure", "OppositeStructure",
    "assoc", "prelie_left", "prelie_right", "lie_bracket",
    "w_left", "w_right", "ell", "r", "opposite",
]


class DendriformStructure:
    """Base class: subclasses define the half-products on basis keys.

    Required attributes/methods:
      name        -- short identifier used in reports
      sort        -- the BasisSort of the underlying basis
      basis_left(k1, k2), basis_right(k1, k2)
                  -- the half-products on non-unit keys, returning Elems whose
                     support never contains the unit key
    Optional (needed by self-tests and random sampling):
      degree(key)            -- grading, or None when the basis is ungraded
      basis_keys(max_degree) -- iterable of non-unit keys to test on
    """

    name: str
    sort = None

    def basis_left(self, k1, k2) -> Elem:
        raise NotImplementedError

    def basis_right(self, k1, k2) -> Elem:
        raise NotImplementedError

    def degree(self, key):
        return None

    def basis_keys(self, max_degree):
        raise NotImplementedError(f"{self.name}: no basis enumeration")

    # -- element-level operations ------------------------------------------

    def unit(self) -> Elem:
        return Elem.unit(self.sort)

    def elem(self, key, c=1) -> Elem:
        return Elem.term(self.sort, key, c)

    def zero(self) -> Elem:
        return Elem.zero(self.sort)

    def _check_operand(self, x: Elem):
        if not isinstance(x, Elem):
            raise TypeError(f"expected Elem, got {x!r}")
        if x.sort != self.sort:
            raise SortMismatch(
                f"element over {x.sort.name!r} fed to structure {self.name!r}")

    def _half(self, basis_fn, x: Elem, y: Elem) -> Elem:
        acc = self.zero()
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                acc = acc + basis_fn(k1, k2).scale(c1 * c2)
        return acc

    def left(self, x: Elem, y: Elem) -> Elem:
        """The half-product a < b; operands must be unit-free."""
        self._check_operand(x)
        self._check_operand(y)
        if x.unit_coeff or y.unit_coeff:
            raise UnitMisuse(f"{self.name}: < is undefined on unit components")
        return self._half(self.basis_left, x, y)

    def right(self, x: Elem, y: Elem) -> Elem:
        """The half-product a > b; operands must be unit-free."""
        self._check_operand(x)
        self._check_operand(y)
        if x.unit_coeff or y.unit_coeff:
            raise UnitMisuse(f"{self.name}: > is undefined on unit components")
        return self._half(self.basis_right, x, y)

    def star(self, x: Elem, y: Elem) -> Elem:
        """The associative product a * b = a < b + a > b, extended unitally."""
        self._check_operand(x)
        self._check_operand(y)
        cx, cy = x.unit_coeff, y.unit_coeff
        a, b = x.without_unit(), y.without_unit()
        acc = self.zero()
        if cx and cy:
            acc = acc + self.unit().scale(cx * cy)
        if cx and b:
            acc = acc + b.scale(cx)
        if cy and a:
            acc = acc + a.scale(cy)
        if a and b:
            acc = acc + self._half(self.basis_left, a, b) \
                      + self._half(self.basis_right, a, b)
        return acc

    # -- validation ---------------------------------------------------------

    def self_test(self, max_degree: int = 2) -> int:
        """Exhaustively check the three axioms on basis triples.

        Graded bases are filtered to total degree <= max_degree; ungraded ones
        use every triple the enumeration yields.  Returns the number of
        triples checked; raises AxiomCheckFailure on the first violation.
        """
        keys = list(self.basis_keys(max_degree))
        degs = {k: self.degree(k) for k in keys}
        graded = all(d is not None for d in degs.values())
        checked = 0
        for ka in keys:
            for kb in keys:
                for kc in keys:
                    if graded and degs[ka] + degs[kb] + degs[kc] > max_degree:
                        continue
                    a, b, c = self.elem(ka), self.elem(kb), self.elem(kc)
                    pairs = (
                        ("(a<b)<c = a<(b*c)",
                         self.left(self.left(a, b), c),
                         self.left(a, self.star(b, c))),
                        ("(a>b)<c = a>(b<c)",
                         self.left(self.right(a, b), c),
                         self.right(a, self.left(b, c))),
                        ("a>(b>c) = (a*b)>c",
                         self.right(a, self.right(b, c)),
                         self.right(self.star(a, b), c)),
                    )
                    for label, lhs, rhs in pairs:
                        if lhs != rhs:
                            raise AxiomCheckFailure(
                                self.name, label, (ka, kb, kc),
                                lhs.render(max_terms=10), rhs.render(max_terms=10))
                    checked += 1
        return checked

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class OppositeStructure(DendriformStructure):
    """The opposite dendriform structure: a <' b = -(b > a), a >' b = -(b < a).

    Both give rise to the same pre-Lie products as the base structure, while
    the associative product reverses and changes sign.  The unit conventions
    are imposed afresh on the adjoined unit, not derived from the swap.
    """

    def __init__(self, base: DendriformStructure):
        self.base = base
        self.name = base.name + ".op"
        self.sort = base.sort

    def basis_left(self, k1, k2) -> Elem:
        return -self.base.basis_right(k2, k1)

    def basis_right(self, k1, k2) -> Elem:
        return -self.base.basis_left(k2, k1)

    def degree(self, key):
        return self.base.degree(key)

    def basis_keys(self, max_degree):
        return self.base.basis_keys(max_degree)


def assoc(S: DendriformStructure, x: Elem, y: Elem) -> Elem:
    """The associative product of the structure (unital)."""
    return S.star(x, y)


def prelie_left(S: DendriformStructure, x: Elem, y: Elem) -> Elem:
    """Left pre-Lie product a |> b = a > b - b < a."""
    return S.right(x, y) - S.left(y, x)


def prelie_right(S: DendriformStructure, x: Elem, y: Elem) -> Elem:
    """Right pre-Lie product a <| b = a < b - b > a."""
    return S.left(x, y) - S.right(y, x)


def lie_bracket(S: DendriformStructure, x: Elem, y: Elem) -> Elem:
    """[a, b] = a*b - b*a; equals the antisymmetrization of either pre-Lie product."""
    return S.star(x, y) - S.star(y, x)


def _require_unit_free(S, a: Elem):
    S._check_operand(a)
    if a.unit_coeff:
        raise UnitMisuse(f"{S.name}: argument must be unit-free")


def w_left(S: DendriformStructure, a: Elem, n: int) -> Elem:
    """Left power sum: w(0) = 1, w(n) = a < w(n-1)."""
    if n < 0:
        raise ValueError("power sum index must be >= 0")
    _require_unit_free(S, a)
    if n == 0:
        return S.unit()
    out = a  # a < 1 = a
    for _ in range(n - 1):
        out = S.left(a, out)
    return out


def w_right(S: DendriformStructure, a: Elem, n: int) -> Elem:
    """Right power sum: w(0) = 1, w(n) = w(n-1) > a."""
    if n < 0:
        raise ValueError("power sum index must be >= 0")
    _require_unit_free(S, a)
    if n == 0:
        return S.unit()
    out = a  # 1 > a = a
    for _ in range(n - 1):
        out = S.right(out, a)
    return out


def ell(S: DendriformStructure, *args: Elem) -> Elem:
    """Left-iterated pre-Lie word: ell(a1..an) = (..(a1 |> a2) |> ..) |> an."""
    if not args:
        raise EmptyArgumentList("ell needs at least one argument")
    out = args[0]
    _require_unit_free(S, out)
    for a in args[1:]:
        out = prelie_left(S, out, a)
    return out


def r(S: DendriformStructure, *args: Elem) -> Elem:
    """Right-iterated pre-Lie word: r(a1..an) = a1 <| (a2 <| (.. <| an))."""
    if not args:
        raise EmptyArgumentList("r needs at least one argument")
    out = args[-1]
    _require_unit_free(S, out)
    for a in reversed(args[:-1]):
        out = prelie_right(S, a, out)
    return out


def opposite(S: DendriformStructure) -> DendriformStructure:
    """The opposite structure; taking it twice gives back the original object."""
    if isinstance(S, OppositeStructure):
        return S.base
    return OppositeStructure(S)
