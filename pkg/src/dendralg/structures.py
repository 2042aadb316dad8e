"""Concrete dendriform structures.

Instances provided here:

  shuffle    -- words, the half-shuffles (first letter taken from the left or
                right factor); * is the commutative shuffle product
  max        -- words, concatenation split by where the maximal letter sits;
                ties go to <; "max-rev" uses the reversed letter order
  mr         -- permutations with the shifted-shuffle product, split by the
                origin of the first letter
  free       -- planar binary trees: the free dendriform algebra on one
                generator, graded by internal vertices (Catalan dimensions)
  rb-seqmat  -- functions {1..N} -> k x k rational matrices with the weighted
                partial-sum operator R(f)(n) = theta * sum(f(m), m < n)
  rb-polymat -- k x k matrices of rational polynomials with entrywise
                integration from 0 (a weight-0 operator)

Every operator R of weight theta (R(a)R(b) = R(R(a)b + aR(b) + theta ab))
induces two dendriform structures on its carrier: the plain one
(a < b = aR(b) + theta ab, a > b = R(a)b) and the primed one
(a <' b = aR(b), a >' b = R(a)b + theta ab).  Both are built here over either
backend, and the operator rule is re-checked on sample pairs at construction.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from .dendriform import DendriformStructure
from .errors import RBWeightCheckFailure, SortMismatch
from .ncalg import BasisSort, Elem, Perm, Word, PERM_SORT, WORD_SORT, as_scalar

__all__ = [
    "ShuffleStructure", "MaxStructure", "MRStructure", "FreeStructure",
    "SeqMatBackend", "PolyMatBackend", "RBStructure", "Tree", "LEAF",
    "shuffle_structure", "max_structure", "mr_structure", "free_structure",
    "rb_seqmat_structure", "rb_polymat_structure",
    "from_selector", "STANDARD_SELECTORS",
    "default_generator", "random_element", "enumerate_trees",
]


def _letters(alphabet) -> tuple:
    if isinstance(alphabet, int):
        return tuple(range(1, alphabet + 1))
    return tuple(alphabet)


# ---------------------------------------------------------------------------
# words: half-shuffles
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sh_left(u: tuple, v: tuple) -> tuple:
    """u < v on letter tuples: first letter from u.  Returns ((word, count), ...)."""
    if len(u) == 1:
        return (((u[0],) + v, 1),)
    acc = {}
    for w, c in _sh_left(u[1:], v) + _sh_right(u[1:], v):
        key = (u[0],) + w
        acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _sh_right(u: tuple, v: tuple) -> tuple:
    """u > v on letter tuples: first letter from v."""
    if len(v) == 1:
        return (((v[0],) + u, 1),)
    acc = {}
    for w, c in _sh_left(u, v[1:]) + _sh_right(u, v[1:]):
        key = (v[0],) + w
        acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items()))


class _WordStructure(DendriformStructure):
    sort = WORD_SORT

    def __init__(self, alphabet):
        self.alphabet = _letters(alphabet)

    def degree(self, key: Word) -> int:
        return len(key)

    def basis_keys(self, max_degree: int):
        for d in range(1, max_degree + 1):
            for letters in itertools.product(self.alphabet, repeat=d):
                yield Word(letters)


class ShuffleStructure(_WordStructure):
    name = "shuffle"

    def basis_left(self, w1: Word, w2: Word) -> Elem:
        return Elem(WORD_SORT, [(Word(t), c) for t, c in
                                _sh_left(w1.letters, w2.letters)])

    def basis_right(self, w1: Word, w2: Word) -> Elem:
        return Elem(WORD_SORT, [(Word(t), c) for t, c in
                                _sh_right(w1.letters, w2.letters)])


class MaxStructure(_WordStructure):
    """Concatenation routed by the position of the maximal letter.

    u < v is the concatenation uv when the largest letter (in the structure's
    letter order) lies in u, and 0 otherwise; u > v is uv when it lies
    strictly in v.  Ties go to <.
    """

    def __init__(self, alphabet, order: str = "increasing"):
        super().__init__(alphabet)
        if order not in ("increasing", "decreasing"):
            raise ValueError(f"unknown letter order {order!r}")
        self.order = order
        self.name = "max" if order == "increasing" else "max-rev"

    def _top(self, w: Word) -> int:
        ranks = w.letters if self.order == "increasing" else tuple(-a for a in w.letters)
        return max(ranks)

    def basis_left(self, w1: Word, w2: Word) -> Elem:
        if self._top(w1) >= self._top(w2):
            return Elem.term(WORD_SORT, w1 + w2)
        return Elem.zero(WORD_SORT)

    def basis_right(self, w1: Word, w2: Word) -> Elem:
        if self._top(w1) < self._top(w2):
            return Elem.term(WORD_SORT, w1 + w2)
        return Elem.zero(WORD_SORT)


# ---------------------------------------------------------------------------
# permutations: shifted shuffles
# ---------------------------------------------------------------------------

class MRStructure(DendriformStructure):
    """Permutations under the shifted shuffle, split by the first letter.

    For p in S_n and q in S_m, shift q's letters by n, interleave, and route
    by whether the first letter of the result comes from p (that is <) or
    from the shifted q (that is >).
    """

    name = "mr"
    sort = PERM_SORT

    def basis_left(self, p: Perm, q: Perm) -> Elem:
        n = len(p)
        shifted = tuple(x + n for x in q.image)
        head, tail = p.image[0], p.image[1:]
        terms = [(Perm((head,) + t), c) for t, c in _merged(tail, shifted)]
        return Elem(PERM_SORT, terms)

    def basis_right(self, p: Perm, q: Perm) -> Elem:
        n = len(p)
        shifted = tuple(x + n for x in q.image)
        head, tail = shifted[0], shifted[1:]
        terms = [(Perm((head,) + t), c) for t, c in _merged(p.image, tail)]
        return Elem(PERM_SORT, terms)

    def degree(self, key: Perm) -> int:
        return len(key)

    def basis_keys(self, max_degree: int):
        for d in range(1, max_degree + 1):
            for image in itertools.permutations(range(1, d + 1)):
                yield Perm(image)


@lru_cache(maxsize=None)
def _merged(u: tuple, v: tuple) -> tuple:
    """All interleavings of u and v, with multiplicity."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = {}
    for t, c in _merged(u[1:], v):
        key = (u[0],) + t
        acc[key] = acc.get(key, 0) + c
    for t, c in _merged(u, v[1:]):
        key = (v[0],) + t
        acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# planar binary trees: the free dendriform algebra on one generator
# ---------------------------------------------------------------------------

class Tree:
    """A planar binary tree; degree = number of internal vertices."""

    __slots__ = ("left", "right", "deg", "code")

    def __init__(self, left: "Tree | None" = None, right: "Tree | None" = None):
        if (left is None) != (right is None):
            raise ValueError("a tree node needs both children")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if left is None:
            object.__setattr__(self, "deg", 0)
            object.__setattr__(self, "code", (0,))
        else:
            object.__setattr__(self, "deg", left.deg + right.deg + 1)
            object.__setattr__(self, "code", (1,) + left.code + right.code)

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def is_leaf(self) -> bool:
        return self.left is None

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self.code == other.code

    def __hash__(self) -> int:
        return hash(("Tree",) + self.code)

    def __lt__(self, other: "Tree") -> bool:
        return (self.deg, self.code) < (other.deg, other.code)

    def __str__(self) -> str:
        if self.is_leaf():
            return "|"
        ls = "" if self.left.is_leaf() else str(self.left)
        rs = "" if self.right.is_leaf() else str(self.right)
        return f"({ls}^{rs})"

    def __repr__(self) -> str:
        return f"<Tree {self}>"


LEAF = Tree()

TREE_SORT = BasisSort(
    "tree",
    LEAF,
    skey=lambda t: (t.deg, t.code),
    show=str,
    check=lambda t: None if isinstance(t, Tree) else _sort_err("tree", t),
)


def _sort_err(name, key):
    raise SortMismatch(f"key {key!r} does not belong to basis sort {name!r}")


@lru_cache(maxsize=None)
def enumerate_trees(degree: int) -> tuple:
    """All planar binary trees with the given number of internal vertices."""
    if degree == 0:
        return (LEAF,)
    out = []
    for i in range(degree):
        for l in enumerate_trees(i):
            for r in enumerate_trees(degree - 1 - i):
                out.append(Tree(l, r))
    return tuple(out)


class FreeStructure(DendriformStructure):
    """The free dendriform algebra on one generator.

    With a = l ^ r (grafting of the left and right subtrees):
    a < b grafts l over every term of r * b, and a > b grafts every term of
    a * l' under r' where b = l' ^ r'.  The leaf plays the unit.
    """

    name = "free"
    sort = TREE_SORT

    def __init__(self):
        self._star_cache: dict = {}

    def basis_left(self, t: Tree, s: Tree) -> Elem:
        return Elem(TREE_SORT,
                    [(Tree(t.left, m), c) for m, c in self._star_keys(t.right, s)])

    def basis_right(self, t: Tree, s: Tree) -> Elem:
        return Elem(TREE_SORT,
                    [(Tree(m, s.right), c) for m, c in self._star_keys(t, s.left)])

    def _star_keys(self, u: Tree, v: Tree):
        """u * v on trees, using the leaf as unit; returns (tree, coeff) pairs."""
        if u.is_leaf():
            return ((v, 1),)
        if v.is_leaf():
            return ((u, 1),)
        hit = self._star_cache.get((u, v))
        if hit is None:
            acc = {}
            for e in (self.basis_left(u, v), self.basis_right(u, v)):
                for t, c in e.items():
                    acc[t] = acc.get(t, 0) + c
            hit = tuple(acc.items())
            self._star_cache[(u, v)] = hit
        return hit

    def degree(self, key: Tree) -> int:
        return key.deg

    def basis_keys(self, max_degree: int):
        for d in range(1, max_degree + 1):
            yield from enumerate_trees(d)

    def generator(self) -> Elem:
        return self.elem(Tree(LEAF, LEAF))


# ---------------------------------------------------------------------------
# structures induced by a weighted averaging operator
# ---------------------------------------------------------------------------

class _AdjoinedUnit:
    """Fresh unit key for carriers whose own identity is not a dendriform unit."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1"


ADJOINED_UNIT = _AdjoinedUnit()


class SeqMatBackend:
    """Functions {1..N} -> k x k rational matrices, pointwise product.

    Basis keys (p, i, j): the matrix unit E_ij sitting at position p.
    R(f)(n) = theta * sum(f(m) for m < n) has weight theta.
    """

    def __init__(self, theta, k: int, N: int):
        self.theta = as_scalar(theta)
        self.k = int(k)
        self.N = int(N)
        if self.k < 1 or self.N < 1:
            raise ValueError("need k >= 1 and N >= 1")
        self.sort = BasisSort(
            f"seqmat[k={self.k},N={self.N}]",
            ADJOINED_UNIT,
            skey=lambda key: key,
            show=lambda key: f"E{key[0]}[{key[1]},{key[2]}]",
        )

    def keys(self):
        rng = range(1, self.k + 1)
        return [(p, i, j) for p in range(1, self.N + 1) for i in rng for j in rng]

    def mul_keys(self, a, b):
        (p, i, j), (q, x, y) = a, b
        if p == q and j == x:
            return (((p, i, y), 1),)
        return ()

    def r_key(self, key):
        if not self.theta:
            return ()
        p, i, j = key
        return tuple(((q, i, j), self.theta) for q in range(p + 1, self.N + 1))

    def key_degree(self, key):
        return None


class PolyMatBackend:
    """k x k matrices of rational polynomials in one variable.

    Basis keys (i, j, d): x^d * E_ij.  R integrates each entry from 0, a
    weight-0 operator by integration by parts.
    """

    theta = Fraction(0)

    def __init__(self, k: int):
        self.k = int(k)
        if self.k < 1:
            raise ValueError("need k >= 1")
        self.sort = BasisSort(
            f"polymat[k={self.k}]",
            ADJOINED_UNIT,
            skey=lambda key: (key[2], key[0], key[1]),
            show=lambda key: (f"E[{key[0]},{key[1]}]" if key[2] == 0
                              else f"x^{key[2]}E[{key[0]},{key[1]}]"),
        )

    def keys(self, max_power: int = 1):
        rng = range(1, self.k + 1)
        return [(i, j, d) for d in range(max_power + 1) for i in rng for j in rng]

    def mul_keys(self, a, b):
        (i, j, d), (x, y, e) = a, b
        if j == x:
            return (((i, y, d + e), 1),)
        return ()

    def r_key(self, key):
        i, j, d = key
        return (((i, j, d + 1), Fraction(1, d + 1)),)

    def key_degree(self, key):
        return key[2]


class RBStructure(DendriformStructure):
    """Dendriform structure induced by a weight-theta operator R.

    plain:   a < b = a R(b) + theta ab     a > b = R(a) b
    primed:  a < b = a R(b)                a > b = R(a) b + theta ab

    Both share the associative product a R(b) + R(a) b + theta ab, and R is a
    morphism onto its image for it.  The weight rule is re-checked on sample
    pairs at construction; a violation raises RBWeightCheckFailure.
    """

    def __init__(self, backend, variant: str = "plain", name: str | None = None,
                 check: bool = True):
        if variant not in ("plain", "primed"):
            raise ValueError(f"unknown variant {variant!r}")
        self.backend = backend
        self.variant = variant
        self.theta = backend.theta
        self.sort = backend.sort
        self.name = name or f"rb[{backend.sort.name}]"
        if variant == "primed":
            self.name += ":primed"
        self._memo: dict = {}
        if check:
            self._weight_check()

    # carrier-level helpers (unit key never appears here)

    def carrier_mul(self, x: Elem, y: Elem) -> Elem:
        acc = self.zero()
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                for key, c in self.backend.mul_keys(k1, k2):
                    acc = acc + Elem.term(self.sort, key, c1 * c2 * c)
        return acc

    def R(self, x: Elem) -> Elem:
        acc = self.zero()
        for key, c in x.items():
            for key2, c2 in self.backend.r_key(key):
                acc = acc + Elem.term(self.sort, key2, c * c2)
        return acc

    def R_tilde(self, x: Elem) -> Elem:
        """The companion operator -theta*id - R, of the same weight."""
        return x.scale(-self.theta) - self.R(x)

    def basis_left(self, k1, k2) -> Elem:
        hit = self._memo.get(("<", k1, k2))
        if hit is None:
            x, y = self.elem(k1), self.elem(k2)
            hit = self.carrier_mul(x, self.R(y))
            if self.variant == "plain" and self.theta:
                hit = hit + self.carrier_mul(x, y).scale(self.theta)
            self._memo[("<", k1, k2)] = hit
        return hit

    def basis_right(self, k1, k2) -> Elem:
        hit = self._memo.get((">", k1, k2))
        if hit is None:
            x, y = self.elem(k1), self.elem(k2)
            hit = self.carrier_mul(self.R(x), y)
            if self.variant == "primed" and self.theta:
                hit = hit + self.carrier_mul(x, y).scale(self.theta)
            self._memo[(">", k1, k2)] = hit
        return hit

    def degree(self, key):
        return self.backend.key_degree(key)

    def basis_keys(self, max_degree: int):
        if isinstance(self.backend, PolyMatBackend):
            return self.backend.keys(max_power=max_degree)
        return self.backend.keys()

    def with_variant(self, variant: str) -> "RBStructure":
        if variant == self.variant:
            return self
        base = self.name.split(":primed")[0]
        return RBStructure(self.backend, variant, name=base, check=False)

    def _weight_check(self, sample: int = 64):
        keys = self.basis_keys(2)
        keys = list(keys)
        pairs = [(a, b) for a in keys for b in keys]
        if len(pairs) > sample:
            rng = random.Random(0)
            pairs = rng.sample(pairs, sample)
        for ka, kb in pairs:
            a, b = self.elem(ka), self.elem(kb)
            lhs = self.carrier_mul(self.R(a), self.R(b))
            inner = self.carrier_mul(self.R(a), b) + self.carrier_mul(a, self.R(b)) \
                + self.carrier_mul(a, b).scale(self.theta)
            if lhs != self.R(inner):
                raise RBWeightCheckFailure(
                    f"{self.name}: weight-{self.theta} rule fails on {ka}, {kb}")


# ---------------------------------------------------------------------------
# registration and selection
# ---------------------------------------------------------------------------

def shuffle_structure(alphabet=3, check_degree: int = 3) -> ShuffleStructure:
    s = ShuffleStructure(alphabet)
    s.self_test(check_degree)
    return s


def max_structure(alphabet=3, order: str = "increasing",
                  check_degree: int = 3) -> MaxStructure:
    s = MaxStructure(alphabet, order)
    s.self_test(check_degree)
    return s


def mr_structure(check_degree: int = 3) -> MRStructure:
    s = MRStructure()
    s.self_test(check_degree)
    return s


def free_structure(check_degree: int = 3) -> FreeStructure:
    s = FreeStructure()
    s.self_test(check_degree)
    return s


def rb_seqmat_structure(theta=1, k: int = 2, N: int = 4, variant: str = "plain",
                        check: bool = True) -> RBStructure:
    theta = as_scalar(theta)
    name = f"rb-seqmat:theta={theta},k={k},N={N}"
    return RBStructure(SeqMatBackend(theta, k, N), variant, name=name, check=check)


def rb_polymat_structure(k: int = 2, variant: str = "plain",
                         check: bool = True) -> RBStructure:
    return RBStructure(PolyMatBackend(k), variant, name=f"rb-polymat:k={k}",
                       check=check)


STANDARD_SELECTORS = (
    "shuffle",
    "max",
    "max-rev",
    "mr",
    "free",
    "rb-seqmat:theta=1,k=2,N=4",
    "rb-polymat:k=2",
)


def from_selector(text: str, theta=None) -> DendriformStructure:
    """Build a structure from a selection string.

    Accepted: shuffle | max | max-rev | mr | free
            | rb-seqmat:theta=<rational>,k=<int>,N=<int>  (params optional)
            | rb-polymat:k=<int>
    A separately supplied theta fills in when the selector omits it.
    """
    head, _, params_text = text.strip().partition(":")
    params = {}
    if params_text:
        for piece in params_text.split(","):
            key, eq, value = piece.partition("=")
            if not eq:
                raise ValueError(f"bad structure parameter {piece!r} in {text!r}")
            key = key.strip().replace("θ", "theta")
            params[key] = value.strip()
    if head == "shuffle":
        _no_params(text, params)
        return shuffle_structure()
    if head == "max":
        _no_params(text, params)
        return max_structure()
    if head == "max-rev":
        _no_params(text, params)
        return max_structure(order="decreasing")
    if head == "mr":
        _no_params(text, params)
        return mr_structure()
    if head == "free":
        _no_params(text, params)
        return free_structure()
    if head == "rb-seqmat":
        allowed = {"theta", "k", "N"}
        _only_params(text, params, allowed)
        th = Fraction(params["theta"]) if "theta" in params else \
            (as_scalar(theta) if theta is not None else Fraction(1))
        return rb_seqmat_structure(theta=th, k=int(params.get("k", 2)),
                                   N=int(params.get("N", 4)))
    if head == "rb-polymat":
        _only_params(text, params, {"k"})
        return rb_polymat_structure(k=int(params.get("k", 2)))
    raise ValueError(f"unknown structure selector {text!r}")


def _no_params(text, params):
    if params:
        raise ValueError(f"selector {text!r} takes no parameters")


def _only_params(text, params, allowed):
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"selector {text!r}: unknown parameters {sorted(extra)}")


def default_generator(S: DendriformStructure, rng: random.Random | None = None) -> Elem:
    """A canonical unit-free element to expand power sums of.

    Word structures get a letter sum rich enough to keep brackets nonzero,
    operator-induced structures get a (seeded) random carrier element.
    """
    if isinstance(S, ShuffleStructure):
        return S.elem(Word((1,)))
    if isinstance(S, MaxStructure):
        return S.elem(Word((1,))) + S.elem(Word((2,)))
    if isinstance(S, MRStructure):
        return S.elem(Perm((1,)))
    if isinstance(S, FreeStructure):
        return S.generator()
    if isinstance(S, RBStructure):
        return random_element(S, rng or random.Random(11), max_degree=1,
                              nterms=min(4, len(list(S.basis_keys(1)))))
    raise ValueError(f"no default generator for {S.name}")


def random_element(S: DendriformStructure, rng: random.Random,
                   max_degree: int = 3, nterms: int = 3) -> Elem:
    """A random unit-free element with small rational coefficients."""
    keys = list(S.basis_keys(max_degree))
    nterms = min(nterms, len(keys))
    chosen = rng.sample(keys, nterms)
    terms = []
    for key in chosen:
        num = rng.choice([x for x in range(-4, 5) if x])
        den = rng.randint(1, 4)
        terms.append((key, Fraction(num, den)))
    return Elem(S.sort, terms)
