"""Exact sparse linear combinations over ordered combinatorial bases.

Scalars are rationals (`fractions.Fraction`, always lowest terms, positive
denominator).  An `Elem` is a finite linear combination of basis keys with a
deterministic term order; a `Series` is a truncated power series in a formal
parameter t whose coefficients are elements.  Words and permutations, the two
basis key types shared by several structures, live here as well.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .errors import (
    EmptyWord,
    InvalidPermutation,
    NormalizationError,
    SortMismatch,
)

Scalar = Fraction


def as_scalar(c) -> Fraction:
    """Coerce an int or Fraction to a Scalar; floats are rejected to stay exact."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Word:
    """A word over the positive-integer alphabet; letter i renders as xi.

    >>> str(Word((1, 2, 1)))
    'x1.x2.x1'
    >>> Word((1,)) + Word((2,))
    Word((1, 2))
    >>> sorted([Word((2,)), Word((1, 1)), Word((1,))])
    [Word((1,)), Word((2,)), Word((1, 1))]
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int]):
        letters = tuple(letters)
        for a in letters:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"letters must be positive integers, got {a!r}")
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(("Word", self.letters))

    def __lt__(self, other: "Word") -> bool:
        # length-lex: shorter first, then lexicographic
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return ".".join(f"x{a}" for a in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"


class Perm:
    """A permutation of {1..n} in one-line notation.

    >>> Perm((3, 1, 2)).inverse()
    Perm((2, 3, 1))
    >>> Perm((3, 1, 2))(1)
    3
    """

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        n = len(image)
        if sorted(image) != list(range(1, n + 1)):
            raise InvalidPermutation(f"not one-line data for S_{n}: {image}")
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def n(self) -> int:
        return len(self.image)

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse(self) -> "Perm":
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return Perm(inv)

    def compose(self, other: "Perm") -> "Perm":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if len(self.image) != len(other.image):
            raise InvalidPermutation("can only compose permutations of equal size")
        return Perm(tuple(self(other(i)) for i in range(1, len(self.image) + 1)))

    def as_word(self) -> Word:
        return Word(self.image)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.image == other.image

    def __hash__(self) -> int:
        return hash(("Perm", self.image))

    def __lt__(self, other: "Perm") -> bool:
        return (len(self.image), self.image) < (len(other.image), other.image)

    def __str__(self) -> str:
        if not self.image:
            return "1"
        return "p" + ".".join(str(v) for v in self.image)

    def __repr__(self) -> str:
        return f"Perm({self.image!r})"


class BasisSort:
    """Names a basis, its distinguished unit key, term order, and rendering.

    Elements over different sorts never mix; the sort is compared by name so a
    parameterized sort built twice with the same parameters is the same sort.
    """

    __slots__ = ("name", "unit_key", "skey", "show", "check")

    def __init__(self, name: str, unit_key, skey: Callable, show: Callable,
                 check: Callable | None = None):
        self.name = name
        self.unit_key = unit_key
        self.skey = skey
        self.show = show
        self.check = check or (lambda key: None)

    def order_key(self, key):
        if key == self.unit_key:
            return (0, ())
        return (1, self.skey(key))

    def render_key(self, key) -> str:
        if key == self.unit_key:
            return "1"
        return self.show(key)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisSort) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"BasisSort({self.name!r})"


WORD_SORT = BasisSort(
    "word",
    Word(()),
    skey=lambda w: (len(w.letters), w.letters),
    show=str,
    check=lambda w: None if isinstance(w, Word) else _bad_key("word", w),
)

PERM_SORT = BasisSort(
    "perm",
    Perm(()),
    skey=lambda p: (len(p.image), p.image),
    show=str,
    check=lambda p: None if isinstance(p, Perm) else _bad_key("perm", p),
)


def _bad_key(sort_name, key):
    raise SortMismatch(f"key {key!r} does not belong to basis sort {sort_name!r}")


class Elem:
    """A finite linear combination of basis keys with rational coefficients.

    Canonical form: zero coefficients are never stored, so equality is dict
    equality.  Addition, subtraction, negation and scalar multiples are
    supported directly; products belong to the structures that own them.
    """

    __slots__ = ("sort", "_terms")

    def __init__(self, sort: BasisSort, terms=()):
        data = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            c = as_scalar(c)
            if not c:
                continue
            sort.check(key)
            c0 = data.get(key)
            c = c if c0 is None else c0 + c
            if c:
                data[key] = c
            elif key in data:
                del data[key]
        object.__setattr__(self, "sort", sort)
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("Elem is immutable; build a new one")

    @classmethod
    def zero(cls, sort: BasisSort) -> "Elem":
        return cls(sort)

    @classmethod
    def term(cls, sort: BasisSort, key, c=1) -> "Elem":
        return cls(sort, [(key, c)])

    @classmethod
    def unit(cls, sort: BasisSort) -> "Elem":
        return cls(sort, [(sort.unit_key, 1)])

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    @property
    def unit_coeff(self) -> Fraction:
        return self._terms.get(self.sort.unit_key, Fraction(0))

    def without_unit(self) -> "Elem":
        if self.sort.unit_key not in self._terms:
            return self
        rest = dict(self._terms)
        del rest[self.sort.unit_key]
        return Elem(self.sort, rest)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit_free(self) -> bool:
        return self.sort.unit_key not in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def support(self):
        return sorted(self._terms, key=self.sort.order_key)

    def items(self):
        """Terms in the sort's deterministic order."""
        return [(k, self._terms[k]) for k in self.support()]

    def _require_same_sort(self, other: "Elem"):
        if not isinstance(other, Elem):
            raise TypeError(f"expected Elem, got {other!r}")
        if self.sort != other.sort:
            raise SortMismatch(f"{self.sort.name!r} vs {other.sort.name!r}")

    def __add__(self, other: "Elem") -> "Elem":
        self._require_same_sort(other)
        data = dict(self._terms)
        for key, c in other._terms.items():
            c = data.get(key, 0) + c
            if c:
                data[key] = c
            else:
                data.pop(key, None)
        return Elem(self.sort, data)

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def __neg__(self) -> "Elem":
        return Elem(self.sort, {k: -c for k, c in self._terms.items()})

    def scale(self, c) -> "Elem":
        c = as_scalar(c)
        if not c:
            return Elem(self.sort)
        return Elem(self.sort, {k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c) -> "Elem":
        return self.scale(c)

    def __truediv__(self, c) -> "Elem":
        return self.scale(Fraction(1, 1) / as_scalar(c))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Elem) and self.sort == other.sort
                and self._terms == other._terms)

    def map_keys(self, fn) -> "Elem":
        """Linear extension of a key-to-Elem map over the same sort."""
        acc = Elem(self.sort)
        for key, c in self._terms.items():
            acc = acc + fn(key).scale(c)
        return acc

    def render(self, max_terms: int | None = None) -> str:
        """Human form: terms joined by " + "/" - ", coefficient prefix p/q*
        omitted when the coefficient is +-1, keys per the sort's notation.
        """
        items = self.items()
        if not items:
            return "0"
        shown = items if max_terms is None else items[:max_terms]
        parts = []
        for i, (key, c) in enumerate(shown):
            mag = c if c > 0 else -c
            body = self.sort.render_key(key)
            if mag != 1:
                body = f"{mag}*{body}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        if max_terms is not None and len(items) > max_terms:
            parts.append(f" + {len(items) - max_terms} more")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<Elem {self.sort.name}: {self.render(max_terms=8)}>"


def elem_sum(sort: BasisSort, elems: Iterable[Elem]) -> Elem:
    acc = Elem(sort)
    for e in elems:
        acc = acc + e
    return acc


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*)?(1|x\d+(?:\.x\d+)*)$")


def parse_word_elem(text: str) -> Elem:
    """Parse the rendered word-element grammar back into an Elem.

    Accepts the ASCII forms emitted by render() plus the typographic minus and
    middle-dot variants.

    >>> parse_word_elem("x1.x2 - x2.x1") == parse_word_elem("x1.x2 − x2.x1")
    True
    >>> parse_word_elem("3/2*x1 + 1").coeff(Word((1,)))
    Fraction(3, 2)
    """
    s = text.strip().replace("−", "-").replace("·", "*")
    if s in ("", "0"):
        return Elem(WORD_SORT)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise ValueError(f"cannot parse element: {text!r}")
    terms = []
    for sign, body in pieces:
        body = body.replace(" ", "")
        m = _TERM_RE.match(body)
        if not m:
            raise ValueError(f"cannot parse term: {body!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if sign == "-":
            coeff = -coeff
        atom = m.group(2)
        if atom == "1":
            word = Word(())
        else:
            word = Word(tuple(int(part[1:]) for part in atom.split(".")))
        terms.append((word, coeff))
    return Elem(WORD_SORT, terms)


def multilinear_part(e: Elem) -> Elem:
    """Keep only words in which no letter repeats (the multilinear span)."""
    if e.sort != WORD_SORT:
        raise SortMismatch("multilinear_part expects a word element")
    kept = {w: c for w, c in e._terms.items() if len(set(w.letters)) == len(w)}
    return Elem(WORD_SORT, kept)


class Series:
    """A truncated power series sum(c_n t^n, n <= cap) with Elem coefficients.

    The cap is data: combining two series keeps the smaller cap, so exactness
    of every stored coefficient is preserved.
    """

    __slots__ = ("sort", "coeffs", "cap")

    def __init__(self, sort: BasisSort, coeffs: Iterable[Elem], cap: int | None = None):
        coeffs = list(coeffs)
        if cap is None:
            cap = len(coeffs) - 1
        if cap < 0:
            raise ValueError("cap must be >= 0")
        while len(coeffs) < cap + 1:
            coeffs.append(Elem(sort))
        if len(coeffs) > cap + 1:
            raise ValueError("more coefficients than the cap allows")
        for c in coeffs:
            if c.sort != sort:
                raise SortMismatch("series coefficients must share the basis sort")
        object.__setattr__(self, "sort", sort)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "cap", cap)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def zero(cls, sort: BasisSort, cap: int) -> "Series":
        return cls(sort, [], cap)

    @classmethod
    def unit(cls, sort: BasisSort, cap: int) -> "Series":
        return cls(sort, [Elem.unit(sort)], cap)

    def coeff(self, n: int) -> Elem:
        if not 0 <= n <= self.cap:
            raise IndexError(f"coefficient {n} outside cap {self.cap}")
        return self.coeffs[n]

    def _binop(self, other: "Series", fn) -> "Series":
        if self.sort != other.sort:
            raise SortMismatch("series over different basis sorts")
        cap = min(self.cap, other.cap)
        return Series(self.sort, [fn(self.coeffs[n], other.coeffs[n])
                                  for n in range(cap + 1)], cap)

    def __add__(self, other: "Series") -> "Series":
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other: "Series") -> "Series":
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self) -> "Series":
        return Series(self.sort, [-c for c in self.coeffs], self.cap)

    def scale(self, c) -> "Series":
        return Series(self.sort, [x.scale(c) for x in self.coeffs], self.cap)

    def shift(self, k: int = 1) -> "Series":
        """Multiply by t^k (coefficients beyond the cap fall away)."""
        coeffs = [Elem(self.sort)] * k + list(self.coeffs)
        return Series(self.sort, coeffs[: self.cap + 1], self.cap)

    def t_derivative(self) -> "Series":
        """Apply t d/dt: the n-th coefficient becomes n*c_n."""
        return Series(self.sort, [c.scale(n) for n, c in enumerate(self.coeffs)],
                      self.cap)

    def truncate(self, cap: int) -> "Series":
        if cap >= self.cap:
            return self
        return Series(self.sort, self.coeffs[: cap + 1], cap)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series) and self.sort == other.sort
                and self.cap == other.cap and self.coeffs == other.coeffs)

    def agrees(self, other: "Series") -> bool:
        """Equality of all coefficients up to the smaller cap."""
        if self.sort != other.sort:
            raise SortMismatch("series over different basis sorts")
        cap = min(self.cap, other.cap)
        return self.coeffs[: cap + 1] == other.coeffs[: cap + 1]

    def first_difference(self, other: "Series") -> int | None:
        cap = min(self.cap, other.cap)
        for n in range(cap + 1):
            if self.coeffs[n] != other.coeffs[n]:
                return n
        return None

    def __repr__(self) -> str:
        inner = " , ".join(f"t^{n}:{c.render(max_terms=4)}"
                           for n, c in enumerate(self.coeffs) if c)
        return f"<Series cap={self.cap} {inner or '0'}>"


def series_mul(f: Series, g: Series, mul: Callable[[Elem, Elem], Elem]) -> Series:
    """Cauchy product with the given bilinear coefficient product."""
    if f.sort != g.sort:
        raise SortMismatch("series over different basis sorts")
    cap = min(f.cap, g.cap)
    out = []
    for n in range(cap + 1):
        acc = Elem(f.sort)
        for i in range(n + 1):
            fi, gj = f.coeffs[i], g.coeffs[n - i]
            if fi and gj:
                acc = acc + mul(fi, gj)
        out.append(acc)
    return Series(f.sort, out, cap)


def series_inverse(f: Series, mul: Callable[[Elem, Elem], Elem]) -> Series:
    """Multiplicative inverse of a series with constant term 1."""
    unit = Elem.unit(f.sort)
    if f.coeffs[0] != unit:
        raise NormalizationError("series inverse needs constant term 1")
    inv = [unit]
    for n in range(1, f.cap + 1):
        acc = Elem(f.sort)
        for k in range(1, n + 1):
            if f.coeffs[k]:
                acc = acc + mul(f.coeffs[k], inv[n - k])
        inv.append(-acc)
    return Series(f.sort, inv, f.cap)
