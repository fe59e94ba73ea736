"""The free unitary algebra F<Y u Z> with its canonical involution.

Symmetric variables ``y_i`` satisfy ``y_i* = y_i``, skew variables ``z_i``
satisfy ``z_i* = -z_i``.  Every skew variable is smaller than every symmetric
one; inside a kind variables are ordered by index.
"""

from __future__ import annotations

from collections import Counter
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exact import as_rational

__all__ = [
    "Kind",
    "Variable",
    "y",
    "z",
    "NCPoly",
    "ParityError",
    "HomogeneityError",
    "EmptyPolynomialError",
    "ArityError",
    "nc_arith",
    "involute",
    "commutator",
    "commutator_symmetry_sign",
    "multidegree",
    "is_multilinear",
    "substitute",
    "parity_of",
]


class ParityError(ValueError):
    """A substitution or assignment does not respect the involution."""


class HomogeneityError(ValueError):
    pass


class EmptyPolynomialError(ValueError):
    pass


class ArityError(ValueError):
    pass


class Kind(IntEnum):
    SKEW = 0
    SYM = 1


class Variable(NamedTuple):
    kind: Kind
    index: int

    @property
    def is_sym(self) -> bool:
        return self.kind == Kind.SYM

    @property
    def name(self) -> str:
        return f"{'y' if self.kind == Kind.SYM else 'z'}{self.index}"

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.name


def y(i: int) -> Variable:
    if i < 1:
        raise ValueError("variable indices start at 1")
    return Variable(Kind.SYM, i)


def z(i: int) -> Variable:
    if i < 1:
        raise ValueError("variable indices start at 1")
    return Variable(Kind.SKEW, i)


Word = tuple  # tuple[Variable, ...]; () is the unit


class NCPoly:
    """Element of F<Y u Z>: a finite combination of words.

    Immutable; ``terms`` maps words (tuples of :class:`Variable`) to nonzero
    rationals.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = as_rational(c)
                if c:
                    w = tuple(w)
                    clean[w] = clean.get(w, 0) + c
                    if not clean[w]:
                        del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def unit(cls, c=1) -> "NCPoly":
        c = as_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def word(cls, letters: Iterable[Variable], c=1) -> "NCPoly":
        c = as_rational(c)
        return cls._raw({tuple(letters): c} if c else {})

    @classmethod
    def letter(cls, v: Variable) -> "NCPoly":
        return cls._raw({(v,): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms sorted by (degree, word)."""
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Sequence[Variable]):
        return self._terms.get(tuple(word), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _lift(x) -> "NCPoly":
        if isinstance(x, NCPoly):
            return x
        if isinstance(x, Variable):
            return NCPoly.letter(x)
        return NCPoly.unit(x)

    def __add__(self, other) -> "NCPoly":
        other = self._lift(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly._raw(out)

    def __radd__(self, other) -> "NCPoly":
        return self._lift(other) + self

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, (NCPoly, Variable)):
            c = as_rational(other)
            if not c:
                return NCPoly._raw({})
            return NCPoly._raw({w: v * c for w, v in self._terms.items()})
        other = self._lift(other)
        out: dict = {}
        for wa, ca in self._terms.items():
            for wb, cb in other._terms.items():
                w = wa + wb
                s = out.get(w, 0) + ca * cb
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NCPoly._raw(out)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, Variable):
            return NCPoly.letter(other) * self
        return self * other

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power")
        out = NCPoly.unit()
        for _ in range(k):
            out = out * self
        return out

    def variables(self) -> list[Variable]:
        return sorted({v for w in self._terms for v in w})

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def star(self) -> "NCPoly":
        return involute(self)

    def __repr__(self) -> str:
        return f"NCPoly({self})"

    def __str__(self) -> str:
        from .parse import format_poly

        return format_poly(self)


def _as_poly(x) -> NCPoly:
    return NCPoly._lift(x)


def nc_arith(a: NCPoly, b: NCPoly, op: str) -> NCPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def involute(p: NCPoly) -> NCPoly:
    """Reverse every word; each skew letter contributes a factor -1."""
    out = {}
    for w, c in p._terms.items():
        skew = sum(1 for v in w if v.kind == Kind.SKEW)
        out[w[::-1]] = -c if skew & 1 else c
    return NCPoly._raw(out)


def commutator(*args) -> NCPoly:
    """Left-normed commutator ``[a1, ..., an] = [[a1, ..., a(n-1)], an]``.

    Accepts either several arguments or a single sequence of them.
    """
    if len(args) == 1 and isinstance(args[0], (list, tuple)) and not isinstance(args[0], Variable):
        args = tuple(args[0])
    if len(args) < 2:
        raise ArityError("a commutator needs at least two arguments")
    acc = _as_poly(args[0])
    for b in args[1:]:
        b = _as_poly(b)
        acc = acc * b - b * acc
    return acc


def commutator_symmetry_sign(letters: Sequence[Variable]) -> int:
    """Sign ``e`` with ``[w1, ..., wn]* = e [w1, ..., wn]``."""
    n = len(letters)
    if n < 2:
        raise ArityError("a commutator needs at least two arguments")
    skew = sum(1 for v in letters if v.kind == Kind.SKEW)
    return -1 if (n - 1 + skew) & 1 else 1


def multidegree(p: NCPoly) -> dict[Variable, int]:
    if not p._terms:
        raise EmptyPolynomialError("multidegree of the zero polynomial")
    degs = {frozenset(Counter(w).items()) for w in p._terms}
    if len(degs) != 1:
        raise HomogeneityError("polynomial is not multihomogeneous")
    return dict(sorted(next(iter(degs))))


def is_multilinear(p: NCPoly, variables: Iterable[Variable]) -> bool:
    target = sorted(variables)
    if len(set(target)) != len(target):
        return False
    return all(sorted(w) == target for w in p._terms)


def parity_of(q: NCPoly) -> Kind | None:
    """``SYM`` if q* = q, ``SKEW`` if q* = -q (zero counts as both, reported SYM)."""
    s = involute(q)
    if s == q:
        return Kind.SYM
    if s == -q:
        return Kind.SKEW
    return None


def substitute(p: NCPoly, assignment: Mapping[Variable, object], check: bool = True) -> NCPoly:
    """Apply the involution-preserving endomorphism determined by ``assignment``.

    Symmetric variables must go to symmetric polynomials and skew variables to
    skew ones; unassigned variables are left alone.
    """
    images = {v: _as_poly(q) for v, q in assignment.items()}
    if check:
        for v, q in images.items():
            s = involute(q)
            ok = s == q if v.kind == Kind.SYM else s == -q
            if not ok:
                raise ParityError(f"{v} cannot be sent to {q}: wrong parity")
    out = NCPoly.zero()
    for w, c in p._terms.items():
        acc = NCPoly.unit(c)
        for v in w:
            acc = acc * (images[v] if v in images else NCPoly.letter(v))
            if not acc:
                break
        out = out + acc
    return out
