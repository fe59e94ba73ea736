"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
rational is expected).  Commutative polynomials over Q live in
:class:`ScalarPoly`; sparse rank / kernel / span membership in
:class:`SparseMatrixQ` and :class:`Echelon`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

__all__ = [
    "Indeterminate",
    "ScalarPoly",
    "SparseMatrixQ",
    "Echelon",
    "DimensionError",
    "spoly_arith",
    "rank",
    "kernel_basis",
    "in_span",
    "as_rational",
]


class DimensionError(ValueError):
    """Vectors or matrices of incompatible sizes."""


def as_rational(x) -> Fraction | int:
    """Normalise a rational scalar; integral values come back as ``int``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return as_rational(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# commutative polynomials
# ---------------------------------------------------------------------------


class Indeterminate(NamedTuple):
    """A commuting indeterminate ``name[index]``."""

    name: str
    index: int

    def __str__(self) -> str:
        return f"{self.name}_{self.index}"


# A monomial is a sorted tuple of (Indeterminate, exponent) pairs, exponent > 0.
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        xa, ea = a[i]
        xb, eb = b[j]
        if xa == xb:
            out.append((xa, ea + eb))
            i += 1
            j += 1
        elif xa < xb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_key(m: Monomial):
    # graded lex: total degree first, then the sorted indeterminate keys
    return (sum(e for _, e in m), m)


class ScalarPoly:
    """Polynomial in commuting indeterminates with rational coefficients.

    Immutable.  ``terms`` maps monomials to nonzero coefficients; equal
    polynomials have equal term dictionaries, so ``==`` is exact equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ScalarPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "ScalarPoly":
        c = as_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, x: Indeterminate, coeff=1) -> "ScalarPoly":
        coeff = as_rational(coeff)
        return cls._raw({((x, 1),): coeff} if coeff else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (graded lex) order."""
        return sorted(self._terms.items(), key=lambda t: _mono_key(t[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, ScalarPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _lift(x) -> "ScalarPoly":
        return x if isinstance(x, ScalarPoly) else ScalarPoly.const(x)

    def __add__(self, other) -> "ScalarPoly":
        other = self._lift(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ScalarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "ScalarPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ScalarPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "ScalarPoly":
        if not isinstance(other, ScalarPoly):
            c = as_rational(other)
            if not c:
                return ScalarPoly._raw({})
            return ScalarPoly._raw({m: v * c for m, v in self._terms.items()})
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ScalarPoly._raw(out)

    __rmul__ = __mul__

    def indeterminates(self) -> list[Indeterminate]:
        seen = {x for m in self._terms for x, _ in m}
        return sorted(seen)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def constant(self):
        """The value of a constant polynomial (raises if not constant)."""
        if any(m for m in self._terms):
            raise ValueError("polynomial is not constant")
        return self._terms.get((), 0)

    def subs(self, values: Mapping[Indeterminate, object]) -> "ScalarPoly":
        """Substitute rational values for some indeterminates."""
        vals = {k: as_rational(v) for k, v in values.items()}
        out: dict = {}
        for m, c in self._terms.items():
            rest = []
            for x, e in m:
                if x in vals:
                    c = c * vals[x] ** e
                    if not c:
                        break
                else:
                    rest.append((x, e))
            if not c:
                continue
            key = tuple(rest)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return ScalarPoly._raw(out)

    def rename(self, mapping: Mapping[Indeterminate, Indeterminate]) -> "ScalarPoly":
        out: dict = {}
        for m, c in self._terms.items():
            key = {}
            for x, e in m:
                y = mapping.get(x, x)
                key[y] = key.get(y, 0) + e
            mono = tuple(sorted(key.items()))
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return ScalarPoly._raw(out)

    def __repr__(self) -> str:
        return f"ScalarPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(str(x) if e == 1 else f"{x}^{e}" for x, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def spoly_arith(a: ScalarPoly, b: ScalarPoly, op: str) -> ScalarPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# sparse exact linear algebra
# ---------------------------------------------------------------------------


def _primitive(vec: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational sparse vector to a primitive integer vector.

    The sign is normalised so that the entry at the smallest index is positive.
    """
    items = [(k, as_rational(v)) for k, v in vec.items()]
    items = [(k, v) for k, v in items if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [(k, int(v * den)) for k, v in items]
    g = 0
    for _, v in ints:
        g = gcd(g, v)
    first = min(ints)[1]
    if first < 0:
        g = -g
    return {k: v // g for k, v in ints}


def _content_reduce(vec: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {k: v // g for k, v in vec.items()}
    return vec


class Echelon:
    """Incrementally maintained reduced row echelon form over Q.

    Rows are stored as primitive integer vectors; the row owning pivot ``p``
    has zeros in every other pivot column.  Pivot of a new row is its smallest
    surviving column index.
    """

    def __init__(self, ncols: int | None = None):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _check(self, vec: Mapping[int, object]) -> None:
        if self.ncols is not None:
            for k in vec:
                if not 0 <= k < self.ncols:
                    raise DimensionError(f"column {k} outside 0..{self.ncols - 1}")

    def reduce(self, vec: Mapping[int, object]) -> dict[int, int]:
        """Remainder of ``vec`` modulo the row space (up to a nonzero scalar)."""
        self._check(vec)
        v = _primitive(vec)
        rows = self.rows
        hits = [p for p in v if p in rows]
        for p in hits:
            a = v.get(p)
            if not a:
                continue
            row = rows[p]
            b = row[p]
            g = gcd(a, b)
            sa, sb = b // g, a // g
            if sa != 1:
                v = {k: x * sa for k, x in v.items()}
            for k, x in row.items():
                y = v.get(k, 0) - sb * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return _content_reduce(v)

    def remainder(self, vec: Mapping[int, object]) -> dict[int, Fraction | int]:
        """Exact remainder of ``vec`` after subtracting its row-space part on the pivots."""
        self._check(vec)
        out: dict[int, Fraction | int] = {k: as_rational(v) for k, v in vec.items() if v}
        for p in [p for p in out if p in self.rows]:
            a = out.get(p)
            if not a:
                continue
            row = self.rows[p]
            f = Fraction(a) / row[p]
            for k, x in row.items():
                y = out.get(k, 0) - f * x
                if y:
                    out[k] = as_rational(y)
                else:
                    out.pop(k, None)
        return out

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert a vector; returns True iff the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        if v[p] < 0:
            v = {k: -x for k, x in v.items()}
        b = v[p]
        for q, row in self.rows.items():
            a = row.get(p)
            if not a:
                continue
            g = gcd(a, b)
            sa, sb = b // g, a // g
            new = {k: x * sa for k, x in row.items()} if sa != 1 else dict(row)
            for k, x in v.items():
                y = new.get(k, 0) - sb * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            new = _content_reduce(new)
            if new[q] < 0:
                new = {k: -x for k, x in new.items()}
            self.rows[q] = new
        self.rows[p] = v
        return True

    def extend(self, vecs: Iterable[Mapping[int, object]]) -> int:
        return sum(1 for v in vecs if self.add(v))

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    def basis(self) -> list[dict[int, int]]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def kernel(self, ncols: int | None = None) -> list[dict[int, Fraction | int]]:
        """Basis of the right null space of the row space."""
        n = self.ncols if ncols is None else ncols
        if n is None:
            raise DimensionError("column count unknown")
        out = []
        for f in range(n):
            if f in self.rows:
                continue
            vec: dict[int, Fraction | int] = {f: 1}
            for p, row in self.rows.items():
                x = row.get(f)
                if x:
                    vec[p] = as_rational(Fraction(-x, row[p]))
            out.append(vec)
        return out


@dataclass(frozen=True)
class SparseMatrixQ:
    """Sparse rational matrix; ``entries`` maps (row, col) to nonzero values."""

    row_count: int
    col_count: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.row_count and 0 <= j < self.col_count):
                raise DimensionError(f"index {(i, j)} out of range")
            v = as_rational(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrixQ":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged rows")
        return cls(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], col_count: int) -> "SparseMatrixQ":
        return cls(len(rows), col_count, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()})

    def sparse_rows(self) -> list[dict[int, object]]:
        rows: list[dict[int, object]] = [{} for _ in range(self.row_count)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def matvec(self, vec: Sequence[object] | Mapping[int, object]) -> list:
        if not isinstance(vec, Mapping):
            if len(vec) != self.col_count:
                raise DimensionError("vector length does not match column count")
            vec = dict(enumerate(vec))
        out = [0] * self.row_count
        for (i, j), v in self.entries.items():
            x = vec.get(j)
            if x:
                out[i] += v * x
        return [as_rational(x) for x in out]

    def echelon(self) -> Echelon:
        # shortest rows first keeps fill-in low on the structured matrices
        rows = sorted(self.sparse_rows(), key=lambda r: (len(r), min(r, default=0)))
        e = Echelon(self.col_count)
        for r in rows:
            if r:
                e.add(r)
        return e


def rank(m: SparseMatrixQ) -> int:
    return m.echelon().rank


def kernel_basis(m: SparseMatrixQ) -> list[list[Fraction | int]]:
    """Dense basis vectors of the right null space of ``m``."""
    out = []
    for vec in m.echelon().kernel(m.col_count):
        dense = [0] * m.col_count
        for k, v in vec.items():
            dense[k] = v
        out.append(dense)
    return out


def _as_sparse(v) -> dict[int, object]:
    if isinstance(v, Mapping):
        return dict(v)
    return {i: x for i, x in enumerate(v) if x}


def in_span(vectors: Sequence[Sequence[object]], target: Sequence[object]) -> bool:
    """Whether ``target`` lies in the rational span of ``vectors``.

    Decided by comparing the rank of the span with and without the target.
    """
    n = len(target)
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"vector of length {len(v)} against target of length {n}")
    e = Echelon(n)
    e.extend(_as_sparse(v) for v in vectors)
    r = e.rank
    e.add(_as_sparse(target))
    return e.rank == r


def iter_nonzero(vec: Mapping[int, object]) -> Iterator[tuple[int, object]]:
    return ((k, v) for k, v in sorted(vec.items()) if v)
