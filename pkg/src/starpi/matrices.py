"""Upper triangular matrix algebras with the reflection involution.

``A* = J A^t J`` sends the (i, j) entry to position (k+1-j, k+1-i).  Besides
UT_2 and UT_4 two *-stable subalgebras of UT_4 are provided: ``B`` (the two
diagonal 2x2 blocks) and ``A`` (UT_4 without e_23).  Entries are
:class:`~starpi.exact.ScalarPoly`, so a matrix with fresh indeterminates is a
generic element.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .exact import Indeterminate, ScalarPoly, as_rational
from .free import Kind, NCPoly, ParityError, Variable

__all__ = [
    "AlgebraSpec",
    "UT2",
    "UT4",
    "B",
    "A",
    "SPECS",
    "get_spec",
    "Parity",
    "UTMat",
    "SpecMismatch",
    "UnassignedVariable",
    "mat_arith",
    "mat_star",
    "generic_element",
    "generic_assignment",
    "special_element",
    "half_trace",
    "block_matrix",
    "blocks",
    "evaluate",
    "check_assignment",
]


class SpecMismatch(ValueError):
    pass


class UnassignedVariable(KeyError):
    pass


def _reflect(p: tuple[int, int], k: int) -> tuple[int, int]:
    i, j = p
    return (k + 1 - j, k + 1 - i)


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    size: int
    support: frozenset

    def __post_init__(self):
        k = self.size
        for i, j in self.support:
            if not 1 <= i <= j <= k:
                raise ValueError(f"{(i, j)} is not an upper triangular position of size {k}")
            if _reflect((i, j), k) not in self.support:
                raise ValueError(f"support of {self.name} is not stable under the reflection")
        for i, j in self.support:
            for jj, l in self.support:
                if j == jj and (i, l) not in self.support:
                    raise ValueError(f"support of {self.name} is not closed: e{i}{j} e{j}{l}")

    def positions(self) -> list[tuple[int, int]]:
        return sorted(self.support)

    def orbits(self) -> list[tuple[tuple[int, int], ...]]:
        """Reflection orbits of the support, each listed representative first."""
        seen = set()
        out = []
        for p in self.positions():
            if p in seen:
                continue
            q = _reflect(p, self.size)
            orb = (p,) if q == p else (p, q)
            seen.update(orb)
            out.append(orb)
        return out

    def __str__(self) -> str:
        return self.name


def _upper(k: int) -> frozenset:
    return frozenset((i, j) for i in range(1, k + 1) for j in range(i, k + 1))


UT2 = AlgebraSpec("UT2", 2, _upper(2))
UT4 = AlgebraSpec("UT4", 4, _upper(4))
B = AlgebraSpec("B", 4, frozenset({(1, 1), (1, 2), (2, 2), (3, 3), (3, 4), (4, 4)}))
A = AlgebraSpec("A", 4, _upper(4) - {(2, 3)})
SPECS = {s.name: s for s in (UT2, UT4, B, A)}


def get_spec(name: str) -> AlgebraSpec:
    try:
        return SPECS[name]
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(SPECS)}") from None


class Parity(Enum):
    SYM = "sym"
    SKEW = "skew"
    ANY = "any"


def _lift(x) -> ScalarPoly:
    return x if isinstance(x, ScalarPoly) else ScalarPoly.const(x)


class UTMat:
    """Matrix in ``spec`` with polynomial entries; absent entries are zero."""

    __slots__ = ("spec", "_entries")

    def __init__(self, spec: AlgebraSpec, entries: Mapping[tuple[int, int], object] | None = None):
        self.spec = spec
        clean = {}
        for p, v in (entries or {}).items():
            v = _lift(v)
            if not v:
                continue
            if p not in spec.support:
                raise SpecMismatch(f"entry {p} lies outside the support of {spec.name}")
            clean[p] = v
        self._entries = clean

    @classmethod
    def _raw(cls, spec, entries) -> "UTMat":
        m = cls.__new__(cls)
        m.spec = spec
        m._entries = entries
        return m

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "UTMat":
        return cls._raw(spec, {})

    @classmethod
    def identity(cls, spec: AlgebraSpec) -> "UTMat":
        return cls._raw(spec, {(i, i): ScalarPoly.const(1) for i in range(1, spec.size + 1)})

    @classmethod
    def unit(cls, spec: AlgebraSpec, i: int, j: int, c=1) -> "UTMat":
        return cls(spec, {(i, j): c})

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, p: tuple[int, int]) -> ScalarPoly:
        return self._entries.get(p, ScalarPoly())

    def is_zero(self) -> bool:
        return not self._entries

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UTMat):
            return NotImplemented
        return self.spec == other.spec and self._entries == other._entries

    def __hash__(self):
        return hash((self.spec.name, frozenset(self._entries.items())))

    def _same(self, other: "UTMat") -> None:
        if not isinstance(other, UTMat):
            raise TypeError(f"expected UTMat, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec.name} vs {other.spec.name}")

    def __add__(self, other: "UTMat") -> "UTMat":
        self._same(other)
        out = dict(self._entries)
        for p, v in other._entries.items():
            s = out[p] + v if p in out else v
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return UTMat._raw(self.spec, out)

    def __neg__(self) -> "UTMat":
        return UTMat._raw(self.spec, {p: -v for p, v in self._entries.items()})

    def __sub__(self, other: "UTMat") -> "UTMat":
        return self + (-other)

    def scale(self, c) -> "UTMat":
        c = _lift(c)
        out = {}
        for p, v in self._entries.items():
            s = v * c
            if s:
                out[p] = s
        return UTMat._raw(self.spec, out)

    def __mul__(self, other) -> "UTMat":
        if not isinstance(other, UTMat):
            return self.scale(other)
        self._same(other)
        rows: dict[int, list] = {}
        for (k, j), v in other._entries.items():
            rows.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self._entries.items():
            for j, b in rows.get(k, ()):
                prod = a * b
                if (i, j) in out:
                    s = out[(i, j)] + prod
                    if s:
                        out[(i, j)] = s
                    else:
                        del out[(i, j)]
                elif prod:
                    out[(i, j)] = prod
        return UTMat._raw(self.spec, out)

    def __rmul__(self, c) -> "UTMat":
        return self.scale(c)

    def star(self) -> "UTMat":
        return mat_star(self)

    def subs(self, values: Mapping[Indeterminate, object]) -> "UTMat":
        out = {}
        for p, v in self._entries.items():
            s = v.subs(values)
            if s:
                out[p] = s
        return UTMat._raw(self.spec, out)

    def indeterminates(self) -> list[Indeterminate]:
        return sorted({x for v in self._entries.values() for x in v.indeterminates()})

    def to_rows(self) -> list[list[str]]:
        k = self.spec.size
        return [[str(self[(i, j)]) for j in range(1, k + 1)] for i in range(1, k + 1)]

    def __repr__(self) -> str:
        body = ", ".join(f"{i}{j}: {v}" for (i, j), v in sorted(self._entries.items()))
        return f"UTMat<{self.spec.name}>({{{body}}})"


def commutator_mat(*ms: UTMat) -> UTMat:
    acc = ms[0]
    for b in ms[1:]:
        acc = acc * b - b * acc
    return acc


def mat_arith(a: UTMat, b, op: str) -> UTMat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def mat_star(m: UTMat) -> UTMat:
    k = m.spec.size
    return UTMat._raw(m.spec, {_reflect(p, k): v for p, v in m._entries.items()})


def _as_parity(parity) -> Parity:
    if isinstance(parity, Parity):
        return parity
    if isinstance(parity, Kind):
        return Parity.SYM if parity == Kind.SYM else Parity.SKEW
    return Parity(str(parity).lower())


def generic_element(spec: AlgebraSpec, parity, tag: str, symmetrize: bool = False) -> UTMat:
    """Matrix of ``spec`` with fresh indeterminates named ``Indeterminate(tag, 10*i + j)``.

    For SYM/SKEW the result is ``(M + M*)/2`` / ``(M - M*)/2`` of a generic M.
    By default the symmetrised matrix is written with one indeterminate per
    reflection orbit (a linear change of variables of ``(M +- M*)/2``);
    ``symmetrize=True`` returns the literal symmetrisation instead.
    """
    parity = _as_parity(parity)

    def ind(p):
        return Indeterminate(tag, 10 * p[0] + p[1])

    if parity is Parity.ANY:
        return UTMat._raw(spec, {p: ScalarPoly.var(ind(p)) for p in spec.positions()})
    sign = 1 if parity is Parity.SYM else -1
    if symmetrize:
        m = generic_element(spec, Parity.ANY, tag)
        return (m + mat_star(m).scale(sign)).scale(as_rational("1/2"))
    out = {}
    for orb in spec.orbits():
        t = ScalarPoly.var(ind(orb[0]))
        if len(orb) == 1:
            if sign == 1:
                out[orb[0]] = t
        else:
            out[orb[0]] = t
            out[orb[1]] = t * sign
    return UTMat._raw(spec, out)


def generic_assignment(variables, spec: AlgebraSpec, prefix: str = "", symmetrize: bool = False) -> dict[Variable, UTMat]:
    """Fresh generic element of matching parity for every variable."""
    return {
        v: generic_element(spec, Parity.SYM if v.kind == Kind.SYM else Parity.SKEW, prefix + v.name, symmetrize)
        for v in variables
    }


def block_matrix(top_left: UTMat | None, corner: UTMat | None, bottom_right: UTMat | None, spec: AlgebraSpec = A) -> UTMat:
    """Assemble ``[[top_left, corner], [0, bottom_right]]`` from UT_2 blocks."""
    if spec.size != 4:
        raise SpecMismatch("block matrices live in size-4 algebras")
    out = {}
    for blk, (di, dj) in ((top_left, (0, 0)), (corner, (0, 2)), (bottom_right, (2, 2))):
        if blk is None:
            continue
        if blk.spec.size != 2:
            raise SpecMismatch("blocks must be 2x2")
        for (i, j), v in blk._entries.items():
            out[(i + di, j + dj)] = v
    return UTMat(spec, out)


def blocks(m: UTMat) -> tuple[UTMat, UTMat, UTMat]:
    """Split a size-4 matrix with zero (2,3) entry into UT_2 blocks."""
    if m.spec.size != 4:
        raise SpecMismatch("blocks() needs a size-4 matrix")
    if m[(2, 3)]:
        raise SpecMismatch("corner block is not upper triangular")

    def sub(di, dj):
        return UTMat(UT2, {(i, j): m[(i + di, j + dj)] for (i, j) in UT2.positions()})

    return sub(0, 0), sub(0, 2), sub(2, 2)


def special_element(name: str, spec: AlgebraSpec = A) -> UTMat:
    """Constant fixture matrices used in the independence arguments."""
    if spec.size != 4:
        raise SpecMismatch("special elements are defined in size 4")
    I2 = UTMat.identity(UT2)
    D = UTMat(UT2, {(1, 1): 1, (2, 2): -1})
    if name == "Ycorner":
        return block_matrix(None, I2, None, spec)
    if name == "Zdiag":
        return block_matrix(I2, None, -I2, spec)
    if name == "ZcornerD":
        return block_matrix(None, D, None, spec)
    if name == "Wdiag":
        return block_matrix(UTMat.unit(UT2, 2, 2), None, UTMat.unit(UT2, 1, 1), spec)
    if name == "Identity":
        return UTMat.identity(spec)
    raise ValueError(f"unknown special element {name!r}")


def half_trace(c: UTMat) -> ScalarPoly:
    if c.spec != UT2:
        raise SpecMismatch("half_trace is defined on UT2")
    return (c[(1, 1)] + c[(2, 2)]) * as_rational("1/2")


def check_assignment(assignment: Mapping[Variable, UTMat]) -> AlgebraSpec:
    specs = {m.spec for m in assignment.values()}
    if len(specs) > 1:
        raise SpecMismatch("assignment mixes algebras")
    for v, m in assignment.items():
        s = mat_star(m)
        ok = s == m if v.kind == Kind.SYM else s == -m
        if not ok:
            raise ParityError(f"{v} is assigned a matrix of the wrong parity")
    return specs.pop() if specs else None


def evaluate(p: NCPoly, assignment: Mapping[Variable, UTMat], spec: AlgebraSpec | None = None, check: bool = True) -> UTMat:
    """Image of ``p`` under the homomorphism fixed by ``assignment``."""
    s = check_assignment(assignment) if check else None
    spec = spec or s or (next(iter(assignment.values())).spec if assignment else None)
    if spec is None:
        raise SpecMismatch("cannot infer the algebra from an empty assignment")
    for v in p.variables():
        if v not in assignment:
            raise UnassignedVariable(f"{v} is not assigned")
    cache: dict[tuple, UTMat] = {(): UTMat.identity(spec)}

    def prod(w: tuple) -> UTMat:
        m = cache.get(w)
        if m is None:
            m = prod(w[:-1]) * assignment[w[-1]]
            cache[w] = m
        return m

    acc = UTMat.zero(spec)
    for w, c in sorted(p.terms.items()):
        acc = acc + prod(w).scale(c)
    return acc
