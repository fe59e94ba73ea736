"""Constructive rewriting and the enumerated basis / independence sets.

* :func:`order_commutator` -- ``[w_1..w_n] = v + v'`` with v a combination of
  commutators ``[w_j1, w_j2, ..]`` with ``w_j1 > w_j2 <= w_j3 <= ..`` and v' a
  combination of products of two commutators.
* :func:`proper_decompose` -- ``p = sum (sorted y-word) * g`` with g Y-proper.
* :func:`two_commutator_canonical` -- two-commutator normal form modulo I.
* enumerators for Omega_z, Omega_y and the proper basis of B modulo Id(B,*).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import Echelon, as_rational
from .free import ArityError, Kind, NCPoly, Variable, commutator, is_multilinear
from .identities import EngineConfig, MultilinearSpace
from .tideal import multilinear_consequences

__all__ = [
    "ShapeError",
    "OrderedDecomposition",
    "order_commutator",
    "is_ordered",
    "ProperTerm",
    "proper_decompose",
    "is_y_proper",
    "derivation",
    "CanonicalShape",
    "CanonicalForm",
    "canonical_shapes",
    "two_commutator_canonical",
    "enumerate_omega_z",
    "enumerate_omega_y",
    "enumerate_B_basis",
    "enumerate_B_quotient_basis",
    "proper_span",
    "two_commutator_span",
]


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# ordered commutators
# ---------------------------------------------------------------------------


def is_ordered(letters: Sequence[Variable]) -> bool:
    """``w1 > w2 <= w3 <= ... <= wn``."""
    return len(letters) >= 2 and letters[0] > letters[1] and all(
        letters[i] <= letters[i + 1] for i in range(1, len(letters) - 1)
    )


@dataclass
class OrderedDecomposition:
    letters: tuple
    ordered: dict = field(default_factory=dict)  # ordered letter tuple -> coeff
    residue: list = field(default_factory=list)  # (coeff, commutator, commutator)

    @property
    def ordered_part(self) -> NCPoly:
        out = NCPoly.zero()
        for lt, c in self.ordered.items():
            out = out + commutator(*lt) * c
        return out

    @property
    def two_commutator_part(self) -> NCPoly:
        out = NCPoly.zero()
        for c, u, v in self.residue:
            out = out + u * v * c
        return out

    def expand(self) -> NCPoly:
        return self.ordered_part + self.two_commutator_part


def _swap_residue(letters: tuple, i: int, coef) -> list:
    """Two-commutator part of ``[u, x, y, r..] - [u, y, x, r..]``, u = [letters[:i]]."""
    u = commutator(*letters[:i])
    v = commutator(letters[i], letters[i + 1])
    pairs = [(coef, u, v), (-coef, v, u)]
    for r in letters[i + 2 :]:
        nxt = []
        for c, p, q in pairs:
            # [p q, r] = p [q, r] + [p, r] q
            nxt.append((c, p, commutator(q, r)))
            nxt.append((c, commutator(p, r), q))
        pairs = nxt
    return pairs


def _sort_tail(letters: tuple, coef, residue: list) -> tuple:
    cur = list(letters)
    n = len(cur)
    changed = True
    while changed:
        changed = False
        for i in range(2, n - 1):
            if cur[i] > cur[i + 1]:
                residue.extend(_swap_residue(tuple(cur), i, coef))
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                changed = True
    return tuple(cur)


def order_commutator(letters: Sequence[Variable]) -> OrderedDecomposition:
    letters = tuple(letters)
    if len(letters) < 2:
        raise ArityError("a commutator needs at least two arguments")
    out = OrderedDecomposition(letters)
    work = [(letters, 1)]
    while work:
        lt, c = work.pop()
        if lt[0] == lt[1]:
            continue
        m = min(lt)
        if lt[1] == m:
            lt = _sort_tail(lt, c, out.residue)
            s = out.ordered.get(lt, 0) + c
            if s:
                out.ordered[lt] = s
            else:
                out.ordered.pop(lt)
        elif lt[0] == m:
            work.append(((lt[1], lt[0]) + lt[2:], -c))
        else:
            lt = _sort_tail(lt, c, out.residue)
            a1, a2, a3, rest = lt[0], lt[1], lt[2], lt[3:]
            # Jacobi: [a1, a2, a3] = [a1, a3, a2] - [a2, a3, a1]
            work.append(((a1, a3, a2) + rest, c))
            work.append(((a2, a3, a1) + rest, -c))
    out.residue = [(c, u, v) for c, u, v in out.residue if c and u and v]
    return out


# ---------------------------------------------------------------------------
# Y-proper decomposition
# ---------------------------------------------------------------------------

# factors: ("y", var) | ("z", var) | ("c", NCPoly)


def _key(f) -> tuple:
    if f[0] == "y":
        return (0, f[1])
    if f[0] == "z":
        return (1, f[1])
    return (2,)


def _fpoly(f) -> NCPoly:
    return f[1] if f[0] == "c" else NCPoly.letter(f[1])


@dataclass
class ProperTerm:
    prefix: tuple  # non-decreasing word in symmetric variables
    proper: NCPoly


def proper_decompose(p: NCPoly) -> list[ProperTerm]:
    """Write ``p`` as a sum of sorted symmetric prefixes times Y-proper polynomials."""
    pending: dict[tuple, object] = {}
    for w, c in p.terms.items():
        key = tuple(("y", v) if v.kind == Kind.SYM else ("z", v) for v in w)
        pending[key] = pending.get(key, 0) + c
    done: dict[tuple, object] = {}
    while pending:
        fs, c = pending.popitem()
        if not c:
            continue
        for i in range(len(fs) - 1):
            a, b = fs[i], fs[i + 1]
            if _key(a) > _key(b):
                swapped = fs[:i] + (b, a) + fs[i + 2 :]
                merged = fs[:i] + (("c", commutator(_fpoly(a), _fpoly(b))),) + fs[i + 2 :]
                for k in (swapped, merged):
                    s = pending.get(k, 0) + c
                    if s:
                        pending[k] = s
                    else:
                        pending.pop(k, None)
                break
        else:
            s = done.get(fs, 0) + c
            if s:
                done[fs] = s
            else:
                done.pop(fs, None)
    groups: dict[tuple, NCPoly] = {}
    for fs, c in done.items():
        prefix = tuple(f[1] for f in fs if f[0] == "y")
        body = NCPoly.unit(c)
        for f in fs:
            if f[0] != "y":
                body = body * _fpoly(f)
        groups[prefix] = groups.get(prefix, NCPoly.zero()) + body
    return [ProperTerm(k, g) for k, g in sorted(groups.items(), key=lambda kv: (len(kv[0]), kv[0])) if g]


def derivation(p: NCPoly, v: Variable) -> NCPoly:
    """The derivation sending ``v`` to 1 and every other variable to 0."""
    out: dict = {}
    for w, c in p.terms.items():
        for i, u in enumerate(w):
            if u == v:
                k = w[:i] + w[i + 1 :]
                out[k] = out.get(k, 0) + c
    return NCPoly(out)


def is_y_proper(p: NCPoly) -> bool:
    """In characteristic 0 the Y-proper polynomials are the common kernel of
    the derivations ``y_i -> 1``."""
    return all(not derivation(p, v) for v in p.variables() if v.kind == Kind.SYM)


# ---------------------------------------------------------------------------
# two-commutator canonical form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalShape:
    """``u_i1 .. u_ir [u_j1, .., u_js][u_k1, u_k2]``."""

    prefix: tuple
    inner: tuple
    last: tuple

    def poly(self) -> NCPoly:
        return NCPoly.word(self.prefix) * commutator(*self.inner) * commutator(*self.last)

    def violations(self, all_symmetric: bool | None = None) -> list[str]:
        k1, k2 = self.last
        bad = []
        if any(self.prefix[i] >= self.prefix[i + 1] for i in range(len(self.prefix) - 1)):
            bad.append("prefix not increasing")
        if len(self.inner) < 2 or not is_ordered(self.inner):
            bad.append("inner commutator not ordered")
        if not k2 < k1:
            bad.append("k2 < k1 fails")
        if self.prefix and not k2 <= self.prefix[0]:
            bad.append("k2 <= i1 fails")
        if len(self.inner) >= 2 and not k2 <= self.inner[1]:
            bad.append("k2 <= j2 fails")
        letters = self.prefix + self.inner + self.last
        if all_symmetric is None:
            all_symmetric = all(v.kind == Kind.SYM for v in letters)
        if all_symmetric and self.inner and not k1 <= self.inner[0]:
            bad.append("k1 <= j1 fails")
        return bad

    def __str__(self) -> str:
        pre = " ".join(map(str, self.prefix))
        body = f"[{','.join(map(str, self.inner))}][{','.join(map(str, self.last))}]"
        return f"{pre} {body}" if pre else body


def _ordered_commutators(letters: Iterable[Variable]) -> list[tuple]:
    """Distinct-letter sequences ``j1 > j2 < j3 < ..`` on the given set."""
    s = sorted(letters)
    if len(s) < 2:
        return []
    low, rest = s[0], s[1:]
    return [(j1, low) + tuple(v for v in rest if v != j1) for j1 in rest]


def canonical_shapes(space: MultilinearSpace) -> list[CanonicalShape]:
    vs = space.variables
    if len(vs) < 4:
        return []
    all_sym = all(v.kind == Kind.SYM for v in vs)
    m = vs[0]
    out = []
    for k1 in vs[1:]:
        rest = tuple(v for v in vs[1:] if v != k1)
        for size in range(2, len(rest) + 1):
            for inner_set in itertools.combinations(rest, size):
                prefix = tuple(v for v in rest if v not in inner_set)
                for inner in _ordered_commutators(inner_set):
                    if all_sym and not k1 < inner[0]:
                        continue
                    out.append(CanonicalShape(prefix, inner, (k1, m)))
    return out


@dataclass
class CanonicalForm:
    terms: list  # (coeff, CanonicalShape)

    @property
    def poly(self) -> NCPoly:
        out = NCPoly.zero()
        for c, s in self.terms:
            out = out + s.poly() * c
        return out


@lru_cache(maxsize=32)
def two_commutator_span(space: MultilinearSpace) -> Echelon:
    """Span of all ``z_r1 .. z_rd [..][..]`` in P_V (z's in any order)."""
    vs = space.variables
    zs = [v for v in vs if v.kind == Kind.SKEW]
    e = Echelon(space.dimension)
    for r in range(len(zs) + 1):
        for pre_set in itertools.combinations(zs, r):
            rest = tuple(v for v in vs if v not in pre_set)
            if len(rest) < 4:
                continue
            for size in range(2, len(rest) - 1):
                for first in itertools.combinations(rest, size):
                    second = tuple(v for v in rest if v not in first)
                    for pre in itertools.permutations(pre_set):
                        for a in itertools.permutations(first):
                            for b in itertools.permutations(second):
                                p = NCPoly.word(pre) * commutator(*a) * commutator(*b)
                                e.add(space.coordinates(p))
    return e


def _canonical_input(p, space: MultilinearSpace | None):
    if isinstance(p, NCPoly):
        if space is None:
            space = MultilinearSpace(tuple(p.variables()))
        if not is_multilinear(p, space.variables):
            raise ShapeError(f"{p} is not multilinear")
        if not two_commutator_span(space).contains(space.coordinates(p)):
            raise ShapeError("input is not a z-prefix times a product of two commutators")
        return p, space
    try:
        prefix, first, second = (tuple(x) for x in p)
    except (TypeError, ValueError):
        raise ShapeError("expected an NCPoly or a (z_prefix, commutator, commutator) triple") from None
    if any(v.kind != Kind.SKEW for v in prefix):
        raise ShapeError("the prefix may only contain skew variables")
    if len(first) < 2 or len(second) < 2:
        raise ShapeError("both commutators need at least two letters")
    letters = prefix + first + second
    if len(set(letters)) != len(letters):
        raise ShapeError("input is not multilinear")
    poly = NCPoly.word(prefix) * commutator(*first) * commutator(*second)
    space = space or MultilinearSpace(letters)
    return poly, space


def two_commutator_canonical(p, space: MultilinearSpace | None = None,
                             config: EngineConfig = EngineConfig()) -> CanonicalForm:
    """Combination q of canonical shapes with ``p - q`` in I.

    ``p`` is either a multilinear NCPoly in the span of z-prefixed products
    of two commutators or a triple ``(z_prefix, letters1, letters2)``.  The
    coefficients come from an exact solve in ``P_V / (I n P_V)``; for
    variables sets containing a skew variable the canonical shapes are
    independent there, so the answer is unique.
    """
    poly, space = _canonical_input(p, space)
    ideal = multilinear_consequences(space, config).echelon
    shapes = canonical_shapes(space)
    # eliminate with recorded combinations; rows: (remainder, combo), in insertion order
    basis: dict[int, tuple[dict, dict]] = {}

    def reduce(vec: dict, combo: dict) -> tuple[dict, dict]:
        vec = dict(vec)
        combo = dict(combo)
        for piv in basis:
            a = vec.get(piv)
            if not a:
                continue
            row, rc = basis[piv]
            f = Fraction(a) / row[piv]
            for k, x in row.items():
                v = vec.get(k, 0) - f * x
                if v:
                    vec[k] = v
                else:
                    vec.pop(k, None)
            for k, x in rc.items():
                v = combo.get(k, 0) - f * x
                if v:
                    combo[k] = v
                else:
                    combo.pop(k, None)
        return vec, combo

    for i, s in enumerate(shapes):
        vec, combo = reduce(ideal.remainder(space.coordinates(s.poly())), {i: 1})
        if vec:
            basis[min(vec)] = (vec, combo)
    vec, combo = reduce(ideal.remainder(space.coordinates(poly)), {})
    if vec:
        raise ShapeError("input is not congruent to a combination of canonical shapes")
    terms = [(as_rational(-c), shapes[i]) for i, c in sorted(combo.items()) if c]
    return CanonicalForm(terms)


# ---------------------------------------------------------------------------
# enumerators
# ---------------------------------------------------------------------------


def _as_vars(V) -> tuple:
    if isinstance(V, MultilinearSpace):
        return V.variables
    return tuple(sorted(V))


def enumerate_omega_z(V, degenerate: bool = True) -> list[NCPoly]:
    """``u_i1 .. u_ir [u_j1, .., u_js][u_k, z]`` with z the minimal (skew) variable.

    By default the degenerate shape with an empty middle commutator (s = 0)
    is included; ``degenerate=False`` keeps only s >= 2.
    """
    vs = _as_vars(V)
    if not vs or vs[0].kind != Kind.SKEW:
        raise ShapeError("Omega_z needs a skew variable as the minimum of V")
    zmin = vs[0]
    out = []
    for k in vs[1:]:
        last = commutator(k, zmin)
        rest = tuple(v for v in vs[1:] if v != k)
        sizes = ([0] if degenerate else []) + list(range(2, len(rest) + 1))
        for size in sizes:
            for inner_set in itertools.combinations(rest, size):
                prefix = NCPoly.word(v for v in rest if v not in inner_set)
                if size == 0:
                    out.append(prefix * last)
                    continue
                for inner in _ordered_commutators(inner_set):
                    out.append(prefix * commutator(*inner) * last)
    return out


def enumerate_omega_y(V) -> list[NCPoly]:
    """``[y_j1, .., y_js][y_k, y_min]`` with ``j1 > j2 < .. < js`` and ``j1 > k``."""
    vs = _as_vars(V)
    if len(vs) < 4:
        raise ShapeError("Omega_y needs at least four variables")
    if any(v.kind != Kind.SYM for v in vs):
        raise ShapeError("Omega_y is built from symmetric variables only")
    ymin = vs[0]
    out = []
    for k in vs[1:]:
        rest = tuple(v for v in vs[1:] if v != k)
        for inner in _ordered_commutators(rest):
            if inner[0] > k:
                out.append(commutator(*inner) * commutator(k, ymin))
    return out


def enumerate_B_basis(space) -> list[NCPoly]:
    """Multilinear ``z_1^r1 .. z_m^rm [w_j1, .., w_js]^theta`` with ``w_j1 > w_j2 <= ..``."""
    vs = _as_vars(space)
    zs = [v for v in vs if v.kind == Kind.SKEW]
    out = []
    for r in range(len(zs) + 1):
        for pre in itertools.combinations(zs, r):
            rest = tuple(v for v in vs if v not in pre)
            if not rest:
                out.append(NCPoly.word(pre))
            for inner in _ordered_commutators(rest):
                out.append(NCPoly.word(pre) * commutator(*inner))
    return out


def enumerate_B_quotient_basis(space) -> list[NCPoly]:
    """Sorted symmetric prefix times a proper basis element on the remaining variables."""
    vs = _as_vars(space)
    ys = [v for v in vs if v.kind == Kind.SYM]
    out = []
    for r in range(len(ys) + 1):
        for pre in itertools.combinations(ys, r):
            rest = tuple(v for v in vs if v not in pre)
            for b in enumerate_B_basis(rest):
                out.append(NCPoly.word(pre) * b)
    return out


def _set_partitions_ordered(items: tuple, min_size: int = 2):
    """Ordered partitions of ``items`` into blocks of size >= min_size."""
    if not items:
        yield ()
        return
    n = len(items)
    for size in range(min_size, n + 1):
        for block in itertools.combinations(items, size):
            rest = tuple(v for v in items if v not in block)
            for tail in _set_partitions_ordered(rest, min_size):
                yield (block,) + tail


@lru_cache(maxsize=32)
def proper_span(space: MultilinearSpace) -> Echelon:
    """Echelon basis of the multilinear Y-proper polynomials of P_V."""
    vs = space.variables
    zs = [v for v in vs if v.kind == Kind.SKEW]
    e = Echelon(space.dimension)
    for r in range(len(zs) + 1):
        for pre in itertools.combinations(zs, r):
            rest = tuple(v for v in vs if v not in pre)
            for blocks in _set_partitions_ordered(rest):
                factors = [[commutator(*perm) for perm in itertools.permutations(b)] for b in blocks]
                for choice in itertools.product(*factors):
                    p = NCPoly.word(pre)
                    for f in choice:
                        p = p * f
                    e.add(space.coordinates(p))
    return e
