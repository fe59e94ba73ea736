"""The T(*)-ideal I and its multilinear components.

I is generated by

* F1   ``v1 v2 v3``
* F2a  ``v1 u v2 - (v1 u v2)*``
* F2b  ``v1 v2 u - (v1 v2 u)*``
* F3a  ``Ja_(y1,y2,y3) [y1,y2][y3,y4]``
* F3b  ``Ja_(y1,y2,y3) [y1,y2,y4][y3,y5]``

with v_i commutators and u a variable.  Commutator slots are instantiated
with length-2 commutators of letters of both parities; everything else is
reached by T(*)-closure.  ``I n P_V`` is spanned by ``L g(h_1..h_k) R`` where
g runs over the generators, their involutes and their specialisations at
``u = 1`` (the unit is symmetric), each slot ``s_i`` is replaced by ``w + w*``
or ``w - w*`` for a multilinear word w on a nonempty block, and L, R are
multilinear words on the remaining variables.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exact import Echelon, _primitive
from .free import (
    Kind,
    NCPoly,
    ParityError,
    Variable,
    commutator,
    involute,
    is_multilinear,
    substitute,
    y,
)
from .identities import (
    EngineConfig,
    MultilinearSpace,
    NotMultilinear,
    identity_kernel,
)
from .matrices import A

__all__ = [
    "FAMILIES",
    "Generator",
    "ConsequenceSet",
    "TheoremReport",
    "jacobi_sum",
    "instantiate_generators",
    "closure_generators",
    "multilinear_consequences",
    "ideal_dim",
    "ideal_contains",
    "verify_main_theorem",
]

FAMILIES = ("F1", "F2a", "F2b", "F3a", "F3b")


@dataclass(frozen=True)
class Generator:
    family: str
    poly: NCPoly
    label: str

    @property
    def slots(self) -> tuple:
        return tuple(self.poly.variables())


def jacobi_sum(f: NCPoly, triple: Sequence[Variable]) -> NCPoly:
    """``f + f o s + f o s^2`` for the 3-cycle ``s: a -> b -> c -> a``."""
    a, b, c = triple
    for v in triple:
        if v.kind != Kind.SYM:
            raise ParityError(f"Jacobi sums run over symmetric variables, got {v}")
    s1 = {a: b, b: c, c: a}
    s2 = {a: c, b: a, c: b}

    def rename(p, m):
        return NCPoly({tuple(m.get(v, v) for v in w): co for w, co in p.terms.items()})

    return f + rename(f, s1) + rename(f, s2)


class _Fresh:
    def __init__(self):
        self.count = {Kind.SYM: 0, Kind.SKEW: 0}

    def __call__(self, kind: Kind) -> Variable:
        self.count[kind] += 1
        return Variable(kind, self.count[kind])


def _sign_normal(p: NCPoly) -> NCPoly:
    items = p.items()
    return -p if items and items[0][1] < 0 else p


_PARITIES = (Kind.SYM, Kind.SKEW)


def instantiate_generators() -> list[Generator]:
    """Concrete generators over all parity patterns, deduplicated up to sign."""
    out: list[Generator] = []
    seen: set = set()

    def push(family, poly, label):
        key = _sign_normal(poly)
        if not poly or key in seen:
            return
        seen.add(key)
        out.append(Generator(family, poly, label))

    for pat in itertools.product(_PARITIES, repeat=6):
        fresh = _Fresh()
        vs = [fresh(k) for k in pat]
        cs = [commutator(vs[0], vs[1]), commutator(vs[2], vs[3]), commutator(vs[4], vs[5])]
        push("F1", cs[0] * cs[1] * cs[2], f"[{vs[0]},{vs[1]}][{vs[2]},{vs[3]}][{vs[4]},{vs[5]}]")
    for fam in ("F2a", "F2b"):
        for pat in itertools.product(_PARITIES, repeat=5):
            fresh = _Fresh()
            a, b, u, c, d = (fresh(k) for k in (pat[0], pat[1], pat[2], pat[3], pat[4]))
            v1, v2 = commutator(a, b), commutator(c, d)
            if fam == "F2a":
                core = v1 * NCPoly.letter(u) * v2
                label = f"[{a},{b}] {u} [{c},{d}] - (...)*"
            else:
                core = v1 * v2 * NCPoly.letter(u)
                label = f"[{a},{b}][{c},{d}] {u} - (...)*"
            push(fam, core - involute(core), label)
    y1, y2, y3, y4, y5 = (y(i) for i in range(1, 6))
    push("F3a", jacobi_sum(commutator(y1, y2) * commutator(y3, y4), (y1, y2, y3)), "Ja[y1,y2][y3,y4]")
    push("F3b", jacobi_sum(commutator(y1, y2, y4) * commutator(y3, y5), (y1, y2, y3)), "Ja[y1,y2,y4][y3,y5]")
    return out


def _relabel(p: NCPoly) -> NCPoly:
    """Rename variables to y1.., z1.. in order of first appearance in the sorted variable list."""
    fresh = _Fresh()
    m = {v: fresh(v.kind) for v in p.variables()}
    return NCPoly({tuple(m[v] for v in w): c for w, c in p.terms.items()})


@lru_cache(maxsize=1)
def closure_generators() -> tuple:
    """Generators plus their involutes and their values at symmetric slots set to 1."""
    base = instantiate_generators()
    out: list[Generator] = []
    seen: set = set()

    def push(g: Generator):
        if not g.poly:
            return
        key = _sign_normal(_relabel(g.poly))
        if key in seen:
            return
        seen.add(key)
        out.append(Generator(g.family, _relabel(g.poly), g.label))

    for g in base:
        for h in (g, Generator(g.family, involute(g.poly), g.label + " (*)")):
            push(h)
            sym = [v for v in h.poly.variables() if v.kind == Kind.SYM]
            for r in range(1, len(sym) + 1):
                for sub in itertools.combinations(sym, r):
                    q = substitute(h.poly, {v: NCPoly.unit() for v in sub}, check=False)
                    push(Generator(h.family, q, h.label + " at " + ",".join(f"{v}=1" for v in sub)))
    return tuple(out)


# ---------------------------------------------------------------------------
# multilinear consequences
# ---------------------------------------------------------------------------


@dataclass
class ConsequenceSet:
    space: MultilinearSpace
    vectors: list = field(default_factory=list)  # primitive integer sparse vectors
    provenance: list = field(default_factory=list)
    echelon: Echelon | None = None

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def polys(self) -> list[NCPoly]:
        return [self.space.poly(v) for v in self.vectors]


def _block_images(block: tuple, kind: Kind) -> list[NCPoly]:
    """Distinct (up to sign) nonzero ``w +- w*`` for words w on ``block``."""
    sign = 1 if kind == Kind.SYM else -1
    seen = set()
    out = []
    for w in itertools.permutations(block):
        p = NCPoly.word(w)
        img = p + involute(p) * sign
        if not img:
            continue
        key = _sign_normal(img)
        if key in seen:
            continue
        seen.add(key)
        out.append(img)
    return out


def _ordered_blocks(rest: tuple, k: int):
    """Ordered k-tuples of disjoint nonempty subsets of ``rest``."""
    if k == 0:
        yield ()
        return
    n = len(rest)
    for size in range(1, n - k + 2):
        for first in itertools.combinations(rest, size):
            remaining = tuple(v for v in rest if v not in first)
            for tail in _ordered_blocks(remaining, k - 1):
                yield (first,) + tail


def _boundaries(rest: tuple, increasing: bool):
    if increasing:
        for r in range(len(rest) + 1):
            for left in itertools.combinations(rest, r):
                right = tuple(v for v in rest if v not in left)
                yield left, right
        return
    for perm in itertools.permutations(rest):
        for cut in range(len(perm) + 1):
            yield perm[:cut], perm[cut:]


def _consequences_of(args):
    gen_index, g, space, increasing = args
    vs = space.variables
    idx = space.index
    slots = g.slots
    k = len(slots)
    out = []
    if k > len(vs):
        return out
    image_cache: dict = {}
    for blocks in _ordered_blocks(vs, k):
        options = []
        for s, blk in zip(slots, blocks):
            key = (blk, s.kind)
            if key not in image_cache:
                image_cache[key] = _block_images(blk, s.kind)
            options.append(image_cache[key])
            if not image_cache[key]:
                break
        else:
            used = set(itertools.chain.from_iterable(blocks))
            rest = tuple(v for v in vs if v not in used)
            for choice in itertools.product(*[range(len(o)) for o in options]):
                sub = substitute(g.poly, {s: options[i][c] for i, (s, c) in enumerate(zip(slots, choice))}, check=False)
                if not sub:
                    continue
                for left, right in _boundaries(rest, increasing):
                    vec = {}
                    for w, c in sub.terms.items():
                        vec[idx[left + w + right]] = c
                    out.append((_primitive(vec), (gen_index, blocks, choice, left, right)))
    return out


@lru_cache(maxsize=32)
def multilinear_consequences(space: MultilinearSpace, config: EngineConfig = EngineConfig(),
                             increasing_boundary: bool = False) -> ConsequenceSet:
    """Spanning set of ``I n P_V`` with provenance, plus its echelon form."""
    config.check(space.n)
    gens = closure_generators()
    tasks = [(i, g, space, increasing_boundary) for i, g in enumerate(gens)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as ex:
            parts = list(ex.map(_consequences_of, tasks, chunksize=4))
    else:
        parts = [_consequences_of(t) for t in tasks]
    result = ConsequenceSet(space)
    seen = set()
    e = Echelon(space.dimension)
    for part in parts:
        for vec, prov in part:
            key = tuple(sorted(vec.items()))
            if not vec or key in seen:
                continue
            seen.add(key)
            result.vectors.append(vec)
            g = gens[prov[0]]
            result.provenance.append((g.family, g.label) + prov[1:])
            e.add(vec)
    result.echelon = e
    return result


def ideal_dim(space: MultilinearSpace, config: EngineConfig = EngineConfig(), increasing_boundary: bool = False) -> int:
    return multilinear_consequences(space, config, increasing_boundary).rank


def ideal_contains(space: MultilinearSpace, p: NCPoly, config: EngineConfig = EngineConfig()) -> bool:
    if not is_multilinear(p, space.variables):
        raise NotMultilinear(f"{p} is not multilinear over {space}")
    return multilinear_consequences(space, config).echelon.contains(space.coordinates(p))


@dataclass
class TheoremReport:
    space: str
    sym: int
    skew: int
    dim_space: int
    dim_ideal: int
    dim_kernel: int
    contained: bool

    @property
    def equal(self) -> bool:
        return self.dim_ideal == self.dim_kernel

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "sym": self.sym,
            "skew": self.skew,
            "dim_space": self.dim_space,
            "dim_ideal": self.dim_ideal,
            "dim_kernel": self.dim_kernel,
            "equal": self.equal,
            "contained": self.contained,
        }


def verify_main_theorem(space: MultilinearSpace, config: EngineConfig = EngineConfig()) -> TheoremReport:
    """Compare ``dim(I n P_V)`` with ``dim(Id(A,*) n P_V)`` and check ``I n P_V`` lies in the kernel."""
    config.check(space.n)
    cons = multilinear_consequences(space, config)
    kernel = identity_kernel(A, space, config)
    ke = Echelon(space.dimension)
    ke.extend({i: v for i, v in enumerate(vec) if v} for vec in kernel)
    contained = all(ke.contains(row) for row in cons.echelon.basis())
    sym, skew = space.signature
    return TheoremReport(str(space), sym, skew, space.dimension, cons.rank, len(kernel), contained)
