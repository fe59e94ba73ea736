"""*-identity checking and multilinear identity kernels.

A polynomial is a *-identity of an algebra over an infinite field iff it
vanishes on one generic assignment (independent indeterminates for every
entry of every variable).  Vanishing means every coefficient of every scalar
monomial in every matrix position is zero, so on the multilinear space P_V
the identities are the kernel of one exact evaluation matrix.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exact import Echelon, Indeterminate, ScalarPoly
from .free import Kind, NCPoly, is_multilinear, y, z
from .matrices import AlgebraSpec, UTMat, evaluate, generic_assignment

__all__ = [
    "BoundExceeded",
    "NotMultilinear",
    "MultilinearSpace",
    "Verdict",
    "EngineConfig",
    "spiral",
    "is_star_identity",
    "identity_kernel",
    "independence_rank",
    "evaluation_columns",
]

DEFAULT_MAX_DEGREE = 6


class BoundExceeded(ValueError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"space of degree {n} exceeds the bound {bound}; raise it with --max-degree")
        self.n = n
        self.bound = bound


class NotMultilinear(ValueError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    max_degree: int = DEFAULT_MAX_DEGREE
    jobs: int = 1
    # literal (M +- M*)/2 instead of one indeterminate per reflection orbit
    symmetrize: bool = False

    def check(self, n: int) -> None:
        if n > self.max_degree:
            raise BoundExceeded(n, self.max_degree)


@dataclass(frozen=True)
class MultilinearSpace:
    """P_V: span of the n! words that are permutations of V."""

    variables: tuple

    def __post_init__(self):
        vs = tuple(sorted(self.variables))
        if len(set(vs)) != len(vs):
            raise ValueError("repeated variable")
        object.__setattr__(self, "variables", vs)

    @classmethod
    def of(cls, sym: int, skew: int = 0) -> "MultilinearSpace":
        return cls(tuple(z(i) for i in range(1, skew + 1)) + tuple(y(i) for i in range(1, sym + 1)))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def signature(self) -> tuple[int, int]:
        s = sum(1 for v in self.variables if v.kind == Kind.SYM)
        return s, self.n - s

    @property
    def dimension(self) -> int:
        out = 1
        for k in range(2, self.n + 1):
            out *= k
        return out

    @property
    def words(self) -> tuple:
        return _words(self.variables)

    @property
    def index(self) -> dict:
        return _index(self.variables)

    def coordinates(self, p: NCPoly) -> dict[int, object]:
        idx = self.index
        out = {}
        for w, c in p.terms.items():
            k = idx.get(w)
            if k is None:
                raise NotMultilinear(f"word {' '.join(map(str, w))} is not a permutation of {self}")
            out[k] = c
        return out

    def dense(self, p: NCPoly) -> list:
        vec = [0] * self.dimension
        for k, c in self.coordinates(p).items():
            vec[k] = c
        return vec

    def poly(self, vec) -> NCPoly:
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        words = self.words
        return NCPoly({words[k]: c for k, c in items if c})

    def __str__(self) -> str:
        return "{" + ",".join(v.name for v in self.variables) + "}"


@lru_cache(maxsize=None)
def _words(vs: tuple) -> tuple:
    return tuple(itertools.permutations(vs))


@lru_cache(maxsize=None)
def _index(vs: tuple) -> dict:
    return {w: i for i, w in enumerate(_words(vs))}


def spiral():
    """0, 1, -1, 2, -2, ..."""
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


@dataclass
class Verdict:
    is_identity: bool
    witness: dict | None = None  # Variable -> constant UTMat
    entry: tuple[int, int] | None = None
    value: object = None
    spec: str = ""

    def __post_init__(self):
        if self.is_identity != (self.witness is None):
            raise ValueError("a verdict carries a witness exactly when it is a refutation")

    def to_dict(self) -> dict:
        out = {"is_identity": self.is_identity, "algebra": self.spec}
        if self.witness is not None:
            out["witness"] = {
                v.name: [[str(x) for x in row] for row in m.to_rows()] for v, m in sorted(self.witness.items())
            }
            out["entry"] = list(self.entry)
            out["value"] = str(self.value)
        return out


def _specialize(poly: ScalarPoly) -> dict[Indeterminate, int]:
    """Integer point where ``poly`` does not vanish, found indeterminate by indeterminate."""
    values = {}
    cur = poly
    for x in poly.indeterminates():
        for v in spiral():
            nxt = cur.subs({x: v})
            if nxt:
                values[x] = v
                cur = nxt
                break
    return values


def is_star_identity(p: NCPoly, spec: AlgebraSpec, config: EngineConfig = EngineConfig()) -> Verdict:
    gen = generic_assignment(p.variables(), spec, symmetrize=config.symmetrize)
    val = evaluate(p, gen, spec, check=False)
    if val.is_zero():
        return Verdict(True, spec=spec.name)
    entry = min(val.entries)
    values = _specialize(val[entry])
    for m in gen.values():
        for x in m.indeterminates():
            values.setdefault(x, 0)
    witness = {v: m.subs(values) for v, m in gen.items()}
    got = evaluate(p, witness, spec)[entry]
    return Verdict(False, witness=witness, entry=entry, value=got.constant(), spec=spec.name)


# ---------------------------------------------------------------------------
# evaluation matrix
# ---------------------------------------------------------------------------


def _eval_subtree(args):
    """Evaluations of all permutations of ``vs`` starting with ``head``."""
    spec, vs, head, symmetrize = args
    gen = generic_assignment(vs, spec, symmetrize=symmetrize)
    out = []

    def walk(prefix, mat, rest):
        if not rest:
            out.append((prefix, {(p, m): c for p, poly in mat.entries.items() for m, c in poly.terms.items()}))
            return
        for i, v in enumerate(rest):
            walk(prefix + (v,), mat * gen[v], rest[:i] + rest[i + 1 :])

    rest = tuple(v for v in vs if v != head)
    walk((head,), gen[head], rest)
    return out


@lru_cache(maxsize=64)
def evaluation_columns(spec: AlgebraSpec, space: MultilinearSpace, jobs: int = 1, symmetrize: bool = False) -> tuple:
    """For every basis word (in order) its generic evaluation as {(pos, monomial): coeff}."""
    vs = space.variables
    if not vs:
        ident = UTMat.identity(spec)
        return ({(p, m): c for p, poly in ident.entries.items() for m, c in poly.terms.items()},)
    tasks = [(spec, vs, v, symmetrize) for v in vs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_eval_subtree, tasks))
    else:
        parts = [_eval_subtree(t) for t in tasks]
    idx = space.index
    cols = [None] * space.dimension
    for part in parts:
        for w, data in part:
            cols[idx[w]] = data
    return tuple(cols)


@lru_cache(maxsize=64)
def _evaluation_echelon(spec: AlgebraSpec, space: MultilinearSpace, jobs: int, symmetrize: bool) -> Echelon:
    cols = evaluation_columns(spec, space, jobs, symmetrize)
    rows: dict = {}
    for j, data in enumerate(cols):
        for key, c in data.items():
            rows.setdefault(key, {})[j] = c
    e = Echelon(space.dimension)
    ordered = sorted(rows.items(), key=lambda kv: (len(kv[1]), kv[0]))
    for _, r in ordered:
        e.add(r)
        if e.rank == space.dimension:
            break
    return e


def identity_kernel(spec: AlgebraSpec, space: MultilinearSpace, config: EngineConfig = EngineConfig()) -> list[list]:
    """Basis (coordinate vectors on ``space.words``) of P_V intersected with Id(spec, *)."""
    config.check(space.n)
    e = _evaluation_echelon(spec, space, config.jobs, config.symmetrize)
    out = []
    for vec in e.kernel():
        dense = [0] * space.dimension
        for k, v in vec.items():
            dense[k] = v
        out.append(dense)
    return out


def kernel_dimension(spec: AlgebraSpec, space: MultilinearSpace, config: EngineConfig = EngineConfig()) -> int:
    config.check(space.n)
    return space.dimension - _evaluation_echelon(spec, space, config.jobs, config.symmetrize).rank


def image_vector(p: NCPoly, spec: AlgebraSpec, space: MultilinearSpace, config: EngineConfig = EngineConfig()) -> dict:
    """Evaluation coordinates of a multilinear ``p`` (keys are (pos, monomial))."""
    cols = evaluation_columns(spec, space, config.jobs, config.symmetrize)
    out: dict = {}
    for k, c in space.coordinates(p).items():
        for key, v in cols[k].items():
            s = out.get(key, 0) + c * v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def independence_rank(polys: Sequence[NCPoly], spec: AlgebraSpec, space: MultilinearSpace | None = None,
                      config: EngineConfig = EngineConfig()) -> int:
    """Rank of ``polys`` in P_V / (P_V intersected with Id(spec, *))."""
    if not polys:
        return 0
    if space is None:
        sets = {tuple(sorted(set(p.variables()))) for p in polys if p}
        if len(sets) > 1:
            raise NotMultilinear("polynomials involve different variable sets")
        space = MultilinearSpace(sets.pop() if sets else ())
    config.check(space.n)
    for p in polys:
        if not is_multilinear(p, space.variables):
            raise NotMultilinear(f"{p} is not multilinear over {space}")
    images = [image_vector(p, spec, space, config) for p in polys]
    keys = sorted({k for im in images for k in im})
    pos = {k: i for i, k in enumerate(keys)}
    e = Echelon(len(keys))
    for im in images:
        e.add({pos[k]: v for k, v in im.items()})
    return e.rank
