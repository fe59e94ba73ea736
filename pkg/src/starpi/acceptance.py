"""The nine acceptance criteria as plain functions.

Shared by ``starpi selftest`` and ``tests/test_acceptance.py``.  Every check
is exact; a criterion passes only when every instance it covers passes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exact import Echelon, Indeterminate, ScalarPoly
from .free import Kind, NCPoly, Variable, commutator, involute, y, z
from .identities import EngineConfig, MultilinearSpace, identity_kernel, image_vector, independence_rank, is_star_identity
from .matrices import A, B, UT2, UT4, UTMat, block_matrix, blocks, commutator_mat, evaluate, generic_element
from .matrices import mat_star, special_element
from .normal_form import (
    enumerate_B_basis,
    enumerate_B_quotient_basis,
    enumerate_omega_y,
    enumerate_omega_z,
    is_ordered,
    is_y_proper,
    order_commutator,
    proper_decompose,
    proper_span,
    two_commutator_canonical,
)
from .tideal import closure_generators, ideal_contains, instantiate_generators, multilinear_consequences, verify_main_theorem


@dataclass(frozen=True)
class AcceptanceConfig:
    slow: bool = False  # adds the degree 6 theorem checks
    seed: int = 20240601
    law_checks: int = 1000
    round_trips: int = 500
    canonical_samples: int = 100
    jobs: int = 1


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title}: {self.detail} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3), "failures": self.failures[:10]}


def signatures(n: int) -> list[tuple[int, int]]:
    """All (sym, skew) with sym + skew = n."""
    return [(n - q, q) for q in range(n + 1)]


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

LETTERS = (z(1), z(2), y(1), y(2), y(3))


def random_word(rng: random.Random, max_len: int = 6, letters=LETTERS) -> tuple:
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_ncpoly(rng: random.Random, max_len: int = 6, terms: int = 4, letters=LETTERS) -> NCPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        w = random_word(rng, max_len, letters)
        out[w] = out.get(w, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return NCPoly(out)


def random_parity_matrix(rng: random.Random, v: Variable, spec=A) -> UTMat:
    g = generic_element(spec, "sym" if v.kind == Kind.SYM else "skew", "r")
    return g.subs({x: rng.randint(-3, 3) for x in g.indeterminates()})


def random_shape_input(rng: random.Random) -> tuple[tuple, tuple, tuple]:
    """``(z_prefix, letters1, letters2)`` for a random multilinear space with 4 <= n <= 5."""
    n = rng.choice((4, 5))
    q = rng.randint(0, n)
    zs = [z(i) for i in range(1, q + 1)]
    ys = [y(i) for i in range(1, n - q + 1)]
    letters = zs + ys
    rng.shuffle(letters)
    max_prefix = min(q, n - 4)
    r = rng.randint(0, max_prefix)
    prefix_pool = [v for v in letters if v.kind == Kind.SKEW]
    prefix = tuple(rng.sample(prefix_pool, r))
    rest = [v for v in letters if v not in prefix]
    cut = rng.randint(2, len(rest) - 2)
    return prefix, tuple(rest[:cut]), tuple(rest[cut:])


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1(cfg: AcceptanceConfig) -> CriterionResult:
    gens = instantiate_generators()
    ext = closure_generators()
    bad = [g.label for g in list(gens) + list(ext) if not is_star_identity(g.poly, A).is_identity]
    by_family = {}
    for g in gens:
        by_family[g.family] = by_family.get(g.family, 0) + 1
    detail = f"{len(gens)} generators {by_family} and {len(ext)} closure instances vanish on generic A"
    return CriterionResult(1, "generator soundness", not bad, detail, failures=bad)


def criterion_2(cfg: AcceptanceConfig) -> CriterionResult:
    config = EngineConfig(jobs=cfg.jobs)
    total, bad = 0, []
    for n in range(1, 5):
        for sym, skew in signatures(n):
            space = MultilinearSpace.of(sym, skew)
            cons = multilinear_consequences(space, config)
            for vec, prov in zip(cons.vectors, cons.provenance):
                total += 1
                if image_vector(space.poly(vec), A, space, config):
                    bad.append((str(space), prov[:2]))
    return CriterionResult(2, "consequence soundness", not bad,
                           f"{total} consequence vectors over all signatures with n <= 4 vanish on A", failures=bad)


def criterion_3(cfg: AcceptanceConfig) -> CriterionResult:
    config = EngineConfig(jobs=cfg.jobs)
    degrees = (3, 4, 5, 6) if cfg.slow else (3, 4, 5)
    rows, bad = [], []
    for n in degrees:
        for sym, skew in signatures(n):
            rep = verify_main_theorem(MultilinearSpace.of(sym, skew), config)
            rows.append(f"({sym},{skew}):{rep.dim_ideal}")
            if not (rep.equal and rep.contained):
                bad.append(rep.to_dict())
    return CriterionResult(3, "I = Id(A,*) on multilinear spaces", not bad,
                           f"n in {list(degrees)}, dims " + " ".join(rows), failures=bad)


def criterion_4(cfg: AcceptanceConfig) -> CriterionResult:
    from .cli import run
    from .parse import parse_poly

    expr = "[y1,z1][y2,z2][y3,z3]"
    code_ut4, rep_ut4, _ = run(["check", "--algebra", "UT4", expr])
    code_a, rep_a, _ = run(["check", "--algebra", "A", expr])
    problems = []
    if code_ut4 != 1 or rep_ut4.get("is_identity") is not False:
        problems.append("UT4 check did not refute")
    else:
        # replay the printed witness independently of the engine
        p = parse_poly(expr)
        wit = {}
        for name, rows in rep_ut4["witness"].items():
            v = y(int(name[1:])) if name[0] == "y" else z(int(name[1:]))
            if any(Fraction(x).denominator != 1 for row in rows for x in row):
                problems.append(f"{name} is not an integer matrix")
            wit[v] = UTMat(UT4, {(i + 1, j + 1): Fraction(rows[i][j]) for i in range(4) for j in range(i, 4)})
        val = evaluate(p, wit, UT4)  # checks parities of the witness
        i, j = rep_ut4["entry"]
        if val[(i, j)].constant() != Fraction(rep_ut4["value"]) or val.is_zero():
            problems.append("witness does not reproduce the reported value")
    if code_a != 0 or rep_a.get("is_identity") is not True:
        problems.append("not an identity of A")
    detail = f"UT4 exit {code_ut4} value {rep_ut4.get('value')} at {rep_ut4.get('entry')}; A exit {code_a}"
    return CriterionResult(4, "non-identity witness on UT4", not problems, detail, failures=problems)


def criterion_5(cfg: AcceptanceConfig) -> CriterionResult:
    rows, bad = [], []
    cases = [("omega_y", tuple(y(i) for i in range(1, n + 1))) for n in (4, 5)]
    cases += [("omega_z", (z(1),) + tuple(y(i) for i in range(1, n))) for n in (4, 5)]
    for name, V in cases:
        polys = enumerate_omega_y(V) if name == "omega_y" else enumerate_omega_z(V)
        r = independence_rank(polys, A, MultilinearSpace(V))
        rows.append(f"{name}|V|={len(V)}: {r}/{len(polys)}")
        if r != len(polys):
            bad.append(rows[-1])
    expected = {commutator(y(4), y(3)) * commutator(y(2), y(1)), commutator(y(4), y(2)) * commutator(y(3), y(1))}
    if set(enumerate_omega_y(tuple(y(i) for i in range(1, 5)))) != expected:
        bad.append("omega_y on four variables is not {[y4,y3][y2,y1], [y4,y2][y3,y1]}")
    return CriterionResult(5, "independence of Omega_y and Omega_z modulo Id(A,*)", not bad, "; ".join(rows), failures=bad)


def _ut2_generic(tag):
    return generic_element(UT2, "any", tag)


def criterion_6(cfg: AcceptanceConfig) -> CriterionResult:
    bad, count = [], 0
    Y = special_element("Ycorner")
    W = special_element("Wdiag")
    for n in (3, 4, 5):
        As = {i: _ut2_generic(f"a{i}") for i in range(1, n + 1)}
        Ys = {i: block_matrix(As[i], None, mat_star(As[i])) for i in range(1, n + 1)}
        mid = [Ys[i] for i in range(3, n + 1)]
        last = commutator_mat(Ys[2], Ys[1])
        inner = commutator_mat(As[2], As[1], *[As[i] for i in range(3, n + 1)])
        count += 1
        if commutator_mat(Y, *mid) * last != block_matrix(None, -inner, None):
            bad.append(f"corner-Y lemma item 1 at n={n}")
        if n >= 4:
            count += 2
            if not (commutator_mat(*mid, Y) * last).is_zero():
                bad.append(f"corner-Y lemma item 2 at n={n}")
            if commutator_mat(*mid, W) * last != commutator_mat(*mid) * last:
                bad.append(f"W lemma at n={n}")
    # corner-form absorption

    def corner_form(t):
        a = ScalarPoly.var(Indeterminate(t, 1))
        b = ScalarPoly.var(Indeterminate(t, 2))
        return block_matrix(UTMat(UT2, {(1, 2): a}), _ut2_generic(t + "c"), UTMat(UT2, {(1, 2): b}))

    q1, q2 = corner_form("q"), corner_form("p")
    Ysym = generic_element(A, "sym", "s")
    alpha = blocks(Ysym)[0][(2, 2)]
    prod = q1 * q2
    count += 1
    if q1 * Ysym * q2 != UTMat(A, {pos: v * alpha for pos, v in prod.entries.items()}):
        bad.append("corner-form absorption")
    return CriterionResult(6, "matrix fixture lemmas", not bad, f"{count} symbolic identities on generic entries", failures=bad)


def _rank_of(polys, space):
    e = Echelon(space.dimension)
    e.extend(space.coordinates(p) for p in polys)
    return e.rank


def criterion_7(cfg: AcceptanceConfig) -> CriterionResult:
    """Proper part: the B-basis list is independent modulo Id(B,*) and, with
    the proper identities, spans the proper multilinear polynomials.  Full
    space: sorted symmetric prefixes times B-basis elements complete the
    kernel of B to all of P_V."""
    rows, bad = [], []
    for n in range(1, 5):
        for sym, skew in signatures(n):
            space = MultilinearSpace.of(sym, skew)
            kernel = identity_kernel(B, space)
            ke = Echelon(space.dimension)
            ke.extend({i: v for i, v in enumerate(vec) if v} for vec in kernel)
            proper = proper_span(space)
            # kernel intersected with the proper part
            proper_kernel = proper.rank + ke.rank - _union_rank(proper, ke)
            basis = enumerate_B_basis(space)
            r = independence_rank(basis, B, space) if basis else 0
            if r != len(basis) or len(basis) != proper.rank - proper_kernel:
                bad.append(f"proper part at {space}: rank {r}, list {len(basis)}, quotient {proper.rank - proper_kernel}")
            if not all(is_y_proper(p) for p in basis):
                bad.append(f"non-proper element in the B-basis at {space}")
            full = enumerate_B_quotient_basis(space)
            rf = independence_rank(full, B, space)
            e = ke.copy()
            e.extend(space.coordinates(p) for p in full)
            if rf != len(full) or e.rank != space.dimension:
                bad.append(f"P_V at {space}: rank {rf}/{len(full)}, span {e.rank}/{space.dimension}")
            rows.append(f"({sym},{skew}):{len(basis)}+{len(full)}")
    return CriterionResult(7, "B-basis shadow", not bad, "proper+full counts " + " ".join(rows), failures=bad)


def _union_rank(e1: Echelon, e2: Echelon) -> int:
    e = e1.copy()
    e.extend(e2.basis())
    return e.rank


def criterion_8(cfg: AcceptanceConfig) -> CriterionResult:
    rng = random.Random(cfg.seed)
    bad = []
    for k in range(cfg.round_trips):
        letters = random_word(rng, 6)
        while len(letters) < 2:
            letters = random_word(rng, 6)
        dec = order_commutator(letters)
        if dec.expand() != commutator(*letters):
            bad.append(f"order_commutator {letters}")
        if not all(is_ordered(lt) for lt in dec.ordered):
            bad.append(f"unordered output for {letters}")
        p = random_ncpoly(rng)
        terms = proper_decompose(p)
        back = NCPoly.zero()
        for t in terms:
            back = back + NCPoly.word(t.prefix) * t.proper
            if not is_y_proper(t.proper) or list(t.prefix) != sorted(t.prefix):
                bad.append(f"proper_decompose shape for {p}")
        if back != p:
            bad.append(f"proper_decompose {p}")
    for k in range(cfg.canonical_samples):
        prefix, first, second = random_shape_input(rng)
        p = NCPoly.word(prefix) * commutator(*first) * commutator(*second)
        space = MultilinearSpace(prefix + first + second)
        form = two_commutator_canonical((prefix, first, second), space)
        if not ideal_contains(space, p - form.poly):
            bad.append(f"canonical form of {prefix}{first}{second} differs by a non-element of I")
        for c, s in form.terms:
            if s.violations():
                bad.append(f"{s}: {s.violations()}")
    detail = f"{cfg.round_trips} order/proper round trips, {cfg.canonical_samples} canonical forms"
    return CriterionResult(8, "rewriting round trips", not bad, detail, failures=bad)


def criterion_9(cfg: AcceptanceConfig) -> CriterionResult:
    rng = random.Random(cfg.seed + 1)
    bad = []
    jobs_checks = 4
    per = (cfg.law_checks - jobs_checks) // 4
    counts = {}

    def check(name: str, ok: bool, info=""):
        counts[name] = counts.get(name, 0) + 1
        if not ok:
            bad.append(f"{name} {info}")

    letters = LETTERS
    for _ in range(per):
        p, q = random_ncpoly(rng, 4), random_ncpoly(rng, 4)
        check("involution", involute(p * q) == involute(q) * involute(p)
              and involute(involute(p)) == p and involute(p + q) == involute(p) + involute(q), str(p))
    for _ in range(per):
        p, q = random_ncpoly(rng, 3, 3), random_ncpoly(rng, 3, 3)
        asg = {v: random_parity_matrix(rng, v) for v in letters}
        ep, eq = evaluate(p, asg, A, check=False), evaluate(q, asg, A, check=False)
        check("homomorphism", evaluate(p * q, asg, A, check=False) == ep * eq
              and evaluate(p + q, asg, A, check=False) == ep + eq, str(p))
    for _ in range(per):
        p = random_ncpoly(rng, 4)
        asg = {v: random_parity_matrix(rng, v) for v in letters}
        check("star", evaluate(involute(p), asg, A, check=False) == mat_star(evaluate(p, asg, A, check=False)), str(p))
    for _ in range(cfg.law_checks - jobs_checks - 3 * per):
        a, b, c = (random_ncpoly(rng, 2, 2) for _ in range(3))
        check("jacobi", not (commutator(a, b, c) + commutator(b, c, a) + commutator(c, a, b)))
    for sym, skew in [(3, 0), (2, 1), (2, 2), (1, 3)][:jobs_checks]:
        space = MultilinearSpace.of(sym, skew)
        serial = identity_kernel(A, space, EngineConfig(jobs=1))
        parallel = identity_kernel(A, space, EngineConfig(jobs=2))
        c1 = multilinear_consequences(space, EngineConfig(jobs=1))
        c2 = multilinear_consequences(space, EngineConfig(jobs=2))
        check("jobs", serial == parallel and c1.vectors == c2.vectors, str(space))
    detail = f"{sum(counts.values())} checks " + ", ".join(f"{k} {v}" for k, v in counts.items())
    return CriterionResult(9, "algebra laws", not bad, detail, failures=bad)


CRITERIA: dict[int, Callable[[AcceptanceConfig], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_criterion(number: int, cfg: AcceptanceConfig = AcceptanceConfig()) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number](cfg)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(cfg: AcceptanceConfig = AcceptanceConfig()) -> list[CriterionResult]:
    return [run_criterion(k, cfg) for k in sorted(CRITERIA)]
