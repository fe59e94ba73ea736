from fractions import Fraction

import pytest

from starpi.exact import Echelon
from starpi.free import NCPoly, z
from starpi.identities import (
    BoundExceeded,
    EngineConfig,
    MultilinearSpace,
    NotMultilinear,
    identity_kernel,
    independence_rank,
    is_star_identity,
    kernel_dimension,
    spiral,
)
from starpi.matrices import A, B, UT2, UT4, evaluate, generic_assignment
from starpi.parse import parse_poly

L = NCPoly.letter


def test_spiral_order():
    it = spiral()
    assert [next(it) for _ in range(7)] == [0, 1, -1, 2, -2, 3, -3]


def test_identity_examples():
    assert is_star_identity(parse_poly("[y1,y2][y3,y4][y5,y6]"), A).is_identity
    v = is_star_identity(parse_poly("[y1,z1][y2,z2][y3,z3]"), UT4)
    assert not v.is_identity and v.witness is not None
    assert not is_star_identity(L(z(1)), A).is_identity


@pytest.mark.parametrize("expr,spec", [
    ("[y1,z1][y2,z2][y3,z3]", UT4),
    ("z1", A),
    ("y1 y2 y3 y4", A),
    ("[y1,z1] z2", B),
    ("[z1,y1]", UT2),
    ("z1 z2 - z2 z1", A),
])
def test_witness_soundness(expr, spec):
    p = parse_poly(expr)
    v = is_star_identity(p, spec)
    assert not v.is_identity
    for m in v.witness.values():
        assert all(Fraction(x).denominator == 1 for row in m.to_rows() for x in row)
    val = evaluate(p, v.witness, spec)  # parity checked here
    assert val[v.entry].constant() == v.value != 0


def test_ut2_symmetric_elements_commute():
    # symmetric elements of UT2 are a I + b e12
    assert is_star_identity(parse_poly("[y1,y2]"), UT2).is_identity
    assert is_star_identity(parse_poly("[y1,y2][y3,y4]"), B).is_identity


def test_small_kernels():
    assert identity_kernel(A, MultilinearSpace.of(2, 0)) == []
    assert kernel_dimension(A, MultilinearSpace.of(0, 2)) == 0


def test_kernel_vectors_are_identities():
    space = MultilinearSpace.of(3, 1)
    for vec in identity_kernel(A, space):
        assert is_star_identity(space.poly(vec), A).is_identity


def _brute_kernel_dim(spec, space):
    # evaluate each word independently and row-reduce the coefficient table
    gens = generic_assignment(space.variables, spec, prefix="b")
    rows = {}
    for j, w in enumerate(space.words):
        val = evaluate(NCPoly.word(w), gens, spec)
        for pos, poly in val.entries.items():
            for mono, c in poly.terms.items():
                rows.setdefault((pos, mono), {})[j] = c
    e = Echelon(space.dimension)
    e.extend(rows.values())
    return space.dimension - e.rank


@pytest.mark.parametrize("spec", [A, B, UT4], ids=lambda s: s.name)
@pytest.mark.parametrize("sym,skew", [(2, 0), (3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (2, 2)])
def test_kernel_dimension_matches_word_by_word_evaluation(spec, sym, skew):
    space = MultilinearSpace.of(sym, skew)
    assert kernel_dimension(spec, space) == _brute_kernel_dim(spec, space)


@pytest.mark.parametrize("sym,skew", [(3, 0), (2, 1), (3, 1), (2, 2), (1, 3)])
def test_ut4_kernel_inside_A_kernel(sym, skew):
    space = MultilinearSpace.of(sym, skew)
    ka = Echelon(space.dimension)
    ka.extend({i: v for i, v in enumerate(vec) if v} for vec in identity_kernel(A, space))
    for vec in identity_kernel(UT4, space):
        assert ka.contains({i: v for i, v in enumerate(vec) if v})


def test_kernel_independent_of_tag_names():
    space = MultilinearSpace.of(2, 1)
    gens = generic_assignment(space.variables, A, prefix="other")
    e = Echelon(space.dimension)
    rows = {}
    for j, w in enumerate(space.words):
        for pos, poly in evaluate(NCPoly.word(w), gens, A).entries.items():
            for mono, c in poly.terms.items():
                rows.setdefault((pos, mono), {})[j] = c
    e.extend(rows.values())
    assert space.dimension - e.rank == kernel_dimension(A, space)
    ref = Echelon(space.dimension)
    ref.extend({i: v for i, v in enumerate(vec) if v} for vec in identity_kernel(A, space))
    assert all(ref.contains(v) for v in e.kernel())


def test_b_kernel_codimension_at_four_symmetric():
    space = MultilinearSpace.of(4, 0)
    assert kernel_dimension(B, space) == 6


def test_independence_rank_examples():
    p = parse_poly("[y4,y3][y2,y1]")
    q = parse_poly("[y4,y2][y3,y1]")
    assert independence_rank([p, q], A) == 2
    assert independence_rank([p, p * 2], A) == 1
    assert independence_rank([], A) == 0
    with pytest.raises(NotMultilinear):
        independence_rank([parse_poly("y1 y1")], A, MultilinearSpace.of(2, 0))


def test_bound_exceeded_names_flag():
    with pytest.raises(BoundExceeded, match="--max-degree"):
        identity_kernel(A, MultilinearSpace.of(3, 0), EngineConfig(max_degree=2))


def test_jobs_do_not_change_kernel():
    space = MultilinearSpace.of(2, 2)
    assert identity_kernel(A, space, EngineConfig(jobs=1)) == identity_kernel(A, space, EngineConfig(jobs=3))
