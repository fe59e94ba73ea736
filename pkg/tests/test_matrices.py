import itertools

import pytest

from starpi.exact import ScalarPoly
from starpi.free import NCPoly, ParityError, commutator, involute, y, z
from starpi.identities import EngineConfig, MultilinearSpace, kernel_dimension
from starpi.matrices import (
    A,
    B,
    SPECS,
    UT2,
    UT4,
    AlgebraSpec,
    SpecMismatch,
    UnassignedVariable,
    UTMat,
    blocks,
    commutator_mat,
    evaluate,
    generic_assignment,
    generic_element,
    half_trace,
    mat_arith,
    mat_star,
    special_element,
)


def e(spec, i, j):
    return UTMat.unit(spec, i, j)


def test_spec_supports():
    assert (2, 3) not in A.support and len(A.support) == 9
    assert B.support == {(1, 1), (1, 2), (2, 2), (3, 3), (3, 4), (4, 4)}
    assert set(SPECS) == {"UT2", "UT4", "A", "B"}
    with pytest.raises(ValueError):
        AlgebraSpec("bad", 4, frozenset({(1, 1), (1, 2)}))  # not reflection stable


@pytest.mark.parametrize("spec", list(SPECS.values()), ids=lambda s: s.name)
def test_support_closed_under_products(spec):
    for (i, j), (k, l) in itertools.product(spec.support, repeat=2):
        if j == k:
            assert (i, l) in spec.support
    if spec is A:
        for p, q in itertools.product(A.support, repeat=2):
            assert (e(A, *p) * e(A, *q))[(2, 3)] == ScalarPoly()


def test_matrix_unit_products():
    assert mat_arith(e(A, 1, 2), e(A, 2, 4), "mul") == e(A, 1, 4)
    assert (e(A, 1, 2) * e(A, 3, 4)).is_zero()
    m = generic_element(A, "any", "m")
    assert m * UTMat.identity(A) == m
    with pytest.raises(SpecMismatch):
        e(A, 1, 1) + e(UT4, 1, 1)


def test_star_examples():
    assert mat_star(e(UT2, 1, 1)) == e(UT2, 2, 2)
    assert mat_star(e(UT2, 1, 2)) == e(UT2, 1, 2)
    assert mat_star(e(UT4, 1, 2)) == e(UT4, 3, 4)


@pytest.mark.parametrize("spec", list(SPECS.values()), ids=lambda s: s.name)
def test_star_is_antiautomorphism_of_order_two(spec):
    a, b = generic_element(spec, "any", "a"), generic_element(spec, "any", "b")
    assert mat_star(mat_star(a)) == a
    assert mat_star(a * b) == mat_star(b) * mat_star(a)
    assert mat_star(a + b) == mat_star(a) + mat_star(b)


@pytest.mark.parametrize("spec", list(SPECS.values()), ids=lambda s: s.name)
@pytest.mark.parametrize("symmetrize", [False, True])
def test_generic_parity(spec, symmetrize):
    s = generic_element(spec, "sym", "s", symmetrize)
    k = generic_element(spec, "skew", "k", symmetrize)
    assert mat_star(s) == s
    assert mat_star(k) == -k


def test_generic_block_shapes_in_A():
    top, corner, bottom = blocks(generic_element(A, "sym", "s"))
    assert bottom == mat_star(top)
    assert mat_star(corner) == corner and corner[(1, 1)] == corner[(2, 2)]
    top, corner, bottom = blocks(generic_element(A, "skew", "k"))
    assert bottom == -mat_star(top)
    assert corner[(1, 2)] == ScalarPoly() and corner[(1, 1)] == -corner[(2, 2)] != ScalarPoly()


def test_special_elements():
    Y = special_element("Ycorner")
    Zd = special_element("Zdiag")
    D = special_element("ZcornerD")
    assert mat_star(Y) == Y
    assert mat_star(Zd) == -Zd
    assert commutator_mat(D, Zd) == D.scale(-2)
    assert special_element("Identity") == UTMat.identity(A)
    with pytest.raises(ValueError):
        special_element("nope")


def test_half_trace():
    assert half_trace(UTMat.identity(UT2)).constant() == 1
    assert half_trace(e(UT2, 1, 2)) == ScalarPoly()
    c = blocks(generic_element(A, "sym", "s"))[1]
    assert half_trace(c) == c[(1, 1)]
    with pytest.raises(SpecMismatch):
        half_trace(UTMat.identity(A))


def test_evaluate_examples():
    gens = generic_assignment([y(i) for i in range(1, 7)], A)
    assert evaluate(NCPoly.unit(), gens, A) == UTMat.identity(A)
    ys = [NCPoly.letter(y(i)) for i in range(1, 7)]
    three = commutator(ys[0], ys[1]) * commutator(ys[2], ys[3]) * commutator(ys[4], ys[5])
    assert evaluate(three, gens).is_zero()
    p = NCPoly.letter(y(1)) * NCPoly.letter(z(1))
    with pytest.raises(UnassignedVariable):
        evaluate(p, gens)
    wrong = dict(gens)
    wrong[y(1)] = generic_element(A, "skew", "w")
    with pytest.raises(ParityError):
        evaluate(ys[0], wrong)


def test_three_commutators_any_parity_vanish_on_A():
    vs = [y(1), z(1), y(2), z(2), z(3), y(3)]
    gens = generic_assignment(vs, A)
    L = [NCPoly.letter(v) for v in vs]
    p = commutator(L[0], L[1]) * commutator(L[2], L[3]) * commutator(L[4], L[5])
    assert evaluate(p, gens).is_zero()
    gens4 = generic_assignment(vs, UT4)
    assert not evaluate(p, gens4).is_zero()


def test_evaluation_respects_involution():
    gens = generic_assignment([y(1), z(1), y(2)], A)
    p = NCPoly.word((y(1), z(1), y(2))) + NCPoly.word((z(1), z(1))) * 3
    assert evaluate(involute(p), gens) == mat_star(evaluate(p, gens))


def test_commutator_skeleton():
    p1, p2 = generic_element(A, "sym", "p"), generic_element(A, "skew", "q")
    top, _, bottom = blocks(commutator_mat(p1, p2))
    for blk in (top, bottom):
        assert blk[(1, 1)] == ScalarPoly() and blk[(2, 2)] == ScalarPoly()


def test_lambda_identity():
    y1, y2 = generic_element(A, "sym", "u"), generic_element(A, "sym", "v")
    a1, c1, _ = blocks(y1)
    a2, c2, _ = blocks(y2)
    corner = blocks(commutator_mat(y2, y1))[1]
    l1, l2 = half_trace(c1), half_trace(c2)

    def times(m, s):
        return UTMat(UT2, {p: v * s for p, v in m.entries.items()})

    assert corner == times(a2 - mat_star(a2), l1) - times(a1 - mat_star(a1), l2)


def _ut2_product(*ms):
    # plain nested-list 2x2 arithmetic as an independent oracle
    def mul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(2)), ScalarPoly()) for j in range(2)] for i in range(2)]

    def sub(a, b):
        return [[a[i][j] - b[i][j] for j in range(2)] for i in range(2)]

    def comm(*xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = sub(mul(acc, x), mul(x, acc))
        return acc

    return comm(*ms)


def _dense(m):
    return [[m[(i, j)] if i <= j else ScalarPoly() for j in (1, 2)] for i in (1, 2)]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_corner_lemma_against_plain_ut2(n):
    from starpi.matrices import block_matrix

    As = {i: generic_element(UT2, "any", f"a{i}") for i in range(1, n + 1)}
    Ys = {i: block_matrix(As[i], None, mat_star(As[i])) for i in range(1, n + 1)}
    lhs = commutator_mat(special_element("Ycorner"), *[Ys[i] for i in range(3, n + 1)]) * commutator_mat(Ys[2], Ys[1])
    oracle = _ut2_product(*[_dense(As[i]) for i in [2, 1] + list(range(3, n + 1))])
    top, corner, bottom = blocks(lhs)
    assert top.is_zero() and bottom.is_zero()
    assert _dense(corner) == [[-x for x in row] for row in oracle]


@pytest.mark.parametrize("sym,skew", [(3, 0), (2, 1), (1, 2), (2, 2)])
def test_symmetrized_generics_give_same_kernel(sym, skew):
    space = MultilinearSpace.of(sym, skew)
    assert kernel_dimension(A, space) == kernel_dimension(A, space, EngineConfig(symmetrize=True))
