import random

import pytest
from hypothesis import given, strategies as st

from starpi.acceptance import random_shape_input
from starpi.exact import Echelon
from starpi.free import ArityError, Kind, NCPoly, commutator, y, z
from starpi.identities import MultilinearSpace, identity_kernel, independence_rank
from starpi.matrices import A, B
from starpi.normal_form import (
    CanonicalShape,
    ShapeError,
    canonical_shapes,
    enumerate_B_basis,
    enumerate_B_quotient_basis,
    enumerate_omega_y,
    enumerate_omega_z,
    is_ordered,
    is_y_proper,
    order_commutator,
    proper_decompose,
    two_commutator_canonical,
)
from starpi.parse import parse_poly
from starpi.tideal import ideal_contains

from conftest import letters, ncpolys

L = NCPoly.letter


def test_order_commutator_examples():
    d = order_commutator((y(2), y(1)))
    assert d.ordered == {(y(2), y(1)): 1} and not d.residue
    d = order_commutator((y(1), y(2)))
    assert d.ordered == {(y(2), y(1)): -1}
    d = order_commutator((y(1), y(3), y(2)))
    assert not d.two_commutator_part
    assert d.expand() == commutator(y(1), y(3), y(2))
    with pytest.raises(ArityError):
        order_commutator((y(1),))


@given(st.lists(letters, min_size=2, max_size=6))
def test_order_commutator_round_trip(seq):
    d = order_commutator(seq)
    assert d.expand() == commutator(*seq)
    assert all(is_ordered(lt) for lt in d.ordered)
    for c, u, v in d.residue:
        assert u.degree() >= 2 and v.degree() >= 2


def test_proper_decompose_examples():
    terms = {t.prefix: t.proper for t in proper_decompose(parse_poly("y2 y1"))}
    assert terms == {(y(1), y(2)): NCPoly.unit(), (): -commutator(y(1), y(2))}
    c = parse_poly("[y1,y2][z1,y3]")
    assert [(t.prefix, t.proper) for t in proper_decompose(c)] == [((), c)]
    terms = proper_decompose(parse_poly("z1 y1"))
    assert sum((NCPoly.word(t.prefix) * t.proper for t in terms), NCPoly.zero()) == parse_poly("z1 y1")


@given(ncpolys)
def test_proper_decompose_round_trip(p):
    back = NCPoly.zero()
    for t in proper_decompose(p):
        assert list(t.prefix) == sorted(t.prefix)
        assert all(v.kind == Kind.SYM for v in t.prefix)
        assert is_y_proper(t.proper)
        back = back + NCPoly.word(t.prefix) * t.proper
    assert back == p


def test_is_y_proper():
    assert is_y_proper(parse_poly("z1 [y1,y2]"))
    assert not is_y_proper(parse_poly("y1 z1"))


def test_canonical_examples():
    form = two_commutator_canonical(parse_poly("[y4,y3][y2,y1]"))
    assert [(c, str(s)) for c, s in form.terms] == [(1, "[y4,y3][y2,y1]")]
    p = parse_poly("[y2,y1][y4,y3]")
    form = two_commutator_canonical(p)
    assert ideal_contains(MultilinearSpace.of(4, 0), p - form.poly)
    p = parse_poly("z1 [y2,y1][y3,z2]")
    space = MultilinearSpace.of(3, 2)
    form = two_commutator_canonical(p, space)
    assert ideal_contains(space, p - form.poly)
    assert all(not s.violations() for _, s in form.terms)


def test_canonical_rejects_wrong_shapes():
    with pytest.raises(ShapeError):
        two_commutator_canonical(parse_poly("y1 y2 y3 y4"))
    with pytest.raises(ShapeError):
        two_commutator_canonical(((y(1),), (y(2), y(3)), (y(4), y(5))))
    with pytest.raises(ShapeError):
        two_commutator_canonical(((), (y(2),), (y(4), y(3))))


def test_shape_violations():
    assert not CanonicalShape((), (y(4), y(3)), (y(2), y(1))).violations()
    assert "k1 <= j1 fails" in CanonicalShape((), (y(3), y(2)), (y(4), y(1))).violations()
    assert CanonicalShape((y(3), y(2)), (y(6), y(4)), (y(5), y(1))).violations() == ["prefix not increasing"]


def test_random_canonical_forms():
    rng = random.Random(7)
    for _ in range(25):
        prefix, first, second = random_shape_input(rng)
        space = MultilinearSpace(prefix + first + second)
        p = NCPoly.word(prefix) * commutator(*first) * commutator(*second)
        form = two_commutator_canonical((prefix, first, second), space)
        assert ideal_contains(space, p - form.poly)
        for _, s in form.terms:
            assert not s.violations()


@pytest.mark.parametrize("sym,skew", [(3, 1), (2, 2), (1, 3), (4, 1), (3, 2)])
def test_canonical_shapes_independent_with_a_skew_variable(sym, skew):
    space = MultilinearSpace.of(sym, skew)
    shapes = canonical_shapes(space)
    assert independence_rank([s.poly() for s in shapes], A, space) == len(shapes)
    assert len(shapes) == len(enumerate_omega_z(space, degenerate=False))


def test_omega_y():
    V = [y(i) for i in range(1, 5)]
    assert set(enumerate_omega_y(V)) == {parse_poly("[y4,y3][y2,y1]"), parse_poly("[y4,y2][y3,y1]")}
    five = enumerate_omega_y([y(i) for i in range(1, 6)])
    assert independence_rank(five, A) == len(five) == 5
    for p in five:
        assert all(w[-1] == y(1) or w[-2] == y(1) for w in p.terms)
    with pytest.raises(ShapeError):
        enumerate_omega_y([y(1), y(2), y(3)])


def test_omega_z_small():
    V = [z(1), y(1), y(2)]
    assert set(enumerate_omega_z(V)) == {parse_poly("y1 [y2,z1]"), parse_poly("y2 [y1,z1]")}
    assert enumerate_omega_z([z(1), z(2)]) == [parse_poly("[z2,z1]")]
    assert enumerate_omega_z([z(1), z(2)], degenerate=False) == []
    with pytest.raises(ShapeError):
        enumerate_omega_z([y(1), y(2)])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_omega_z_independent(n):
    V = MultilinearSpace.of(n - 1, 1)
    for degenerate in (True, False):
        polys = enumerate_omega_z(V, degenerate)
        assert independence_rank(polys, A, V) == len(polys)


def test_b_basis_examples():
    assert enumerate_B_basis([y(1), y(2)]) == [parse_poly("[y2,y1]")]
    # z1 y1 is not proper; its class is reached through the prefix basis
    assert enumerate_B_basis([z(1), y(1)]) == [parse_poly("[y1,z1]")]
    assert set(enumerate_B_quotient_basis([z(1), y(1)])) == {parse_poly("[y1,z1]"), parse_poly("y1 z1")}
    three = enumerate_B_basis([y(1), y(2), y(3)])
    assert independence_rank(three, B) == len(three)


@pytest.mark.parametrize("sym,skew", [(2, 0), (1, 1), (3, 0), (2, 1), (4, 0), (2, 2), (0, 4)])
def test_b_quotient_basis_completes_kernel(sym, skew):
    space = MultilinearSpace.of(sym, skew)
    full = enumerate_B_quotient_basis(space)
    assert independence_rank(full, B, space) == len(full)
    e = Echelon(space.dimension)
    e.extend({i: v for i, v in enumerate(vec) if v} for vec in identity_kernel(B, space))
    e.extend(space.coordinates(p) for p in full)
    assert e.rank == space.dimension
