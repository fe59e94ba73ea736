import itertools

import pytest
from hypothesis import given

from starpi.free import (
    ArityError,
    EmptyPolynomialError,
    HomogeneityError,
    NCPoly,
    ParityError,
    commutator,
    commutator_symmetry_sign,
    involute,
    is_multilinear,
    multidegree,
    nc_arith,
    substitute,
    y,
    z,
)

from conftest import LETTERS, ncpolys

L = NCPoly.letter
Y1, Y2, Y3, Y4 = (L(y(i)) for i in range(1, 5))
Z1, Z2 = L(z(1)), L(z(2))


def test_variable_order_puts_skew_first():
    assert sorted([y(1), z(2), y(2), z(1)]) == [z(1), z(2), y(1), y(2)]


def test_products():
    assert nc_arith(Y1, Z1, "mul") == NCPoly.word((y(1), z(1)))
    assert (Y1 + Z1) * (Y1 - Z1) == Y1 * Y1 - Y1 * Z1 + Z1 * Y1 - Z1 * Z1
    assert Y1 * NCPoly.unit() == Y1


def test_involution_examples():
    assert involute(Y1 * Y2) == Y2 * Y1
    assert involute(Y1 * Z1) == -(Z1 * Y1)
    assert involute(Z1 * Z2) == Z2 * Z1


def test_commutator_examples():
    assert commutator(Y1, Y2) == Y1 * Y2 - Y2 * Y1
    assert not commutator(Y1 + Z1, Y1 + Z1)
    assert not (commutator(Y3, Y2, Y1) + commutator(Y2, Y1, Y3) + commutator(Y1, Y3, Y2))
    assert commutator(y(1), y(2), y(3)) == commutator(commutator(Y1, Y2), Y3)
    with pytest.raises(ArityError):
        commutator(Y1)


def test_symmetry_sign_examples():
    assert commutator_symmetry_sign([y(1), y(2)]) == -1
    assert commutator_symmetry_sign([z(1), z(2)]) == -1
    assert commutator_symmetry_sign([y(1), z(1)]) == 1


def test_symmetry_sign_exhaustive():
    alphabet = [z(1), z(2), y(1), y(2)]
    for n in range(2, 7):
        for letters in itertools.product(alphabet, repeat=n):
            c = commutator(*letters)
            s = commutator_symmetry_sign(letters)
            assert involute(c) == c * s


def test_multidegree():
    assert multidegree(Y1 * Y2 - Y2 * Y1) == {y(1): 1, y(2): 1}
    assert multidegree(Z1 * Y1 * Z1) == {z(1): 2, y(1): 1}
    with pytest.raises(HomogeneityError):
        multidegree(Y1 * Y1 + Y1 * Y2)
    with pytest.raises(EmptyPolynomialError):
        multidegree(NCPoly.zero())


def test_is_multilinear():
    vs = {y(1), y(2), y(3), y(4)}
    assert is_multilinear(commutator(Y1, Y2) * commutator(Y3, Y4), vs)
    assert not is_multilinear(Y1 * Y1 * Y2, {y(1), y(2)})
    assert is_multilinear(NCPoly.zero(), vs)


def test_substitute_examples():
    p = commutator(Y1, Y2)
    w = Y3 * Y4 + Y4 * Y3
    assert substitute(p, {y(1): w}) == w * Y2 - Y2 * w
    with pytest.raises(ParityError):
        substitute(p, {y(1): Z1})


@given(ncpolys, ncpolys)
def test_involution_is_antiautomorphism(p, q):
    assert involute(involute(p)) == p
    assert involute(p * q) == involute(q) * involute(p)
    assert involute(p + q) == involute(p) + involute(q)


@given(ncpolys, ncpolys, ncpolys)
def test_commutator_bilinear_and_jacobi(a, b, c):
    assert commutator(a + b, c) == commutator(a, c) + commutator(b, c)
    assert commutator(a, b) == -commutator(b, a)
    assert not (commutator(a, b, c) + commutator(b, c, a) + commutator(c, a, b))


SYM_IMAGES = [Y3 * Y4 + Y4 * Y3, Z1 * Z2 + Z2 * Z1, Y1, NCPoly.unit(2)]
SKEW_IMAGES = [commutator(Y3, Y4), Z2, Y1 * Z1 + Z1 * Y1]


@given(ncpolys)
def test_substitute_commutes_with_involution(p):
    asg = {y(1): SYM_IMAGES[0], y(2): SYM_IMAGES[1], z(1): SKEW_IMAGES[0], z(2): SKEW_IMAGES[2]}
    assert substitute(involute(p), asg) == involute(substitute(p, asg))


@given(ncpolys)
def test_substitute_composition(p):
    first = {y(1): Y2 * Y3 + Y3 * Y2, z(1): commutator(Y2, Y3)}
    second = {y(2): Z1 * Z2 + Z2 * Z1, y(3): Y1}
    composed = {v: substitute(q, second) for v, q in first.items()}
    for v, q in second.items():
        composed.setdefault(v, q)
    assert substitute(substitute(p, first), second) == substitute(p, composed)


def test_letters_fixture_is_sorted():
    assert LETTERS == sorted(LETTERS)
