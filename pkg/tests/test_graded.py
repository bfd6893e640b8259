from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgsmooth.errors import NonHomogeneousError, ParseError
from dgsmooth.graded import (
    DegreeWindow,
    GradedCommRing,
    GradedDimVector,
    GradedModulePresentation,
    GradedPolyRing,
    KPolynomial,
    cyclic_module,
    degree_slice,
    free_module,
    residue_field,
)

QX = GradedPolyRing([("x", 2)])
QXY = GradedPolyRing([("x", 2), ("y", 2)])
coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def test_degree_slice_examples():
    assert degree_slice(QX, free_module(QX, [0]), 4).dim == 1
    M = cyclic_module(QX, [QX.parse("x")])
    assert degree_slice(QX, M, 0).dim == 1
    assert degree_slice(QX, M, 2).dim == 0
    empty = GradedModulePresentation(QX, [])
    assert all(degree_slice(QX, empty, d).dim == 0 for d in range(-2, 8))


def test_degree_slice_counts_relation_rank():
    M = cyclic_module(QXY, [QXY.parse("x^2 - x*y")])
    s = degree_slice(QXY, M, 4)
    assert s.free_dim == 3 and s.relation_rank == 1 and s.dim == 2
    assert len(s.basis) == 2


def test_poly_ring_dims_are_monomial_counts():
    assert [QXY.dim(d) for d in range(0, 9)] == [1, 0, 2, 0, 3, 0, 4, 0, 5]


def test_base_ring_rejects_odd_degrees():
    with pytest.raises(ValueError):
        GradedPolyRing([("u", 1)])
    with pytest.raises(ValueError):
        GradedPolyRing([("x", 2), ("x", 4)])


def test_nonhomogeneous_relation_rejected():
    with pytest.raises(NonHomogeneousError) as exc:
        GradedModulePresentation(QX, [("a", 0), ("b", 0)], [[QX.parse("x"), QX.parse("x^2")]])
    assert exc.value.code == "NONHOMOGENEOUS_RELATION"
    with pytest.raises(NonHomogeneousError):
        cyclic_module(QXY, [QXY.parse("x + x*y")])


def test_parse_errors():
    with pytest.raises(ParseError):
        QX.parse("x +")
    with pytest.raises(ParseError):
        QX.parse("z")
    with pytest.raises(ParseError):
        QX.parse("x^(1/2)")


def test_parse_rational_coefficients():
    p = QXY.parse("x^2 - 3/2*x*y")
    assert p.terms == {(2, 0): Fraction(1), (1, 1): Fraction(-3, 2)}
    assert QXY.parse(p.format(QXY.names)) == p


def test_degree_window():
    w = DegreeWindow.parse("-2:3")
    assert list(w) == [-2, -1, 0, 1, 2, 3] and 3 in w and 4 not in w
    for bad in ("3:1", "a:b", "5"):
        with pytest.raises(ParseError):
            DegreeWindow.parse(bad)


def test_dim_vector_shift_and_support():
    v = GradedDimVector({0: 1, 2: 0, 3: 2})
    assert v.support() == [0, 3] and v.total() == 3
    assert v.shifted(2).as_dict() == {-2: 1, 1: 2}


def test_residue_field_and_top_degree():
    k = residue_field(QXY)
    assert [k.dim(d) for d in range(-1, 5)] == [0, 1, 0, 0, 0, 0]
    R = QX.with_ideal([QX.parse("x^3")])
    assert R.top_degree() == 4
    assert QX.top_degree() is None


@st.composite
def elements(draw, ring, max_degree=5):
    d = draw(st.integers(0, max_degree))
    n = ring.dim(d)
    return d, tuple(draw(st.lists(coeff, min_size=n, max_size=n)))


SUPER = GradedCommRing([("u", 1), ("v", 3), ("x", 2)], [])
SUPER_Q = GradedCommRing([("u", 1), ("v", 3), ("x", 2)], [KPolynomial(3, {(0, 0, 3): 1}), KPolynomial(3, {(1, 1, 0): 1})])


@pytest.mark.parametrize("ring", [SUPER, SUPER_Q], ids=["free", "quotient"])
@given(data=st.data())
def test_graded_commutativity(ring, data):
    d1, a = data.draw(elements(ring))
    d2, b = data.draw(elements(ring))
    ab = ring.multiply(d1, a, d2, b)
    ba = ring.multiply(d2, b, d1, a)
    sign = -1 if (d1 * d2) % 2 else 1
    assert ab == tuple(sign * c for c in ba)


@pytest.mark.parametrize("ring", [SUPER, SUPER_Q], ids=["free", "quotient"])
@given(data=st.data())
def test_associativity(ring, data):
    d1, a = data.draw(elements(ring, 4))
    d2, b = data.draw(elements(ring, 4))
    d3, c = data.draw(elements(ring, 4))
    left = ring.multiply(d1 + d2, ring.multiply(d1, a, d2, b), d3, c)
    right = ring.multiply(d1, a, d2 + d3, ring.multiply(d2, b, d3, c))
    assert left == right


def test_odd_generators_square_to_zero():
    u = SUPER.variable(0)
    assert not SUPER.mul_poly(u, u)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.integers(-2, 10))
def test_free_module_dims(degrees, d):
    M = free_module(QXY, degrees)
    assert M.dim(d) == sum(QXY.dim(d - g) for g in degrees)
