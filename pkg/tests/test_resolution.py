from __future__ import annotations

import pytest
from hypothesis import given, settings

from dgsmooth.errors import NonHomogeneousError
from dgsmooth.exact import rank
from dgsmooth.graded import DegreeWindow, GradedModulePresentation, cyclic_module, free_module, residue_field
from dgsmooth.resolution import (
    TRUNCATED,
    Status,
    derived_fiber,
    minimal_resolution,
    projective_dimension,
    totalize,
)
from oracles import koszul_fiber
from strategies import QX, QXY, modules

W = DegreeWindow(-2, 12)


def test_residue_field_over_one_variable():
    k = residue_field(QX)
    res = minimal_resolution(QX, k, max_length=2, window=W)
    assert res.status is Status.COMPLETE and res.pd == 1
    assert res.columns == [(0,), (2,)]
    assert res.map_entries(1) == [[QX.parse("x")]]


def test_free_module_resolves_in_length_zero():
    res = minimal_resolution(QX, free_module(QX, [0]))
    assert res.pd == 0 and res.columns == [(0,)]


def test_principal_ideal_in_two_variables():
    M = cyclic_module(QXY, [QXY.parse("x - y")])
    res = minimal_resolution(QXY, M)
    assert res.pd == 1 and res.columns == [(0,), (2,)]
    (entry,), = res.map_entries(1)
    assert entry in (QXY.parse("x - y"), QXY.parse("y - x"))


def test_projective_dimension_examples():
    assert projective_dimension(QX, free_module(QX, [0])) == 0
    assert projective_dimension(QX, residue_field(QX)) == 1
    assert projective_dimension(QXY, residue_field(QXY)) == 2


def test_derived_fiber_examples():
    assert derived_fiber(QX, free_module(QX, [0]), W).dims.as_dict() == {0: 1}
    assert derived_fiber(QX, residue_field(QX), W).dims.as_dict() == {0: 1, 1: 1}
    f = derived_fiber(QX, cyclic_module(QX, [QX.parse("x^2")]), W)
    assert f.dims.as_dict() == {0: 1, 3: 1} and f.status == "EXACT"


def test_total_complex_of_residue_field_resolution():
    res = minimal_resolution(QX, residue_field(QX), window=W)
    tot = totalize(res)
    # P_0 = K in degrees 0,2,4 and P_{-1} = [-2]K in total degrees 1,3,...
    assert [tot.dim(n) for n in range(0, 5)] == [1, 1, 1, 1, 1]
    assert rank(tot.differential(1)) == 1 and rank(tot.differential(0)) == 0
    assert tot.cohomology(DegreeWindow(0, 4)).as_dict() == {0: 1}


def test_total_complex_of_empty_module():
    empty = GradedModulePresentation(QX, [])
    tot = totalize(minimal_resolution(QX, empty, window=W))
    assert all(tot.dim(n) == 0 for n in W)
    assert tot.is_quasi_isomorphic_in(W)


def test_free_total_complex_has_zero_differential():
    tot = totalize(minimal_resolution(QX, free_module(QX, [0]), window=W))
    assert all(tot.differential(n).is_zero() for n in range(-2, 8))


def test_nonregular_ring_is_truncated():
    R = QX.with_ideal([QX.parse("x^2")])
    k = residue_field(R)
    res = minimal_resolution(R, k, max_length=4, window=DegreeWindow(-2, 8))
    assert res.status is Status.TRUNCATED
    assert projective_dimension(R, k, max_length=4) is TRUNCATED
    assert derived_fiber(R, k, DegreeWindow(-2, 8), max_length=4).status == "LOWER_BOUND_ONLY"
    # every stage of k over Q[x]/(x^2) has a single generator, one degree-2 step apart
    assert res.columns[:5] == [(0,), (2,), (4,), (6,), (8,)]


def test_nonhomogeneous_input_rejected():
    with pytest.raises(NonHomogeneousError):
        minimal_resolution(QX, GradedModulePresentation(QX, [("e", 0)], [[QX.parse("1 + x")]]))


def test_minimal_generators_drop_redundant_ones():
    # e1 = x e0 makes e1 redundant
    M = GradedModulePresentation(QX, [("e0", 0), ("e1", 2)], [[QX.parse("x"), QX.parse("-1")]])
    res = minimal_resolution(QX, M)
    assert res.columns == [(0,)] and res.pd == 0


@settings(max_examples=80)
@given(modules())
def test_resolution_invariants(M):
    s = M.ring.nvars
    res = minimal_resolution(M.ring, M, max_length=s + 1, window=W)
    assert res.status is Status.COMPLETE and res.pd <= s
    assert res.is_minimal()
    assert totalize(res).is_quasi_isomorphic_in(W)


@settings(max_examples=80)
@given(modules())
def test_derived_fiber_matches_koszul_oracle(M):
    assert derived_fiber(M.ring, M, W).dims.as_dict() == koszul_fiber(M, W)


@given(modules(rings=(QXY,), max_rels=0))
def test_fiber_of_free_module_sits_in_generator_degrees(M):
    expected = {}
    for d in M.degrees:
        expected[d] = expected.get(d, 0) + 1
    assert derived_fiber(M.ring, M, W).dims.as_dict() == expected


@settings(max_examples=40)
@given(modules())
def test_consecutive_maps_compose_to_zero(M):
    res = minimal_resolution(M.ring, M, window=W)
    for i in range(1, res.length):
        for e in range(0, 13):
            prod = res.degree_matrix(i, e) @ res.degree_matrix(i + 1, e)
            assert prod.is_zero()
