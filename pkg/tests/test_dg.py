from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgsmooth.dg import (
    Amplitude,
    TriangularPresentation,
    algebra_from_basis,
    amplitude,
    amplitude_obstruction,
    augmentation_module,
    check_quasi_iso_structure,
    cohomology,
    commutative_quotient_algebra,
    connective_truncation,
    diagonal_bimodule,
    free_algebra_over_base,
    full_cohomology,
    opposite,
    over_rationals,
    rational_base,
    regular_module,
    restrict,
    semifree_module,
    shift,
    tensor_over_K,
    truncated_polynomial_algebra,
    zero_module,
)
from dgsmooth.errors import HypothesisViolated, PresentationError, WindowTooSmall
from dgsmooth.graded import DegreeWindow, GradedCommRing, GradedPolyRing, KPolynomial
from algebras import acyclic_pair, base_itself, base_quotient
from filtrations import random_filtration

QX = GradedPolyRing([("x", 2)])


def test_cohomology_of_base_is_base():
    K = free_algebra_over_base(QX)
    assert cohomology(K, DegreeWindow(-2, 8)).dims.as_dict() == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}


def test_cohomology_of_dual_numbers():
    A = truncated_polynomial_algebra(2)
    rep = cohomology(A, DegreeWindow(0, 6))
    assert rep.dims.as_dict() == {0: 1, 2: 1} and rep.complete


def test_acyclic_pair_has_base_cohomology():
    A = acyclic_pair()
    assert cohomology(A, DegreeWindow(-2, 10)).dims.as_dict() == {d: 1 for d in range(0, 11, 2)}
    Q = acyclic_pair({"generators": []})
    assert full_cohomology(Q).dims.as_dict() == {0: 1}


def test_quasi_iso_examples():
    w = DegreeWindow(-2, 10)
    assert check_quasi_iso_structure(QX, base_itself(), w).ok
    assert check_quasi_iso_structure(QX, acyclic_pair(), w).ok
    r = check_quasi_iso_structure(QX, base_quotient(1), w)
    assert (r.ok, r.degree, r.reason) == (False, 2, "not injective")
    r = check_quasi_iso_structure(QX, base_quotient(2), w)
    assert (r.ok, r.degree, r.reason) == (False, 4, "not injective")


def test_quasi_iso_reports_surjectivity_failure():
    # K plus an extra cocycle w in degree 2
    from dgsmooth.io import algebra_from_json

    A = algebra_from_json(
        {"ring": {"generators": [{"name": "x", "degree": 2}]},
         "generators": [{"name": "1", "degree": 0}, {"name": "w", "degree": 2}],
         "relations": [["0", "x"]],
         "product": [{"left": "w", "right": "w", "value": "0"}]}
    )
    r = check_quasi_iso_structure(QX, A, DegreeWindow(-2, 8))
    assert (r.degree, r.reason, r.base_dim, r.cohomology_dim) == (2, "not surjective", 1, 2)


def test_quasi_iso_window_certification():
    with pytest.raises(WindowTooSmall):
        check_quasi_iso_structure(QX, acyclic_pair(), DegreeWindow(0, 3))


def test_connective_truncation_examples():
    A = truncated_polynomial_algebra(3)
    U = connective_truncation(A, DegreeWindow(-2, 8))
    assert U.degrees == A.degrees
    T = algebra_from_basis([("1", 0), ("a", -1), ("b", 0)], {}, {1: {2: 1}})
    U = connective_truncation(T, DegreeWindow(-4, 4))
    assert min(U.degrees) >= 0 and U.dim(0) == 1
    assert full_cohomology(U).dims.as_dict() == full_cohomology(T).dims.as_dict() == {0: 1}
    with pytest.raises(HypothesisViolated) as exc:
        connective_truncation(algebra_from_basis([("1", 0), ("b", 0)], {}), DegreeWindow(-2, 2))
    assert exc.value.degree == 0


def test_connective_truncation_keeps_degree_one_cohomology():
    # a in degree 0 killed by d(a) = b in degree 1; c a cocycle in degree 1
    T = algebra_from_basis([("1", 0), ("a", 0), ("b", 1), ("c", 1)], {}, {1: {2: 1}})
    U = connective_truncation(T, DegreeWindow(-2, 4))
    assert U.dim(0) == 1 and min(U.degrees) >= 0
    assert full_cohomology(U).dims.as_dict() == full_cohomology(T).dims.as_dict() == {0: 1, 1: 1}


def test_amplitude_examples():
    w = DegreeWindow(0, 4)
    assert amplitude(cohomology(truncated_polynomial_algebra(1), w)) == 0
    assert amplitude(cohomology(truncated_polynomial_algebra(2), w)) == 2
    assert amplitude(cohomology(zero_module(truncated_polynomial_algebra(2)), w)) is Amplitude.ZERO_MODULE


@given(st.integers(-5, 5), st.sampled_from([2, 3]))
def test_amplitude_shift_invariant(n, power):
    M = regular_module(truncated_polynomial_algebra(power))
    assert amplitude(full_cohomology(shift(M, n))) == amplitude(full_cohomology(M))
    assert full_cohomology(shift(M, n)).dims.as_dict() == full_cohomology(M).dims.shifted(n).as_dict()


def test_amplitude_obstruction_examples():
    A = truncated_polynomial_algebra(2)
    assert amplitude_obstruction(A, regular_module(A)).verdict == "NO_OBSTRUCTION"
    obs = amplitude_obstruction(A, augmentation_module(A))
    assert obs.obstructed
    assert amplitude_obstruction(A, zero_module(A)).verdict == "NO_OBSTRUCTION"


def test_amplitude_obstruction_needs_positive_top():
    Q = truncated_polynomial_algebra(1)
    with pytest.raises(HypothesisViolated):
        amplitude_obstruction(Q, regular_module(Q))


@settings(max_examples=40)
@given(st.randoms(use_true_random=False), st.sampled_from([2, 3]))
def test_filtered_modules_are_unobstructed(rnd, power):
    A = truncated_polynomial_algebra(power)
    M = random_filtration(A, rnd)
    M.validate()
    assert not amplitude_obstruction(A, M).obstructed


def test_tensor_over_base_and_field():
    K = free_algebra_over_base(QX)
    KK = tensor_over_K(K, K)
    assert KK.base == QX and [KK.dim(d) for d in range(0, 7)] == [1, 0, 1, 0, 1, 0, 1]
    Q = rational_base()
    T = tensor_over_K(K, K, over_field=True)
    assert T.base.nvars == 2 and T.dim(4) == 3
    T.validate()
    assert Q.nvars == 0


def test_opposite_of_commutative_algebra_has_same_table():
    R = GradedCommRing([("u", 1), ("x", 2)], [KPolynomial(2, {(0, 3): 1})])
    A = commutative_quotient_algebra(R)
    Aop = opposite(A)
    for d1 in range(0, 6):
        for d2 in range(0, 6):
            for i in range(A.dim(d1)):
                for j in range(A.dim(d2)):
                    a = tuple(int(k == i) for k in range(A.dim(d1)))
                    b = tuple(int(k == j) for k in range(A.dim(d2)))
                    assert Aop.multiply(d1, a, d2, b) == A.multiply(d1, a, d2, b)


def test_constructed_algebras_validate():
    R = GradedCommRing([("u", 1), ("v", 3), ("x", 2)], [KPolynomial(3, {(0, 0, 2): 1})])
    A = commutative_quotient_algebra(R)
    for alg in (A, opposite(A), tensor_over_K(A, opposite(A)), acyclic_pair(), over_rationals(base_quotient(3))):
        alg.validate()
    diagonal_bimodule(A).validate()


def test_invalid_presentations_rejected():
    # d^2 != 0
    with pytest.raises(PresentationError):
        algebra_from_basis([("1", 0), ("a", 1), ("b", 2), ("c", 3)], {}, {1: {2: 1}, 2: {3: 1}})
    # Leibniz fails: d(a) = b but a*a = 0 while d(a a) should be b a - a b = 0 and b*a != a*b
    with pytest.raises(PresentationError):
        algebra_from_basis([("1", 0), ("a", 1), ("b", 2), ("c", 3)], {(1, 2): {3: 1}}, {1: {2: 1}})
    # associativity fails: (a a) a != a (a a) with a a = b, b a = c, a b = 0
    with pytest.raises(PresentationError):
        algebra_from_basis([("1", 0), ("a", 2), ("b", 4), ("c", 6)], {(1, 1): {2: 1}, (2, 1): {3: 1}})


@pytest.mark.parametrize("power", [1, 2, 3])
def test_diagonal_restrictions_recover_cohomology(power):
    A = truncated_polynomial_algebra(power)
    D = diagonal_bimodule(A)
    for side in ("left", "right"):
        N = restrict(D, side)
        N.validate()
        assert full_cohomology(N).dims.as_dict() == full_cohomology(A).dims.as_dict()


def test_diagonal_restrictions_over_base():
    A = acyclic_pair()
    D = diagonal_bimodule(A)
    w = DegreeWindow(-1, 8)
    for side in ("left", "right"):
        assert cohomology(restrict(D, side), w).dims.as_dict() == cohomology(A, w).dims.as_dict()


def test_triangular_components_share_base():
    with pytest.raises(PresentationError):
        TriangularPresentation(base_itself(), truncated_polynomial_algebra(2), zero_module(truncated_polynomial_algebra(2)))


def test_semifree_cone_of_identity_is_acyclic():
    A = truncated_polynomial_algebra(2)
    M = semifree_module(A, [0, -1], [{}, {0: (1,)}])
    M.validate()
    assert full_cohomology(M).dims.support() == []
