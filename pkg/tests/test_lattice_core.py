from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies
from sympy import Matrix

from errors import DependentInput, EmptyBasis
from lattice_core import (
    babai_nearest_plane,
    combine,
    coordinates,
    cvp_bruteforce,
    gram_schmidt,
    hnf_column,
    is_lll_reduced,
    lattice_contains,
    lattice_determinant_squared,
    lll_conditions,
    lll_reduce,
    norm2,
    round_half_up,
    same_lattice,
    svp_bruteforce,
)
from polyring import Poly, RatFunc

T = Poly.t()


@strategies.composite
def square_bases(draw, max_rank=3, bound=20):
    n = draw(strategies.integers(1, max_rank))
    entries = strategies.integers(-bound, bound)
    return [tuple(draw(entries) for _ in range(n)) for _ in range(n)]


def test_round_half_up():
    assert round_half_up(Fraction(1, 2)) == 1
    assert round_half_up(Fraction(-1, 2)) == 0
    assert round_half_up(Fraction(7, 3)) == 2
    assert round_half_up(Fraction(-5, 3)) == -2


def test_gram_schmidt_over_q():
    data = gram_schmidt([(3, 1), (2, 2)])
    assert data.mu == ((), (Fraction(4, 5),))
    assert data.norms == (10, Fraction(8, 5))
    assert data.orthogonal[1] == (Fraction(-2, 5), Fraction(6, 5))
    with pytest.raises(DependentInput):
        gram_schmidt([(1, 2), (2, 4)])


def test_gram_schmidt_over_rational_functions():
    data = gram_schmidt([(T, 0), (T, T)])
    assert data.mu[1][0] == RatFunc.one()
    assert data.norms == (RatFunc(T * T), RatFunc(T * T))


def test_lll_on_a_small_basis():
    basis = [(1, 1, 1), (-1, 0, 2), (3, 5, 6)]
    reduced, U = lll_reduce(basis)
    assert is_lll_reduced(reduced)
    assert reduced == [(0, 1, 0), (1, 0, 1), (-1, 0, 2)]
    for i, v in enumerate(reduced):
        assert v == combine([U[k][i] for k in range(3)], basis)


def test_lll_rejects_bad_delta_and_accepts_empty_input():
    with pytest.raises(ValueError):
        lll_reduce([(1, 0)], Fraction(1, 4))
    with pytest.raises(ValueError):
        lll_reduce([(1, 0)], 1)
    assert lll_reduce([]) == ([], [])


def test_lll_conditions_detect_each_failure():
    assert lll_conditions([(1, 0), (1, 1)]) == (False, True)
    assert lll_conditions([(3, 0), (0, 1)]) == (True, False)
    assert lll_conditions([]) == (True, True)


@given(square_bases(max_rank=4))
@settings(deadline=None, max_examples=60)
def test_lll_guarantees(basis):
    det2 = lattice_determinant_squared(basis)
    assume(det2 != 0)
    n = len(basis)
    reduced, U = lll_reduce(basis)
    assert is_lll_reduced(reduced)
    assert abs(Matrix(U).det()) == 1
    assert same_lattice(basis, reduced)
    shortest = norm2(svp_bruteforce(basis))
    assert norm2(reduced[0]) <= 2 ** (n - 1) * shortest
    product = 1
    for v in reduced:
        product *= norm2(v)
    assert product <= 2 ** (n * (n - 1) // 2) * det2


@given(square_bases())
@settings(deadline=None, max_examples=40)
def test_incremental_and_full_recomputation_agree(basis):
    assume(lattice_determinant_squared(basis) != 0)
    assert lll_reduce(basis, incremental=True) == lll_reduce(basis, incremental=False)


def test_hnf_column():
    H, U = hnf_column([[2, 3], [0, 0]])
    assert H == [(1, 0), (0, 0)]
    A = Matrix([[2, 3], [0, 0]])
    assert A * Matrix(U) == Matrix(H)
    assert abs(Matrix(U).det()) == 1


def test_lattice_membership_and_equality():
    assert same_lattice([(1, 0), (0, 1)], [(1, 1), (0, 1)])
    assert not same_lattice([(1, 0), (0, 1)], [(2, 0), (0, 1)])
    assert lattice_contains([(2, 0), (0, 3)], (4, 3))
    assert not lattice_contains([(2, 0), (0, 3)], (1, 0))
    assert not lattice_contains([(2, 0), (0, 3)], (Fraction(1, 2), 0))


def test_coordinates_of_projection():
    assert coordinates([(1, 0), (0, 2)], (3, 4)) == (3, 2)
    assert coordinates([(1, 0, 0)], (2, 5, 7)) == (2,)
    with pytest.raises(DependentInput):
        coordinates([(1, 1), (2, 2)], (0, 1))


def test_determinant_squared():
    assert lattice_determinant_squared([(1, 2), (3, 4)]) == 4
    assert lattice_determinant_squared([(1, 0, 0)]) == 1
    assert lattice_determinant_squared([]) == 1


def test_babai_nearest_plane():
    w, coeffs = babai_nearest_plane([(1, 0), (0, 1)], (Fraction(1, 2), Fraction(7, 5)))
    assert w == (1, 1)
    assert coeffs == (1, 1)


def test_svp_bruteforce_methods_agree():
    basis = [(3, 0), (8, 1)]
    assert svp_bruteforce(basis) == (-1, 1)
    assert svp_bruteforce(basis, method="box") == (-1, 1)
    assert norm2(svp_bruteforce([(5,)])) == 25
    with pytest.raises(EmptyBasis):
        svp_bruteforce([])
    with pytest.raises(ValueError):
        svp_bruteforce(basis, method="walk")


def test_cvp_bruteforce():
    v, dist = cvp_bruteforce([(1, 0), (0, 1)], (Fraction(1, 3), Fraction(12, 5)))
    assert v == (0, 2)
    assert dist == Fraction(61, 225)
    v, dist = cvp_bruteforce([(2, 0)], (3, 4))
    assert v == (2, 0)
    assert dist == 17
    with pytest.raises(EmptyBasis):
        cvp_bruteforce([], (1,))


@given(square_bases(max_rank=2, bound=9), strategies.lists(strategies.integers(-30, 30), min_size=2, max_size=2))
@settings(deadline=None, max_examples=40)
def test_cvp_beats_babai(basis, target):
    assume(len(basis) == 2 and lattice_determinant_squared(basis) != 0)
    v, dist = cvp_bruteforce(basis, target)
    assert lattice_contains(basis, v)
    w, _ = babai_nearest_plane(basis, target)
    assert dist <= norm2([a - b for a, b in zip(w, target)])
