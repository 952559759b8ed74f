from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from fourvec.cyclo import I, cyc, zeta
from fourvec import linalg as la


def test_solve_identity():
    A = la.identity(3, Q(1))
    b = [Q(1), Q(2), Q(3)]
    x, ker = la.solve(A, b)
    assert x == b and ker == []


def test_rank_deficient_over_gaussians():
    A = [[cyc(1), I], [I, cyc(-1)]]  # second row = i * first
    x, ker = la.solve(A, [cyc(0), cyc(0)])
    assert len(ker) == 1
    # canonical kernel basis: free column set to 1
    v = ker[0]
    assert v[1] == 1 and v[0] == -I


def test_solve_inconsistent():
    A = [[Q(1), Q(1)], [Q(2), Q(2)]]
    assert la.solve(A, [Q(1), Q(3)]) is None


def test_inverse_exact():
    A = [[cyc(1), zeta(8)], [cyc(0), cyc(2)]]
    Ainv = la.inverse(A)
    assert la.matmul(A, Ainv) == la.identity(2, cyc(1))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_random_integer(rows):
    A = [[Q(x) for x in r] for r in rows]
    if la.det(A) == 0:
        return
    Ainv = la.inverse(A)
    assert la.matmul(A, Ainv) == la.identity(3, Q(1))


def test_minimal_polynomial_diag():
    A = [[Q(1), Q(0), Q(0)], [Q(0), Q(2), Q(0)], [Q(0), Q(0), Q(2)]]
    mu = la.minimal_polynomial(lambda v: la.matvec(A, v), 3)
    # (x-1)(x-2) = 2 - 3x + x^2
    assert mu == [Q(2), Q(-3), Q(1)]


def test_eigen_split_diag():
    A = [[Q(1), Q(0), Q(0)], [Q(0), Q(2), Q(0)], [Q(0), Q(0), Q(2)]]
    parts = la.eigen_split(A)
    dims = sorted((str(lam), len(basis)) for lam, basis in parts)
    assert sorted(len(b) for _, b in parts) == [1, 2]
    assert {lam.as_rational() for lam, _ in parts} == {1, 2}


def test_eigen_split_rotation():
    A = [[Q(0), Q(-1)], [Q(1), Q(0)]]
    parts = la.eigen_split(A)
    assert {lam for lam, _ in parts} == {I, -I}


def test_eigen_split_rejects_nilpotent():
    A = [[Q(0), Q(1)], [Q(0), Q(0)]]
    with pytest.raises(la.SplitError):
        la.eigen_split(A)


def test_squarefree_part():
    # (x-1)^2 (x+2) = x^3 - 3x + 2; radical is (x-1)(x+2) = x^2 + x - 2
    p = [Q(2), Q(-3), Q(0), Q(1)]
    assert la.squarefree_part(p) == [Q(-2), Q(1), Q(1)]
    assert not la.is_squarefree(p)
    assert la.is_squarefree([Q(-2), Q(1), Q(1)])
