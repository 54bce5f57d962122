import math

import kwarray
import pytest

from logpic.exceptions import InputError
from logpic.linalg import (IntMatrix, cokernel_invariants, integer_solve,
                           smith_normal_form)


def _random_matrix(rng, max_dim=4, lo=-5, hi=5):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols)


def test_snf_verified_by_multiplication_on_random_matrices():
    rng = kwarray.ensure_rng(0, api='python')
    for _ in range(1000):
        M = _random_matrix(rng)
        snf = smith_normal_form(M)
        assert snf.U @ M @ snf.V == snf.S
        snf.check(M)


def test_snf_diagonal_matches_determinant():
    rng = kwarray.ensure_rng(1, api='python')
    for _ in range(200):
        n = rng.randint(1, 4)
        M = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        diag = smith_normal_form(M).diagonal()
        assert abs(M.det()) == math.prod(diag)


def test_integer_solve_recovers_a_solution():
    rng = kwarray.ensure_rng(2, api='python')
    for _ in range(200):
        M = _random_matrix(rng)
        x = [rng.randint(-3, 3) for _ in range(M.cols)]
        b = M @ x
        y = integer_solve(M, b)
        assert y is not None
        assert M @ y == b


def test_integer_solve_rejects_points_outside_the_lattice():
    M = IntMatrix.from_rows([[2, 0], [0, 2]])
    assert integer_solve(M, [1, 0]) is None
    assert integer_solve(M, [2, -4]) == (1, -2)


def test_cokernel_of_cycle_laplacian():
    L = IntMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert cokernel_invariants(L) == [3]
    assert smith_normal_form(L).rank == 2
    (k,) = smith_normal_form(L).kernel_basis()
    assert L @ k == (0, 0, 0)
    assert abs(sum(k)) == 3 and len(set(k)) == 1


def test_dimension_errors():
    with pytest.raises(InputError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(InputError):
        integer_solve(IntMatrix.identity(2), [1, 2, 3])


def test_invariant_factors_match_sympy():
    sympy = pytest.importorskip('sympy')
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rng = kwarray.ensure_rng(3, api='python')
    for _ in range(50):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        ours = [d for d in smith_normal_form(IntMatrix.from_rows(rows)).diagonal() if d]
        ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
        theirs = [abs(int(ref[i, i])) for i in range(n) if ref[i, i] != 0]
        assert sorted(ours) == sorted(theirs)
