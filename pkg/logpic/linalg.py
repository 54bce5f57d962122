"""
Exact integer linear algebra: Smith normal form, lattice membership and
cokernels.

Everything here works on Python integers, so there is no overflow and no
floating point. Matrices are small (Laplacians of desk-scale graphs), so the
implementation favors clarity over asymptotics.

Example:
    >>> from logpic.linalg import *  # NOQA
    >>> M = IntMatrix.from_rows([[2, -1], [-1, 2]])
    >>> snf = smith_normal_form(M)
    >>> snf.diagonal()
    [1, 3]
    >>> assert snf.U @ M @ snf.V == snf.S
    >>> cokernel_invariants(M)
    [3]
"""
from __future__ import annotations

from typing import Sequence

import msgspec

from logpic.exceptions import InputError


class IntMatrix(msgspec.Struct, frozen=True):
    """
    Immutable dense integer matrix stored row-major.

    Example:
        >>> from logpic.linalg import IntMatrix
        >>> A = IntMatrix.from_rows([[1, 2], [3, 4]])
        >>> A[1, 0]
        3
        >>> A.det()
        -2
        >>> (A @ [1, 1])
        (3, 7)
        >>> A.transpose().tolist()
        [[1, 3], [2, 4]]
    """
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError('matrix dimensions must be non-negative')
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f'entry count {len(self.entries)} does not match '
                f'{self.rows}x{self.cols}')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise InputError('ragged matrix rows')
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([list(self.col(j)) for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise InputError('hstack needs equal row counts')
        return IntMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
            cols=self.cols + other.cols)

    def submatrix(self, drop_row: int, drop_col: int) -> IntMatrix:
        """Delete one row and one column (reduced Laplacians)."""
        return IntMatrix.from_rows(
            [[x for j, x in enumerate(self.row(i)) if j != drop_col]
             for i in range(self.rows) if i != drop_row],
            cols=max(self.cols - 1, 0))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise InputError(
                    f'cannot multiply {self.rows}x{self.cols} by '
                    f'{other.rows}x{other.cols}')
            other_cols = [other.col(j) for j in range(other.cols)]
            return IntMatrix.from_rows(
                [[sum(a * b for a, b in zip(self.row(i), c)) for c in other_cols]
                 for i in range(self.rows)], cols=other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise InputError(
                f'vector of length {len(vec)} does not match {self.cols} columns')
        return tuple(sum(a * b for a, b in zip(self.row(i), vec))
                     for i in range(self.rows))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def det(self) -> int:
        """
        Exact determinant with fraction-free Bareiss elimination.
        """
        if self.rows != self.cols:
            raise InputError('determinant needs a square matrix')
        n = self.rows
        if n == 0:
            return 1
        A = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if swap is None:
                    return 0
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)


class SmithDecomposition(msgspec.Struct, frozen=True):
    """
    ``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal with
    each diagonal entry dividing the next.
    """
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def check(self, M: IntMatrix) -> None:
        """Raise ``AssertionError`` unless the decomposition is valid for ``M``."""
        if self.U @ M @ self.V != self.S:
            raise AssertionError('U @ M @ V != S')
        if not (self.U.is_unimodular() and self.V.is_unimodular()):
            raise AssertionError('transforms are not unimodular')
        if not self.S.is_diagonal():
            raise AssertionError('S is not diagonal')
        diag = self.diagonal()
        for a, b in zip(diag, diag[1:]):
            if (a == 0 and b != 0) or (a != 0 and b % a != 0):
                raise AssertionError(f'divisibility chain broken at {a}, {b}')

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        """
        One integer solution of ``M @ x == b`` or None.

        Example:
            >>> from logpic.linalg import *  # NOQA
            >>> M = IntMatrix.from_rows([[2, 0], [0, 3]])
            >>> smith_normal_form(M).solve([4, 9])
            (2, 3)
            >>> smith_normal_form(M).solve([1, 0]) is None
            True
        """
        if len(b) != self.U.cols:
            raise InputError(
                f'right hand side has length {len(b)}, expected {self.U.cols}')
        y = self.U @ b
        diag = self.diagonal()
        z = [0] * self.V.rows
        for i, yi in enumerate(y):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if yi != 0:
                    return None
            else:
                q, r = divmod(yi, d)
                if r:
                    return None
                z[i] = q
        return self.V @ z

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Columns of ``V`` spanning the integer kernel of ``M``."""
        return [self.V.col(j) for j in range(self.rank, self.V.cols)]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form by elementary row and column operations, always
    pivoting on an entry of least magnitude.

    Example:
        >>> from logpic.linalg import *  # NOQA
        >>> smith_normal_form(IntMatrix.identity(3)).diagonal()
        [1, 1, 1]
        >>> smith_normal_form(IntMatrix.from_rows([[0]])).diagonal()
        [0]
        >>> M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        >>> snf = smith_normal_form(M)
        >>> snf.diagonal()
        [2, 6, 12]
        >>> snf.check(M)
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, k):
        # row[dst] += k * row[src]
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for R in A:
            R[dst] += k * R[src]
        for R in V:
            R[dst] += k * R[src]

    for t in range(min(m, n)):
        candidates = [(abs(A[i][j]), i, j) for i in range(t, m)
                      for j in range(t, n) if A[i][j] != 0]
        if not candidates:
            break
        _, i, j = min(candidates)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # Pull the smallest entry of the pivot cross onto the pivot.
            cross = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t] != 0]
            cross += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j] != 0]
            _, i, j = min(cross)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m)
                        for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    return SmithDecomposition(
        U=IntMatrix.from_rows(U, cols=m),
        S=IntMatrix.from_rows(A, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
    )


def integer_solve(M: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """
    Some integer ``x`` with ``M @ x == b``, or None when ``b`` is not in the
    column lattice of ``M``.

    Example:
        >>> from logpic.linalg import *  # NOQA
        >>> L = IntMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
        >>> x = integer_solve(L, [-2, 1, 1])
        >>> L @ x
        (-2, 1, 1)
        >>> integer_solve(L, [1, -1, 0]) is None
        True
        >>> integer_solve(L, [0, 0, 0])
        (0, 0, 0)
    """
    if len(b) != M.rows:
        raise InputError(
            f'right hand side has length {len(b)} but matrix has {M.rows} rows')
    return smith_normal_form(M).solve(b)


def cokernel_invariants(M: IntMatrix) -> list[int]:
    """
    Invariant factors (> 1) of the torsion part of ``Z^rows / M Z^cols``.

    Example:
        >>> from logpic.linalg import *  # NOQA
        >>> cokernel_invariants(IntMatrix.from_rows([[3]]))
        [3]
        >>> cokernel_invariants(IntMatrix.from_rows([[1]]))
        []
    """
    return [d for d in smith_normal_form(M).diagonal() if d > 1]
