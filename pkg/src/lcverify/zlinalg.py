"""Exact integer linear algebra: row Hermite normal form and integer solving.

Matrices are dense lists of Python ints.  ``hnf`` returns the transform along
with the normal form so every answer can be re-checked by multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


class DimensionMismatch(ValueError):
    pass


@dataclass
class IntMatrix:
    rows: int
    cols: int
    entries: list[list[int]] = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries are not rectangular with the stated shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(map(int, r)) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols_b] for r in self.entries]
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        return [sum(a * b for a, b in zip(r, x) if a) for r in self.entries]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def det(A: IntMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = A.rows
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1] if n else 1


def _axpy(dst: list[int], q: int, src: list[int], start: int = 0) -> None:
    # dst -= q * src, in place, from column ``start``
    for j in range(start, len(dst)):
        s = src[j]
        if s:
            dst[j] -= q * s


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with H = U @ A and U unimodular.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    come last.  Elimination works column by column, repeatedly reducing the
    column by its smallest nonzero entry (a Euclid step across rows).
    """
    m, n = A.rows, A.cols
    H = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            p = H[r][c]
            done = True
            for i in range(r + 1, m):
                row = H[i]
                if not row[c]:
                    continue
                q = row[c] // p
                _axpy(row, q, H[r], c)
                _axpy(U[i], q, U[r])
                if row[c]:
                    done = False
            if done:
                break
        if not any(H[i][c] for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                _axpy(H[i], q, H[r], c)
                _axpy(U[i], q, U[r])
        r += 1
    return IntMatrix(m, n, H), IntMatrix(m, m, U)


def pivot_columns(H: IntMatrix) -> list[int]:
    cols = []
    for row in H.entries:
        j = next((j for j, x in enumerate(row) if x), None)
        if j is None:
            break
        cols.append(j)
    return cols


def is_hnf(H: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    for i, row in enumerate(H.entries):
        j = next((j for j, x in enumerate(row) if x), None)
        if j is None:
            seen_zero = True
            continue
        if seen_zero or j <= last or row[j] <= 0:
            return False
        if any(not (0 <= H.entries[k][j] < row[j]) for k in range(i)):
            return False
        last = j
    return True


@dataclass
class NoSolution:
    """Refutation of A x = b over the integers.

    With H = U A^T in Hermite form, ``residual = b - multipliers @ H`` lies in
    the lattice iff b does.  The first nonzero entry of ``residual`` sits in
    column ``column``, which is either not a pivot column of H
    (``kind == "no_pivot"``) or a pivot column whose pivot does not divide it
    (``kind == "not_divisible"``); in both cases no lattice vector can match.
    """

    kind: str
    column: int
    residual: list[int]
    multipliers: list[int]
    H: IntMatrix = field(repr=False)
    U: IntMatrix = field(repr=False)

    def verify(self, A: IntMatrix, b: Sequence[int], check_unimodular: bool = True) -> bool:
        """Re-check the certificate from scratch against A and b."""
        At = A.transpose()
        if self.U @ At != self.H or not is_hnf(self.H):
            return False
        if check_unimodular and abs(det(self.U)) != 1:
            return False
        comb = [0] * A.rows
        for t, row in zip(self.multipliers, self.H.entries):
            if t:
                for j, x in enumerate(row):
                    comb[j] += t * x
        if [bi - ci for bi, ci in zip(b, comb)] != list(self.residual):
            return False
        j = next((j for j, x in enumerate(self.residual) if x), None)
        if j is None or j != self.column:
            return False
        pivots = pivot_columns(self.H)
        if j not in pivots:
            return self.kind == "no_pivot"
        p = self.H.entries[pivots.index(j)][j]
        return self.kind == "not_divisible" and self.residual[j] % p != 0


def solve_diophantine(A: IntMatrix, b: Sequence[int]) -> list[int] | NoSolution:
    """Some integer x with A x = b, or a NoSolution certificate."""
    b = [int(x) for x in b]
    if len(b) != A.rows:
        raise DimensionMismatch(f"b has length {len(b)}, A has {A.rows} rows")
    H, U = hnf(A.transpose())
    res = list(b)
    mult = [0] * H.rows
    for i, row in enumerate(H.entries):
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        j = next((j for j, x in enumerate(res) if x), None)
        if j is None:
            break
        if j < c:
            return NoSolution("no_pivot", j, res, mult, H, U)
        if j > c:
            continue
        t, rem = divmod(res[j], row[c])
        if rem:
            return NoSolution("not_divisible", j, res, mult, H, U)
        mult[i] = t
        _axpy(res, t, row, c)
    j = next((j for j, x in enumerate(res) if x), None)
    if j is not None:
        return NoSolution("no_pivot", j, res, mult, H, U)
    x = [0] * A.cols
    for t, urow in zip(mult, U.entries):
        if t:
            for k, u in enumerate(urow):
                if u:
                    x[k] += t * u
    return x
