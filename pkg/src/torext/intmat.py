"""Exact integer matrices and Smith normal form.

Everything here is arbitrary-precision: entries are Python ints and no
operation ever rounds or overflows.  The elimination loop lives in a
swappable kernel (compiled or pure Python, see ``torext._kernels``);
this module provides the immutable matrix type and the derived solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._kernels import BACKEND, snf_diagonalize, xgcd

__all__ = [
    "BACKEND",
    "IntMatrix",
    "SnfDecomposition",
    "smith_normal_form",
    "solve_integer",
    "kernel_basis",
    "hermite_normal_form",
    "hnf_reduce",
    "xgcd",
    "InvalidInputError",
    "TorextError",
    "ExactnessError",
    "ResourceLimitError",
    "UnsupportedInputError",
    "GroupParseError",
]


class TorextError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(TorextError):
    """Malformed or dimensionally inconsistent input."""


class ExactnessError(TorextError):
    """A sequence failed an exactness condition; names the condition."""


class ResourceLimitError(TorextError):
    """An exhaustive computation exceeded its configured cap."""


class UnsupportedInputError(TorextError):
    """Input is valid but outside the implemented fragment (e.g. infinite duals)."""


class GroupParseError(InvalidInputError):
    """Group expression syntax error; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples.

    >>> IntMatrix.from_rows([[1, 2], [3, 4]]) @ IntMatrix.identity(2)
    IntMatrix.from_rows([[1, 2], [3, 4]])
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidInputError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise InvalidInputError("entry rows do not match declared row count")
        for row in self.entries:
            if len(row) != self.cols:
                raise InvalidInputError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(e) for e in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        k = len(values)
        if rows is None:
            rows = k
        if cols is None:
            cols = k
        return cls(
            rows,
            cols,
            tuple(
                tuple(values[i] if i == j and i < k else 0 for j in range(cols))
                for i in range(rows)
            ),
        )

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, tuple((int(x),) for x in values))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def tolists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        if self.rows == 0:
            return IntMatrix(self.cols, 0, ((),) * self.cols)
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * a for a in row) for row in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if other.rows:
            cols_of_other = list(zip(*other.entries))
        else:
            cols_of_other = [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols_of_other)
            for r in self.entries
        )
        return IntMatrix(self.rows, other.cols, out)

    def mul_vec(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise InvalidInputError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            len(row_idx),
            len(col_idx),
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx),
        )

    def take_cols(self, col_idx: Sequence[int]) -> "IntMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def take_rows(self, row_idx: Sequence[int]) -> "IntMatrix":
        return self.submatrix(row_idx, range(self.cols))

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise InvalidInputError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.tolists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k][k]
            for i in range(k + 1, n):
                mi = m[i]
                mk = m[k]
                lead = mi[k]
                for j in range(k + 1, n):
                    mi[j] = (mi[j] * pivot - lead * mk[j]) // prev
                mi[k] = 0
            prev = pivot
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise InvalidInputError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self):
        return f"IntMatrix.from_rows({[list(r) for r in self.entries]!r})"


def hstack(*mats: IntMatrix) -> IntMatrix:
    """Concatenate matrices left to right (all must share a row count)."""
    mats = tuple(m for m in mats)
    if not mats:
        raise InvalidInputError("hstack of nothing")
    rows = mats[0].rows
    for m in mats:
        if m.rows != rows:
            raise InvalidInputError("hstack row mismatch")
    return IntMatrix(
        rows,
        sum(m.cols for m in mats),
        tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(rows)),
    )


def vstack(*mats: IntMatrix) -> IntMatrix:
    mats = tuple(m for m in mats)
    if not mats:
        raise InvalidInputError("vstack of nothing")
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise InvalidInputError("vstack column mismatch")
    return IntMatrix(sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.entries))


def block_diag(*mats: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = 0
    c0 = 0
    for m in mats:
        for i, row in enumerate(m.entries):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += m.rows
        c0 += m.cols
    return IntMatrix.from_rows(out, cols)


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form D = U @ A @ V with U, V unimodular."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D.entries[i][i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    """Smith normal form with both transforms.

    Returns U, D, V with ``U @ a @ V == D``, D diagonal and nonnegative,
    and each diagonal entry dividing the next.

    >>> snf = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> snf.diagonal
    (2, 4)
    """
    d = a.tolists()
    u = IntMatrix.identity(a.rows).tolists()
    v = IntMatrix.identity(a.cols).tolists()
    snf_diagonalize(d, u, v)
    return SnfDecomposition(
        IntMatrix.from_rows(u, a.rows),
        IntMatrix.from_rows(d, a.cols),
        IntMatrix.from_rows(v, a.cols),
    )


def _snf_d_v(a: IntMatrix) -> tuple[list[list[int]], IntMatrix]:
    """Diagonal and right transform only (faster when U is not needed)."""
    d = a.tolists()
    v = IntMatrix.identity(a.cols).tolists()
    snf_diagonalize(d, None, v)
    return d, IntMatrix.from_rows(v, a.cols)


def solve_integer(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution of a @ x == b, or None if none exists.

    The solution is the deterministic particular solution read off the
    Smith form (free coordinates zero).

    >>> solve_integer(IntMatrix.from_rows([[2, 3]]), [1])
    (-1, 1)
    """
    if len(b) != a.rows:
        raise InvalidInputError("right-hand side length does not match row count")
    d = a.tolists()
    # Carry b through the row operations as a single extra column.
    c = [[int(x)] for x in b]
    v = IntMatrix.identity(a.cols).tolists()
    snf_diagonalize(d, c, v)
    n = a.cols
    k = min(a.rows, n)
    y = [0] * n
    for i in range(a.rows):
        di = d[i][i] if i < k else 0
        ci = c[i][0]
        if di:
            if ci % di:
                return None
            y[i] = ci // di
        elif ci:
            return None
    vm = IntMatrix.from_rows(v, n)
    return vm.mul_vec(y)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel {x : a @ x == 0}, as matrix columns.

    The basis is saturated (spans all rational kernel vectors that are
    integral), because it consists of columns of a unimodular transform.

    >>> kernel_basis(IntMatrix.from_rows([[1, 1]])).col(0)
    (-1, 1)
    """
    d, v = _snf_d_v(a)
    k = min(a.rows, a.cols)
    rank = sum(1 for i in range(k) if d[i][i])
    return v.take_cols(range(rank, a.cols))


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    snf = smith_normal_form(u)
    if snf.D != IntMatrix.identity(u.rows):
        raise InvalidInputError("matrix is not unimodular")
    # U' @ u @ V' == I, so u^{-1} == V' @ U'.
    return snf.V @ snf.U


def lattice_member(gens: IntMatrix, vec: Sequence[int]) -> bool:
    """Is vec an integer combination of the columns of gens?"""
    return solve_integer(gens, vec) is not None


def sublattice_leq(inner: IntMatrix, outer: IntMatrix) -> bool:
    """Is every column of inner inside the column span of outer?"""
    if inner.rows != outer.rows:
        raise InvalidInputError("sublattice comparison needs equal ambient rank")
    return all(lattice_member(outer, inner.col(j)) for j in range(inner.cols))


def lattice_intersection(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Generators of the intersection of two column-span lattices."""
    if a.rows != b.rows:
        raise InvalidInputError("lattice intersection needs equal ambient rank")
    ker = kernel_basis(hstack(a, b.scale(-1)))
    coeffs = ker.take_rows(range(a.cols))
    return a @ coeffs


def hermite_normal_form(a: IntMatrix) -> IntMatrix:
    """Column-style Hermite basis of the column lattice of a.

    Output columns have strictly increasing pivot rows and positive
    pivots; within each pivot row, entries of earlier columns are
    reduced into [0, pivot).

    >>> hermite_normal_form(IntMatrix.from_rows([[4, 6], [0, 2]])).tolists()
    [[2, 0], [2, 4]]
    """
    work = [list(a.col(j)) for j in range(a.cols)]
    out: list[list[int]] = []
    for r in range(a.rows):
        carry = None
        keep = []
        for c in work:
            if c[r] == 0:
                keep.append(c)
                continue
            if carry is None:
                carry = c
                continue
            x, y, g = xgcd(carry[r], c[r])
            pr, cr = carry[r], c[r]
            new_carry = [x * u + y * v for u, v in zip(carry, c)]
            new_c = [(pr // g) * v - (cr // g) * u for u, v in zip(carry, c)]
            carry = new_carry
            keep.append(new_c)
        if carry is not None:
            if carry[r] < 0:
                carry = [-u for u in carry]
            for prev in out:
                if prev[r] != 0:
                    q = prev[r] // carry[r]
                    if q:
                        for i in range(a.rows):
                            prev[i] -= q * carry[i]
            out.append(carry)
        work = keep
    if not out:
        return IntMatrix.zeros(a.rows, 0)
    return IntMatrix.from_rows(list(zip(*out)), len(out))


def hnf_reduce(h: IntMatrix, vec: Sequence[int]) -> tuple[int, ...]:
    """Canonical coset representative of vec modulo the columns of h.

    h must be a hermite_normal_form output.  Reducing row by row against
    the pivots yields, coordinate for coordinate, the smallest
    nonnegative values any coset member can take, so the result is the
    lexicographically minimal representative.
    """
    if len(vec) != h.rows:
        raise InvalidInputError("vector length does not match lattice rank")
    v = [int(x) for x in vec]
    for j in range(h.cols):
        pr = next(i for i in range(h.rows) if h.entries[i][j] != 0)
        q = v[pr] // h.entries[pr][j]
        if q:
            for i in range(pr, h.rows):
                v[i] -= q * h.entries[i][j]
    return tuple(v)
