"""Dense exact matrices with deterministic Gaussian elimination.

Elimination always picks the leftmost pivot column and the first row with
a nonzero entry, so solve/kernel/inverse outputs are reproducible across
runs and platforms.
"""

from __future__ import annotations

from .errors import InputError
from .fields import FieldSpec


class Matrix:
    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows: int, cols: int, data, field: FieldSpec):
        data = [list(r) for r in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise InputError(f"matrix data does not fill {rows}x{cols}")
        canon = field.canon
        self.rows = rows
        self.cols = cols
        self.data = [[canon(x) for x in r] for r in data]
        self.field = field

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> "Matrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)], field)

    @classmethod
    def from_columns(cls, columns, field: FieldSpec) -> "Matrix":
        if not columns:
            return cls(0, 0, [], field)
        rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise InputError("columns of unequal length")
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)], field)

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError("matrix product dimension mismatch")
        canon = self.field.canon
        out = []
        for i in range(self.rows):
            row = self.data[i]
            out.append(
                [
                    canon(sum(row[k] * other.data[k][j] for k in range(self.cols)))
                    for j in range(other.cols)
                ]
            )
        return Matrix(self.rows, other.cols, out, self.field)

    def apply(self, vec) -> list:
        if len(vec) != self.cols:
            raise InputError("matrix-vector dimension mismatch")
        canon = self.field.canon
        return [canon(sum(r[j] * vec[j] for j in range(self.cols))) for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.data else [[] for _ in range(self.cols)], self.field)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def _rref(rows, width, field):
    """In-place reduced row echelon over the first `width` columns; returns pivot columns."""
    canon = field.canon
    inv = field.inv
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(width):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = inv(rows[r][c])
        if scale != 1:
            rows[r] = [canon(x * scale) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rr = rows[r]
                rows[i] = [canon(x - f * y) for x, y in zip(rows[i], rr)]
        pivots.append(c)
        r += 1
    return pivots


def solve_linear(A: Matrix, b) -> list | None:
    """One solution of A x = b (free variables set to 0), or None if inconsistent."""
    if len(b) != A.rows:
        raise InputError("right-hand side length must equal row count")
    field = A.field
    canon = field.canon
    aug = [row + [canon(bi)] for row, bi in zip(A.data, b)]
    pivots = _rref(aug, A.cols, field)
    rank = len(pivots)
    for i in range(rank, A.rows):
        if aug[i][A.cols] != 0:
            return None
    x = [0] * A.cols
    for r, c in enumerate(pivots):
        x[c] = aug[r][A.cols]
    return x


def kernel_basis(A: Matrix) -> list:
    """Echelon-normalized basis of the null space, ordered by free column."""
    field = A.field
    rows = [list(r) for r in A.data]
    pivots = _rref(rows, A.cols, field)
    pivot_set = set(pivots)
    free = [c for c in range(A.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * A.cols
        v[fc] = 1
        for r, c in enumerate(pivots):
            v[c] = field.canon(-rows[r][fc])
        lead = next(x for x in v if x != 0)
        if lead != 1:
            s = field.inv(lead)
            v = [field.canon(x * s) for x in v]
        basis.append(v)
    return basis


def invert(A: Matrix) -> Matrix | None:
    """The two-sided inverse, or None when A is singular."""
    if A.rows != A.cols:
        raise InputError("only square matrices can be inverted")
    n = A.rows
    field = A.field
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A.data)]
    pivots = _rref(aug, n, field)
    if len(pivots) < n:
        return None
    return Matrix(n, n, [row[n:] for row in aug], field)


def rank(A: Matrix) -> int:
    rows = [list(r) for r in A.data]
    return len(_rref(rows, A.cols, A.field))
