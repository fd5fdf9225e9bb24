"""Exact dense linear algebra over the Gaussian rationals.

All decisions that depend on basis choices are made deterministic:

* ``rref`` scans columns left to right and rows top down.
* ``kernel_basis`` emits one vector per free column, in increasing column
  order, with entry 1 at the free position.
* ``pivot_columns`` supports an ``earliest`` rule (standard rref pivots) and a
  ``latest`` rule (pivots of the column-reversed matrix mapped back), so a
  caller can pick coordinate complements under either convention.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import GaussianRational, ONE, ZERO

__all__ = [
    "ExactMatrix",
    "rref",
    "kernel_basis",
    "pivot_columns",
    "solve",
    "inverse",
]

Vector = tuple[GaussianRational, ...]


def _coerce_row(row: Iterable[object]) -> list[GaussianRational]:
    return [GaussianRational.coerce(v) for v in row]  # type: ignore[arg-type]


class ExactMatrix:
    """A dense matrix of :class:`GaussianRational` entries.

    Rows are stored as lists; the matrix itself should be treated as
    immutable after construction (mutating helpers return new matrices).
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[object]], ncols: int | None = None) -> None:
        data = [_coerce_row(r) for r in rows]
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = 0 if ncols is None else ncols
        self.rows: list[list[GaussianRational]] = data
        self.nrows: int = len(data)
        self.ncols: int = width if data else (ncols or 0)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], ncols=n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], nrows: int | None = None) -> "ExactMatrix":
        cols = [_coerce_row(c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("ragged columns")
        else:
            height = nrows or 0
        return cls(
            [[cols[j][i] for j in range(len(cols))] for i in range(height)],
            ncols=len(cols),
        )

    # -- basic ops --------------------------------------------------------

    def copy(self) -> "ExactMatrix":
        return ExactMatrix([list(r) for r in self.rows], ncols=self.ncols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:  # pragma: no cover - matrices rarely hashed
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        return self.rows[i][j]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.rows for v in row)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            ncols=self.ncols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            ncols=self.ncols,
        )

    def scale(self, c: object) -> "ExactMatrix":
        s = GaussianRational.coerce(c)  # type: ignore[arg-type]
        return ExactMatrix(
            [[s * v for v in row] for row in self.rows], ncols=self.ncols
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.ncols} vs {other.nrows}")
        out = [[ZERO] * other.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                orow = other.rows[k]
                dest = out[i]
                for j, b in enumerate(orow):
                    if not b.is_zero():
                        dest[j] = dest[j] + a * b
        return ExactMatrix(out, ncols=other.ncols)

    def apply(self, vec: Sequence[object]) -> Vector:
        """Matrix-vector product (vector indexed by columns)."""
        v = _coerce_row(vec)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((a * b for a, b in zip(row, v) if not a.is_zero()), ZERO)
            for row in self.rows
        )

    def apply_generic(self, vec: Sequence[object], zero: object) -> list[object]:
        """Matrix-vector product over any coefficient module.

        The vector entries may live in any ring with ``+``, ``is_zero`` and a
        ``scale`` method accepting a :class:`GaussianRational` (for example
        polynomial-valued coordinates); ``zero`` supplies the additive
        identity of that ring.
        """
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out: list[object] = []
        for row in self.rows:
            acc = zero
            for coeff, x in zip(row, vec):
                if coeff.is_zero() or x.is_zero():
                    continue
                acc = acc + x.scale(coeff)
            out.append(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return ExactMatrix(
            [ra + rb for ra, rb in zip(self.rows, other.rows)],
            ncols=self.ncols + other.ncols,
        )

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            [[row[j] for j in indices] for row in self.rows], ncols=len(indices)
        )


def rref(matrix: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form with its pivot columns.

    Deterministic: columns are scanned left to right; within a column the
    first row (top down) with a nonzero entry becomes the pivot row.
    """
    m = [list(r) for r in matrix.rows]
    nrows, ncols = matrix.nrows, matrix.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inverse()
        m[r] = [inv * v for v in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(m, ncols=ncols), tuple(pivots)


def pivot_columns(matrix: ExactMatrix, rule: str = "earliest") -> tuple[int, ...]:
    """Column indices that index an injective coordinate complement of the kernel.

    ``earliest`` takes the standard rref pivots.  ``latest`` processes columns
    right to left (rref of the column-reversed matrix) and maps the pivots
    back, preferring the highest-index columns.  Both return sorted indices.
    """
    if rule == "earliest":
        return rref(matrix)[1]
    if rule == "latest":
        reversed_cols = ExactMatrix(
            [list(reversed(row)) for row in matrix.rows], ncols=matrix.ncols
        )
        _, piv = rref(reversed_cols)
        return tuple(sorted(matrix.ncols - 1 - p for p in piv))
    raise ValueError(f"unknown pivot rule {rule!r}")


def kernel_basis(matrix: ExactMatrix) -> list[Vector]:
    """Deterministic basis of the right kernel.

    One vector per free column, emitted in increasing free-column order; each
    has entry 1 at its free column and the solved pivot entries elsewhere.
    """
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * matrix.ncols
        vec[free] = ONE
        for row_idx, pcol in enumerate(pivots):
            vec[pcol] = -reduced.rows[row_idx][free]
        basis.append(tuple(vec))
    return basis


def solve(matrix: ExactMatrix, rhs: Sequence[object]) -> Vector | None:
    """One exact solution of ``matrix @ x = rhs``, or None if inconsistent.

    The solution returned is the deterministic one with zeros at all free
    columns.
    """
    b = _coerce_row(rhs)
    if len(b) != matrix.nrows:
        raise ValueError("rhs length mismatch")
    augmented = matrix.hstack(ExactMatrix([[v] for v in b], ncols=1))
    reduced, pivots = rref(augmented)
    if matrix.ncols in pivots:
        return None
    x = [ZERO] * matrix.ncols
    for row_idx, pcol in enumerate(pivots):
        x[pcol] = reduced.rows[row_idx][matrix.ncols]
    return tuple(x)


def inverse(matrix: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a square matrix (raises on singular input)."""
    if matrix.nrows != matrix.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = matrix.nrows
    reduced, pivots = rref(matrix.hstack(ExactMatrix.identity(n)))
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("matrix is singular")
    return reduced.select_columns(range(n, 2 * n))
