"""Compressed sparse row matrices and the operations the embedding needs.

The CSR layout is three arrays: ``index_pointers`` (length ``n_rows + 1``)
holds the half-open extent of each row inside ``col_indices`` and
``data``. Columns are strictly increasing within a row, duplicates are
summed at build time, and no stored value is exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericalDomainError, StructuralError


@dataclass
class CsrMatrix:
    """Immutable sparse matrix in compressed sparse row form."""

    n_rows: int
    n_cols: int
    index_pointers: np.ndarray
    col_indices: np.ndarray
    data: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.data.shape[0])

    @classmethod
    def from_triplets(
        cls, rows, cols, vals, n_rows: int, n_cols: int, check: bool = True
    ) -> "CsrMatrix":
        """Assemble from coordinate triplets.

        Duplicate coordinates are summed; entries whose sum is exactly
        zero are dropped. Raises StructuralError for out-of-range indices
        or non-finite values, naming the first offending triplet.
        ``check=False`` skips input validation for callers whose arrays
        are already known to be in range and finite.
        """
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        cols = np.ascontiguousarray(cols, dtype=np.int64)
        vals = np.ascontiguousarray(vals, dtype=np.float64)
        if not (rows.shape == cols.shape == vals.shape):
            raise StructuralError("triplet arrays must have equal length")
        if n_rows < 0 or n_cols < 0:
            raise StructuralError("matrix shape must be non-negative")
        if check and rows.size:
            bad = (rows < 0) | (rows >= n_rows) | (cols < 0) | (cols >= n_cols)
            if bad.any():
                e = int(np.flatnonzero(bad)[0])
                raise StructuralError(
                    f"triplet ({rows[e]}, {cols[e]}, {vals[e]}) outside "
                    f"{n_rows}x{n_cols} matrix"
                )
            finite = np.isfinite(vals)
            if not finite.all():
                e = int(np.flatnonzero(~finite)[0])
                raise StructuralError(
                    f"triplet ({rows[e]}, {cols[e]}, {vals[e]}) has a "
                    "non-finite value"
                )
        indptr, out_cols, out_vals = _kernels.coo_to_csr(rows, cols, vals, n_rows, n_cols)
        return cls(n_rows, n_cols, indptr, out_cols, out_vals)

    def row(self, r: int):
        """Column indices and values of row ``r`` (views, do not mutate)."""
        if not 0 <= r < self.n_rows:
            raise IndexError(f"row {r} out of range for {self.n_rows} rows")
        lo = self.index_pointers[r]
        hi = self.index_pointers[r + 1]
        return self.col_indices[lo:hi], self.data[lo:hi]

    def row_ids(self) -> np.ndarray:
        """Row index of every stored entry, in storage order."""
        return np.repeat(
            np.arange(self.n_rows, dtype=np.int64), np.diff(self.index_pointers)
        )

    def to_triplets(self):
        return self.row_ids(), self.col_indices.copy(), self.data.copy()

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n_rows, self.n_cols))
        if self.nnz:
            dense[self.row_ids(), self.col_indices] = self.data
        return dense

    def validate(self) -> None:
        """Check every structural invariant; raise StructuralError if broken."""
        ptr = self.index_pointers
        if ptr.shape[0] != self.n_rows + 1:
            raise StructuralError("index_pointers length must be n_rows + 1")
        if ptr[0] != 0 or ptr[-1] != self.nnz:
            raise StructuralError("index_pointers must start at 0 and end at nnz")
        if np.any(np.diff(ptr) < 0):
            raise StructuralError("index_pointers must be non-decreasing")
        if self.col_indices.shape[0] != self.data.shape[0]:
            raise StructuralError("col_indices and data must have equal length")
        if self.nnz:
            if self.col_indices.min() < 0 or self.col_indices.max() >= self.n_cols:
                raise StructuralError("column index out of range")
            rid = self.row_ids()
            same_row = rid[1:] == rid[:-1]
            if not np.all(self.col_indices[1:][same_row] > self.col_indices[:-1][same_row]):
                raise StructuralError("columns must be strictly increasing within rows")
            if np.any(self.data == 0.0):
                raise StructuralError("stored values must not be exactly zero")
            if not np.isfinite(self.data).all():
                raise StructuralError("stored values must be finite")


class CooBuilder:
    """Incremental triplet accumulator that finalizes into a CsrMatrix.

    Repeated (row, col) coordinates are legal and summed at finalize;
    entries that sum to exactly zero are dropped. Single-writer: use one
    builder per thread. The finalized CsrMatrix is immutable and safe to
    share.
    """

    def __init__(self, n_rows: int, n_cols: int):
        if n_rows < 0 or n_cols < 0:
            raise StructuralError("builder shape must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._rows: list[int] = []
        self._cols: list[int] = []
        self._vals: list[float] = []

    def __len__(self) -> int:
        return len(self._rows)

    def add(self, i: int, j: int, w: float) -> "CooBuilder":
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise StructuralError(
                f"triplet ({i}, {j}, {w}) outside {self.n_rows}x{self.n_cols} matrix"
            )
        w = float(w)
        if not np.isfinite(w):
            raise StructuralError(f"triplet ({i}, {j}, {w}) has a non-finite value")
        self._rows.append(i)
        self._cols.append(j)
        self._vals.append(w)
        return self

    def finalize(self) -> CsrMatrix:
        return CsrMatrix.from_triplets(
            np.asarray(self._rows, dtype=np.int64),
            np.asarray(self._cols, dtype=np.int64),
            np.asarray(self._vals, dtype=np.float64),
            self.n_rows,
            self.n_cols,
        )


def _require_square(a: CsrMatrix, what: str) -> None:
    if a.n_rows != a.n_cols:
        raise StructuralError(f"{what} requires a square matrix, got {a.n_rows}x{a.n_cols}")


def spmm(a: CsrMatrix, b: CsrMatrix) -> CsrMatrix:
    """Exact sparse product ``a @ b``."""
    if a.n_cols != b.n_rows:
        raise StructuralError(
            f"cannot multiply {a.n_rows}x{a.n_cols} by {b.n_rows}x{b.n_cols}"
        )
    indptr, cols, vals = _kernels.spmm_kernel(
        a.index_pointers,
        a.col_indices,
        a.data,
        b.index_pointers,
        b.col_indices,
        b.data,
        b.n_cols,
    )
    return CsrMatrix(a.n_rows, b.n_cols, indptr, cols, vals)


def add_identity(a: CsrMatrix) -> CsrMatrix:
    """Return ``a + I`` (adds 1.0 to every diagonal entry)."""
    _require_square(a, "add_identity")
    indptr, cols, vals = _kernels.add_identity_kernel(
        a.index_pointers, a.col_indices, a.data, a.n_rows
    )
    return CsrMatrix(a.n_rows, a.n_cols, indptr, cols, vals)


def degree_vector(a: CsrMatrix) -> np.ndarray:
    """Weighted degree of every row (sum of stored values per row)."""
    _require_square(a, "degree_vector")
    return np.bincount(a.row_ids(), weights=a.data, minlength=a.n_rows)


def laplacian_normalize(a: CsrMatrix, degrees: np.ndarray) -> CsrMatrix:
    """Scale every entry e_ij to e_ij * s_i * s_j with s_i = d_i**-0.5.

    Rows with zero degree get scale factor 0 (isolated-node convention),
    so their entries are pruned rather than turned into inf/NaN.
    """
    _require_square(a, "laplacian_normalize")
    degrees = np.asarray(degrees, dtype=np.float64)
    if degrees.shape[0] != a.n_rows:
        raise StructuralError(
            f"degree vector length {degrees.shape[0]} != matrix size {a.n_rows}"
        )
    if np.any(degrees < 0):
        raise NumericalDomainError("negative degree under Laplacian normalization")
    scale = np.zeros(a.n_rows)
    positive = degrees > 0
    scale[positive] = 1.0 / np.sqrt(degrees[positive])
    rid = a.row_ids()
    values = a.data * scale[rid] * scale[a.col_indices]
    if values.size and values.all():
        # nothing scaled to zero, structure unchanged
        return CsrMatrix(
            a.n_rows, a.n_cols, a.index_pointers.copy(), a.col_indices.copy(), values
        )
    keep = values != 0.0
    indptr = np.zeros(a.n_rows + 1, np.int64)
    np.cumsum(np.bincount(rid[keep], minlength=a.n_rows), out=indptr[1:])
    return CsrMatrix(a.n_rows, a.n_cols, indptr, a.col_indices[keep], values[keep])
