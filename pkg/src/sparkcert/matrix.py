"""Validated dense matrix wrapper and basic linear-algebra helpers.

All downstream analysis assumes a finite float64 matrix with no zero
columns; DenseMatrix enforces that once, at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import DimensionMismatch, IndexOutOfRange, NonFiniteEntry, ZeroColumn


def _column_norm(col: np.ndarray) -> float:
    # fsum gives a correctly rounded sum of squares; naive accumulation can
    # be off by 1 ulp, which is enough to flip borderline coherence sums.
    return math.sqrt(math.fsum(float(x) * float(x) for x in col))


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """A finite float64 matrix with rows >= 1, cols >= 1, and no zero columns.

    data is C-contiguous and marked read-only; column_norms[j] is the exact
    rounded Euclidean norm of column j.
    """

    data: np.ndarray
    column_norms: tuple[float, ...] = field(repr=False)

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> np.ndarray:
        if not 0 <= j < self.cols:
            raise IndexOutOfRange(f"column index {j} outside [0, {self.cols})")
        return self.data[:, j]


def build_matrix(
    values: Sequence[Sequence[float]] | np.ndarray,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DenseMatrix:
    """Validate a 2-D array of numbers and wrap it as a DenseMatrix.

    Raises DimensionMismatch for non-2-D or empty input, NonFiniteEntry if
    any entry is NaN or infinite, and ZeroColumn (with the 0-based column
    index) if any column norm is <= zero_column_tol.
    """
    arr = np.array(values, dtype=np.float64, order="C")
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"matrix must be at least 1x1, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr))[0]
        raise NonFiniteEntry(f"entry ({bad[0]}, {bad[1]}) is not finite")
    norms = tuple(_column_norm(arr[:, j]) for j in range(arr.shape[1]))
    for j, norm in enumerate(norms):
        if norm <= tolerances.zero_column_tol:
            raise ZeroColumn(j)
    arr.setflags(write=False)
    return DenseMatrix(data=arr, column_norms=norms)


def normalize_columns(matrix: DenseMatrix) -> DenseMatrix:
    """Return a copy with every column scaled to unit Euclidean norm."""
    scaled = matrix.data / np.asarray(matrix.column_norms, dtype=np.float64)
    scaled = np.ascontiguousarray(scaled)
    norms = tuple(_column_norm(scaled[:, j]) for j in range(scaled.shape[1]))
    scaled.setflags(write=False)
    return DenseMatrix(data=scaled, column_norms=norms)


def gram_matrix(matrix: DenseMatrix) -> np.ndarray:
    """Gram matrix of the column-normalized input, symmetrized exactly.

    Entry (k, j) is the cosine of the angle between columns k and j; the
    diagonal is forced to exactly 1.
    """
    norms = np.asarray(matrix.column_norms, dtype=np.float64)
    unit = matrix.data / norms
    g = unit.T @ unit
    g = (g + g.T) / 2.0
    np.fill_diagonal(g, 1.0)
    return g


def numerical_rank(
    arr: np.ndarray,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> int:
    """Number of singular values above rank_tol_factor * sigma_max * max(shape)."""
    a = np.asarray(arr, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array, got ndim={a.ndim}")
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cutoff = tolerances.rank_tol_factor * float(s[0]) * max(a.shape)
    return int(np.count_nonzero(s > cutoff))


def column_submatrix(matrix: DenseMatrix, indices: Sequence[int]) -> np.ndarray:
    """Columns of the matrix selected by strictly increasing 0-based indices."""
    idx = list(indices)
    if not idx:
        raise DimensionMismatch("at least one column index is required")
    prev = -1
    for j in idx:
        if not 0 <= j < matrix.cols:
            raise IndexOutOfRange(f"column index {j} outside [0, {matrix.cols})")
        if j <= prev:
            raise DimensionMismatch("column indices must be strictly increasing")
        prev = j
    return np.ascontiguousarray(matrix.data[:, idx])
