"""Pairwise column coherences, mutual coherence, and the coherence index.

The coherence index of a matrix is the smallest count p such that the p
largest pairwise coherences sum to at least 1. It drives a sharper spark
lower bound than mutual coherence alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import NotUnderdetermined, TooFewColumns
from .matrix import DenseMatrix, gram_matrix


@dataclass(frozen=True)
class CoherenceProfile:
    """Sorted pairwise coherences of a matrix plus derived summaries.

    coherences holds all cols*(cols-1)/2 off-diagonal Gram magnitudes in
    non-increasing order; prefix_sums[i] is the running sum of the first
    i+1 of them; mutual_coherence is coherences[0]; coherence_index is the
    smallest p with prefix_sums[p-1] >= 1 - index_slack, or None when even
    the full sum falls short (only possible when the whole matrix is close
    to orthogonal).
    """

    pair_count: int
    coherences: tuple[float, ...]
    prefix_sums: tuple[float, ...]
    mutual_coherence: float
    coherence_index: int | None


def pairwise_coherences(matrix: DenseMatrix) -> np.ndarray:
    """All off-diagonal coherences |a_k . a_j| / (|a_k| |a_j|), sorted non-increasing."""
    if matrix.cols < 2:
        raise TooFewColumns(f"need at least 2 columns, got {matrix.cols}")
    g = gram_matrix(matrix)
    iu = np.triu_indices(matrix.cols, k=1)
    vals = np.abs(g[iu])
    # Rounding can push a coherence a few ulps past 1 (e.g. duplicated
    # columns); clamp so downstream thresholds see exact 1.
    np.minimum(vals, 1.0, out=vals)
    return np.sort(vals)[::-1]


def smallest_qualifying_prefix(prefix_sums: np.ndarray, slack: float) -> int | None:
    """Smallest p (1-based) with prefix_sums[p-1] >= 1 - slack, else None."""
    target = 1.0 - slack
    pos = int(np.searchsorted(prefix_sums, target, side="left"))
    if pos >= len(prefix_sums):
        return None
    return pos + 1


def coherence_profile(
    matrix: DenseMatrix,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CoherenceProfile:
    """Compute the full sorted-coherence profile of a matrix."""
    vals = pairwise_coherences(matrix)
    prefix = np.cumsum(vals)
    index = smallest_qualifying_prefix(prefix, tolerances.index_slack)
    return CoherenceProfile(
        pair_count=int(vals.size),
        coherences=tuple(float(v) for v in vals),
        prefix_sums=tuple(float(v) for v in prefix),
        mutual_coherence=float(vals[0]),
        coherence_index=index,
    )


def mutual_coherence(matrix: DenseMatrix) -> float:
    """Largest pairwise coherence of the matrix."""
    return float(pairwise_coherences(matrix)[0])


def coherence_index(
    matrix: DenseMatrix,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> int | None:
    """Smallest p whose top-p coherence sum reaches 1, or None if none does."""
    return coherence_profile(matrix, tolerances).coherence_index


def top_coherence_sum(matrix: DenseMatrix, count: int | None = None) -> float:
    """Sum of the largest `count` pairwise coherences of a wide matrix.

    Defaults count to rows: with more columns than rows that sum always
    reaches 1, which is what makes the coherence index well defined.
    Requires rows < cols.
    """
    if matrix.rows >= matrix.cols:
        raise NotUnderdetermined(
            f"matrix must have rows < cols, got {matrix.rows}x{matrix.cols}"
        )
    if count is None:
        count = matrix.rows
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    vals = pairwise_coherences(matrix)
    prefix = np.cumsum(vals)
    take = min(count, vals.size)
    return float(prefix[take - 1])
