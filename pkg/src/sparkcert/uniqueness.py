"""Sparsest-solution uniqueness certificates and a brute-force oracle.

A candidate solution x of A x = b is certifiably the unique sparsest
solution when its support size stays strictly below half of (a lower
bound on) 1 + spark(A). Three criteria apply, strongest first: the exact
spark, the coherence-index bound, and the mutual-coherence bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .coherence import coherence_profile
from .config import DEFAULT_TOLERANCES, ToleranceConfig, default_search_budget
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NonFiniteEntry,
    NoSolutionWithinKmax,
)
from .matrix import DenseMatrix
from .spark import SparkValue

CRITERION_SPARK = "spark"
CRITERION_INDEX = "coherence_index"
CRITERION_COHERENCE = "mutual_coherence"


class Verdict(str, Enum):
    UNIQUE_BY_SPARK = "unique_by_spark"
    UNIQUE_BY_INDEX = "unique_by_coherence_index"
    UNIQUE_BY_COHERENCE = "unique_by_mutual_coherence"
    INCONCLUSIVE = "inconclusive"
    NOT_A_SOLUTION = "not_a_solution"


@dataclass(frozen=True)
class UniquenessCertificate:
    """Certificate for one candidate solution.

    spark_threshold is spark/2 when the exact spark is known and finite,
    None otherwise (with an infinite exact spark the criterion passes
    outright and the threshold stays None); index_threshold is
    (1 + coherence_index)/2, or inf when the index is absent;
    coherence_threshold is (1 + 1/(mutual coherence))/2, or None when
    the mutual coherence is 0.
    criteria_passed names every criterion whose strict inequality held;
    verdict reports the strongest of them.
    """

    l0: int
    residual: float
    spark_threshold: float | None
    index_threshold: float
    coherence_threshold: float | None
    criteria_passed: frozenset[str]
    verdict: Verdict


def l0_norm(x: np.ndarray, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> int:
    """Number of entries with magnitude above zero_entry_tol."""
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntry("vector contains NaN or infinity")
    return int(np.count_nonzero(np.abs(arr) > tolerances.zero_entry_tol))


def _residual_norm(matrix: DenseMatrix, x: np.ndarray, b: np.ndarray) -> float:
    r = matrix.data @ x - b
    return float(math.sqrt(math.fsum(float(v) * float(v) for v in r)))


def certify(
    matrix: DenseMatrix,
    x: np.ndarray,
    b: np.ndarray,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
    exact: SparkValue | None = None,
) -> UniquenessCertificate:
    """Certify whether x is the unique sparsest solution of A x = b.

    Each criterion uses the strict inequality l0 < threshold. Pass the
    exact spark (when known) to unlock the strongest criterion; an
    infinite exact spark certifies any actual solution.
    """
    xv = np.asarray(x, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if xv.ndim != 1 or xv.shape[0] != matrix.cols:
        raise DimensionMismatch(
            f"x must be a vector of length {matrix.cols}, got shape {xv.shape}"
        )
    if bv.ndim != 1 or bv.shape[0] != matrix.rows:
        raise DimensionMismatch(
            f"b must be a vector of length {matrix.rows}, got shape {bv.shape}"
        )
    if not np.all(np.isfinite(xv)):
        raise NonFiniteEntry("x contains NaN or infinity")
    if not np.all(np.isfinite(bv)):
        raise NonFiniteEntry("b contains NaN or infinity")

    sparsity = l0_norm(xv, tolerances)
    residual = _residual_norm(matrix, xv, bv)

    profile = coherence_profile(matrix, tolerances)
    if profile.coherence_index is None:
        index_threshold = math.inf
    else:
        index_threshold = (1.0 + profile.coherence_index) / 2.0
    if profile.mutual_coherence == 0.0:
        coherence_threshold: float | None = None
    else:
        coherence_threshold = (1.0 + 1.0 / profile.mutual_coherence) / 2.0

    spark_threshold: float | None = None
    spark_passes = False
    if exact is not None:
        if exact.is_finite:
            spark_threshold = exact.value / 2.0
            spark_passes = sparsity < spark_threshold
        else:
            # full column rank: the system has at most one solution at all
            spark_passes = True

    if residual > tolerances.residual_tol:
        return UniquenessCertificate(
            l0=sparsity,
            residual=residual,
            spark_threshold=spark_threshold,
            index_threshold=index_threshold,
            coherence_threshold=coherence_threshold,
            criteria_passed=frozenset(),
            verdict=Verdict.NOT_A_SOLUTION,
        )

    passed = set()
    if spark_passes:
        passed.add(CRITERION_SPARK)
    if sparsity < index_threshold:
        passed.add(CRITERION_INDEX)
    if coherence_threshold is not None and sparsity < coherence_threshold:
        passed.add(CRITERION_COHERENCE)

    if CRITERION_SPARK in passed:
        verdict = Verdict.UNIQUE_BY_SPARK
    elif CRITERION_INDEX in passed:
        verdict = Verdict.UNIQUE_BY_INDEX
    elif CRITERION_COHERENCE in passed:
        verdict = Verdict.UNIQUE_BY_COHERENCE
    else:
        verdict = Verdict.INCONCLUSIVE
    return UniquenessCertificate(
        l0=sparsity,
        residual=residual,
        spark_threshold=spark_threshold,
        index_threshold=index_threshold,
        coherence_threshold=coherence_threshold,
        criteria_passed=frozenset(passed),
        verdict=verdict,
    )


@dataclass(frozen=True)
class OracleSolution:
    """One sparsest solution: its support columns and their coefficients."""

    support: tuple[int, ...]
    coefficients: tuple[float, ...]

    def to_vector(self, cols: int) -> np.ndarray:
        x = np.zeros(cols, dtype=np.float64)
        for j, c in zip(self.support, self.coefficients):
            x[j] = c
        return x


@dataclass(frozen=True)
class OracleResult:
    """All solutions found at the minimal support size."""

    sparsity: int
    solutions: tuple[OracleSolution, ...]
    supports_examined: int


def sparsest_oracle(
    matrix: DenseMatrix,
    b: np.ndarray,
    k_max: int,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
    budget: int | None = None,
) -> OracleResult:
    """Brute-force minimal-support solutions of A x = b, for validation.

    Enumerates supports by size 0, 1, ..., k_max; a support is accepted
    when its least-squares fit has residual <= residual_tol and every
    coefficient exceeds zero_entry_tol in magnitude, so the reported
    sparsity is exactly the support size. Stops at the first size with
    any accepted support and returns all accepted supports of that size.
    """
    if budget is None:
        budget = default_search_budget()
    bv = np.asarray(b, dtype=np.float64)
    if bv.ndim != 1 or bv.shape[0] != matrix.rows:
        raise DimensionMismatch(
            f"b must be a vector of length {matrix.rows}, got shape {bv.shape}"
        )
    if not np.all(np.isfinite(bv)):
        raise NonFiniteEntry("b contains NaN or infinity")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    k_max = min(k_max, matrix.cols)

    examined = 0
    b_norm = float(math.sqrt(math.fsum(float(v) * float(v) for v in bv)))
    for size in range(k_max + 1):
        found: list[OracleSolution] = []
        if size == 0:
            examined += 1
            if b_norm <= tolerances.residual_tol:
                found.append(OracleSolution(support=(), coefficients=()))
        else:
            for support in combinations(range(matrix.cols), size):
                if examined >= budget:
                    raise BudgetExceeded(examined)
                examined += 1
                sub = matrix.data[:, support]
                coef, *_ = np.linalg.lstsq(sub, bv, rcond=None)
                residual = sub @ coef - bv
                res_norm = float(
                    math.sqrt(math.fsum(float(v) * float(v) for v in residual))
                )
                if res_norm > tolerances.residual_tol:
                    continue
                if np.any(np.abs(coef) <= tolerances.zero_entry_tol):
                    continue
                found.append(
                    OracleSolution(
                        support=tuple(int(j) for j in support),
                        coefficients=tuple(float(c) for c in coef),
                    )
                )
        if found:
            return OracleResult(
                sparsity=size,
                solutions=tuple(found),
                supports_examined=examined,
            )
    raise NoSolutionWithinKmax(
        f"no solution with support size <= {k_max} at residual_tol "
        f"{tolerances.residual_tol}"
    )
