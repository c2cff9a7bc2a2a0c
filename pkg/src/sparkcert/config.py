"""Tolerances and resource limits shared by the numeric routines."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

DEFAULT_ZERO_COLUMN_TOL = 1e-12
DEFAULT_ZERO_ENTRY_TOL = 1e-9
DEFAULT_RESIDUAL_TOL = 1e-9
# Multiplied by sigma_max * max(rows, cols) to get the rank cutoff; the
# default matches numpy.linalg.matrix_rank's tolerance choice.
DEFAULT_RANK_TOL_FACTOR = float(np.finfo(np.float64).eps)
DEFAULT_INDEX_SLACK = 0.0
DEFAULT_SEARCH_BUDGET = 2_000_000

BUDGET_ENV_VAR = "SPARK_CERT_BUDGET"
BACKEND_ENV_VAR = "SPARK_CERT_BACKEND"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric knobs for construction, rank tests, and certification.

    zero_column_tol: columns with norm <= this are rejected at build time.
    zero_entry_tol: entries with |x| <= this count as zero for the l0 norm.
    residual_tol: max ||A x - b||_2 for x to count as a solution.
    rank_tol_factor: scale factor for the singular-value rank cutoff.
    index_slack: additive slack when testing coherence prefix sums >= 1.
    """

    zero_column_tol: float = DEFAULT_ZERO_COLUMN_TOL
    zero_entry_tol: float = DEFAULT_ZERO_ENTRY_TOL
    residual_tol: float = DEFAULT_RESIDUAL_TOL
    rank_tol_factor: float = DEFAULT_RANK_TOL_FACTOR
    index_slack: float = DEFAULT_INDEX_SLACK

    def __post_init__(self) -> None:
        for name in ("zero_column_tol", "zero_entry_tol", "residual_tol", "rank_tol_factor"):
            value = getattr(self, name)
            if not (value >= 0.0):
                raise ValueError(f"{name} must be >= 0, got {value!r}")
        if not (self.index_slack >= 0.0):
            raise ValueError(f"index_slack must be >= 0, got {self.index_slack!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


def default_search_budget() -> int:
    """Subset budget for exhaustive searches, overridable via the environment."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_SEARCH_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value
