"""Coherence-based spark bounds and sparse-solution uniqueness certificates.

The library analyzes a dense real matrix in three layers: the coherence
profile (pairwise column coherences, the mutual coherence, and the
coherence index), spark lower bounds derived from that profile together
with an exact exhaustive spark search, and uniqueness certificates that
decide when a candidate solution of A x = b is provably the sparsest one.
"""

from ._version import __version__
from .coherence import (
    CoherenceProfile,
    coherence_index,
    coherence_profile,
    mutual_coherence,
    pairwise_coherences,
    top_coherence_sum,
)
from .config import ToleranceConfig, default_search_budget
from .errors import (
    BudgetExceeded,
    CliUsageError,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidN,
    MatrixParseError,
    NonFiniteEntry,
    NoSolutionWithinKmax,
    NotSquare,
    NotUnderdetermined,
    NotUnitDiagonal,
    RaggedRows,
    ReportParseError,
    SparkCertError,
    TooFewColumns,
    TruncatedData,
    UnparseableNumber,
    UnsupportedHeader,
    ZeroColumn,
)
from .formats import (
    parse_csv,
    parse_matrix_auto,
    parse_matrix_market,
    parse_vector,
    write_csv,
    write_matrix_market,
    write_vector,
)
from .generators import random_matrix, spiked_identity
from .matrix import (
    DenseMatrix,
    build_matrix,
    column_submatrix,
    gram_matrix,
    normalize_columns,
    numerical_rank,
)
from .report import (
    AnalysisReport,
    CoherenceSummary,
    MatrixMeta,
    build_report,
    render_text,
    report_from_json,
    report_to_json,
)
from .spark import (
    SparkReport,
    SparkSearchResult,
    SparkValue,
    analyze_spark,
    coherence_index_lower_bound,
    exact_spark,
    gram_minor,
    is_diagonally_dominant,
    mutual_coherence_lower_bound,
)
from .uniqueness import (
    OracleResult,
    OracleSolution,
    UniquenessCertificate,
    Verdict,
    certify,
    l0_norm,
    sparsest_oracle,
)

__all__ = [
    "__version__",
    "AnalysisReport",
    "BudgetExceeded",
    "CliUsageError",
    "CoherenceProfile",
    "CoherenceSummary",
    "DenseMatrix",
    "DimensionMismatch",
    "IndexOutOfRange",
    "InvalidN",
    "MatrixMeta",
    "MatrixParseError",
    "NoSolutionWithinKmax",
    "NonFiniteEntry",
    "NotSquare",
    "NotUnderdetermined",
    "NotUnitDiagonal",
    "OracleResult",
    "OracleSolution",
    "RaggedRows",
    "ReportParseError",
    "SparkCertError",
    "SparkReport",
    "SparkSearchResult",
    "SparkValue",
    "ToleranceConfig",
    "TooFewColumns",
    "TruncatedData",
    "UniquenessCertificate",
    "UnparseableNumber",
    "UnsupportedHeader",
    "Verdict",
    "ZeroColumn",
    "analyze_spark",
    "build_matrix",
    "build_report",
    "certify",
    "coherence_index",
    "coherence_index_lower_bound",
    "coherence_profile",
    "column_submatrix",
    "default_search_budget",
    "exact_spark",
    "gram_matrix",
    "gram_minor",
    "is_diagonally_dominant",
    "l0_norm",
    "mutual_coherence",
    "mutual_coherence_lower_bound",
    "normalize_columns",
    "numerical_rank",
    "pairwise_coherences",
    "parse_csv",
    "parse_matrix_auto",
    "parse_matrix_market",
    "parse_vector",
    "random_matrix",
    "render_text",
    "report_from_json",
    "report_to_json",
    "sparsest_oracle",
    "spiked_identity",
    "top_coherence_sum",
    "write_csv",
    "write_matrix_market",
    "write_vector",
]
