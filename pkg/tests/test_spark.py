import math

import numpy as np
import pytest

from sparkcert import (
    BudgetExceeded,
    NotSquare,
    NotUnitDiagonal,
    SparkValue,
    TooFewColumns,
    analyze_spark,
    build_matrix,
    coherence_index_lower_bound,
    exact_spark,
    gram_minor,
    is_diagonally_dominant,
    mutual_coherence_lower_bound,
    numerical_rank,
    random_matrix,
    spiked_identity,
)


def test_spark_value_validation():
    assert SparkValue(kind="finite", value=3).is_finite
    assert not SparkValue(kind="infinite").is_finite
    with pytest.raises(ValueError):
        SparkValue(kind="finite")
    with pytest.raises(ValueError):
        SparkValue(kind="infinite", value=2)
    with pytest.raises(ValueError):
        SparkValue(kind="bogus")


def test_mutual_coherence_bound_values(identity3, three_column_pair):
    assert mutual_coherence_lower_bound(identity3) is None
    assert mutual_coherence_lower_bound(spiked_identity(7)) == pytest.approx(
        2.25, abs=1e-12
    )
    dup = build_matrix([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    assert mutual_coherence_lower_bound(dup) == pytest.approx(2.0, abs=1e-12)
    assert mutual_coherence_lower_bound(three_column_pair) == pytest.approx(
        1.0 + math.sqrt(2.0), abs=1e-12
    )


def test_index_bound_values(identity3):
    assert coherence_index_lower_bound(identity3) == math.inf
    assert coherence_index_lower_bound(spiked_identity(10)) == 3
    assert coherence_index_lower_bound(spiked_identity(50)) == 5


def test_exact_spark_spiked_family():
    for n in (2, 3, 5):
        result = exact_spark(spiked_identity(n))
        assert result.spark == SparkValue(kind="finite", value=n + 1)
        assert result.witness == tuple(range(n + 1))


def test_exact_spark_duplicate_column():
    m = build_matrix([[1.0, 0.0, 2.0], [0.0, 1.0, 0.0]])
    result = exact_spark(m)
    assert result.spark.value == 2
    assert result.witness == (0, 2)


def test_exact_spark_full_rank_square(identity3):
    result = exact_spark(identity3)
    assert result.spark == SparkValue(kind="infinite")
    assert result.witness is None
    assert result.subsets_examined == 7


def test_exact_spark_three_column_pair(three_column_pair):
    # no pair is dependent; all three columns together are
    result = exact_spark(three_column_pair)
    assert result.spark.value == 3
    assert result.witness == (0, 1, 2)


def test_exact_spark_budget():
    m = spiked_identity(6)
    with pytest.raises(BudgetExceeded) as exc:
        exact_spark(m, budget=10)
    assert exc.value.subsets_examined == 10
    # a budget that exactly covers the search succeeds
    full = exact_spark(m)
    again = exact_spark(m, budget=full.subsets_examined)
    assert again == full


def test_exact_spark_budget_env(monkeypatch):
    monkeypatch.setenv("SPARK_CERT_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        exact_spark(spiked_identity(6))
    monkeypatch.setenv("SPARK_CERT_BUDGET", "0")
    with pytest.raises(ValueError):
        exact_spark(spiked_identity(6))
    monkeypatch.setenv("SPARK_CERT_BUDGET", "junk")
    with pytest.raises(ValueError):
        exact_spark(spiked_identity(6))


def test_exact_spark_permutation_and_scaling_invariance():
    for seed in range(5):
        m = random_matrix(4, 7, seed=seed)
        base = exact_spark(m).spark
        perm = build_matrix(m.data[:, ::-1])
        assert exact_spark(perm).spark == base
        scaled = build_matrix(m.data * np.linspace(0.5, 4.0, 7))
        assert exact_spark(scaled).spark == base


def test_serial_parallel_identical_small():
    for seed in range(5):
        m = random_matrix(5, 9, seed=seed)
        assert exact_spark(m, workers=1) == exact_spark(m, workers=4)


def test_serial_parallel_identical_chunked():
    # large enough that size-4 enumeration really splits into chunks
    m = random_matrix(4, 24, seed=77)
    serial = exact_spark(m, workers=1)
    parallel = exact_spark(m, workers=4)
    assert serial == parallel
    assert serial.subsets_examined > 8192


def test_analyze_spark_requires_two_columns():
    with pytest.raises(TooFewColumns):
        analyze_spark(build_matrix([[1.0], [0.0]]))


def test_analyze_spark_spiked_n10():
    report = analyze_spark(spiked_identity(10), compute_exact=True)
    assert report.mutual_coherence_bound == pytest.approx(2.25, abs=1e-12)
    assert report.coherence_index_bound == 3
    assert report.exact == SparkValue(kind="finite", value=11)
    assert report.trivial_upper == 11
    assert not report.search_budget_hit
    assert report.witness == tuple(range(11))


def test_analyze_spark_identity(identity3):
    report = analyze_spark(identity3, compute_exact=True)
    assert report.mutual_coherence_bound is None
    assert report.coherence_index_bound == math.inf
    assert report.exact == SparkValue(kind="infinite")
    assert report.trivial_upper is None


def test_analyze_spark_three_column_pair(three_column_pair):
    report = analyze_spark(three_column_pair, compute_exact=True)
    assert report.mutual_coherence_bound == pytest.approx(
        1.0 + math.sqrt(2.0), abs=1e-12
    )
    assert report.coherence_index_bound == 3
    assert report.exact.value == 3


def test_analyze_spark_skips_exact_by_default(three_column_pair):
    report = analyze_spark(three_column_pair)
    assert report.exact is None
    assert report.witness is None
    assert report.subsets_examined is None
    assert not report.search_budget_hit


def test_analyze_spark_budget_hit_flag():
    report = analyze_spark(spiked_identity(8), compute_exact=True, budget=5)
    assert report.search_budget_hit
    assert report.exact is None
    assert report.subsets_examined == 5


def test_bound_chain_on_random_matrices():
    for seed in range(30):
        m = random_matrix(4, 8, seed=seed)
        report = analyze_spark(m, compute_exact=True)
        assert report.exact is not None and report.exact.is_finite
        assert report.exact.value >= report.coherence_index_bound
        assert report.exact.value >= report.mutual_coherence_bound
        assert report.exact.value <= report.trivial_upper


def test_infinite_index_bound_implies_infinite_spark():
    for seed in range(10):
        q, _ = np.linalg.qr(
            np.random.Generator(np.random.PCG64(seed)).standard_normal((5, 5))
        )
        m = build_matrix(q)
        if coherence_index_lower_bound(m) == math.inf:
            assert exact_spark(m).spark == SparkValue(kind="infinite")


def test_is_diagonally_dominant_basic():
    assert is_diagonally_dominant(np.array([[1.0, 0.3], [0.3, 1.0]]))
    assert not is_diagonally_dominant(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_is_diagonally_dominant_validation():
    with pytest.raises(NotSquare):
        is_diagonally_dominant(np.ones((2, 3)))
    with pytest.raises(NotSquare):
        is_diagonally_dominant(np.empty((0, 0)))
    with pytest.raises(NotUnitDiagonal):
        is_diagonally_dominant(np.array([[2.0, 0.1], [0.1, 1.0]]))


def test_spiked_gram_minor_not_dominant():
    # all three columns of the n=2 member: off-diagonal row sums 0.8, 0.6, 1.4
    m = spiked_identity(2)
    g = gram_minor(m, (0, 1, 2))
    assert not is_diagonally_dominant(g)
    row_sums = np.abs(g).sum(axis=1) - 1.0
    assert np.allclose(sorted(row_sums), [0.6, 0.8, 1.4])


def test_dominant_minor_has_full_rank():
    count = 0
    for seed in range(40):
        m = random_matrix(6, 9, seed=seed)
        minor = gram_minor(m, (0, 2, 5))
        if is_diagonally_dominant(minor):
            count += 1
            sub = m.data[:, [0, 2, 5]]
            assert numerical_rank(sub) == 3
    assert count > 0
