import numpy as np
import pytest

from aerial_kpi.evaluation.histogram import error_histogram, error_summary
from aerial_kpi.exceptions import DomainError


def test_error_summary():
    assert error_summary([1.0, 2.0, 3.0]) == pytest.approx((2.0, 1.0))
    assert error_summary([4.0]) == (4.0, 0.0)


@pytest.mark.parametrize("errors", [[], [1.0, np.nan]], ids=["empty", "nan"])
def test_error_summary_domain(errors):
    with pytest.raises(DomainError):
        error_summary(errors)


def test_error_histogram_aligned_edges():
    histogram = error_histogram([0.2, 0.7, 1.3, -0.4], bin_width=1.0)
    np.testing.assert_allclose(histogram.bin_edges, [-1.0, 0.0, 1.0, 2.0])
    assert histogram.counts.tolist() == [1, 2, 1]
    assert histogram.n == 4


def test_fitted_gaussian_recovers_the_error_spread():
    errors = np.random.default_rng(8).normal(0.0, 5.0, 100_000)
    histogram = error_histogram(errors)

    assert histogram.fitted_std_db == pytest.approx(5.0, abs=0.1)
    assert histogram.fitted_mean_db == pytest.approx(0.0, abs=0.1)
    assert histogram.n == errors.size


def test_error_histogram_maximum_on_an_edge():
    histogram = error_histogram([0.0, 2.0], bin_width=1.0)
    assert histogram.counts.tolist() == [1, 1]


def test_error_histogram_counts_every_error():
    errors = np.random.default_rng(0).normal(-2.0, 6.0, 1000)
    histogram = error_histogram(errors, bin_width=0.5)
    assert histogram.n == 1000
    assert histogram.fitted_mean_db == pytest.approx(float(np.mean(errors)))
    assert histogram.fitted_std_db == pytest.approx(float(np.std(errors, ddof=1)))
    assert histogram.gaussian_counts().sum() == pytest.approx(1000.0, rel=0.01)


def test_single_error_histogram():
    histogram = error_histogram([1.5])
    assert histogram.counts.tolist() == [1]
    assert histogram.fitted_std_db == 0.0
    assert histogram.gaussian_counts().tolist() == [1.0]


def test_error_histogram_bin_width():
    with pytest.raises(DomainError):
        error_histogram([1.0, 2.0], bin_width=0.0)


def test_error_histogram_document():
    document = error_histogram([0.2, 0.7]).to_dict()
    assert document["counts"] == [2]
    assert document["bin_edges"] == [0.0, 1.0]
