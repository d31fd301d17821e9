"""aerial_kpi.evaluation.histogram"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from aerial_kpi.exceptions import DomainError

DEFAULT_BIN_WIDTH_DB = 1.0


@dataclass(frozen=True, eq=False)
class ErrorHistogram:
    """Prediction error histogram with a moment-fitted gaussian"""

    bin_edges: np.ndarray
    counts: np.ndarray
    fitted_mean_db: float
    fitted_std_db: float

    @property
    def n(self) -> int:
        """
        Number of binned errors

        Args:
            N/A

        Returns:
            int: sum of the bin counts

        Raises:
            N/A

        """
        return int(self.counts.sum())

    def gaussian_counts(self) -> np.ndarray:
        """
        Counts per bin expected under the fitted gaussian

        Args:
            N/A

        Returns:
            ndarray: expected counts, all mass in the mean's bin when the std is 0

        Raises:
            N/A

        """
        if self.fitted_std_db == 0:
            inside = (self.bin_edges[:-1] <= self.fitted_mean_db) & (
                self.fitted_mean_db <= self.bin_edges[1:]
            )
            expected = np.zeros(self.counts.size)
            expected[np.argmax(inside)] = self.n
            return expected
        cdf = norm.cdf(self.bin_edges, loc=self.fitted_mean_db, scale=self.fitted_std_db)
        return self.n * np.diff(cdf)

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready histogram

        Args:
            N/A

        Returns:
            dict: bin edges, counts and the fitted gaussian

        Raises:
            N/A

        """
        return {
            "bin_edges": self.bin_edges.tolist(),
            "counts": self.counts.tolist(),
            "fitted_mean_db": self.fitted_mean_db,
            "fitted_std_db": self.fitted_std_db,
        }


def error_summary(errors: Sequence[float]) -> Tuple[float, float]:
    """
    Mean and sample standard deviation of prediction errors

    Args:
        errors: errors in dB

    Returns:
        tuple: (mean, std with n - 1 denominator, 0 for a single error)

    Raises:
        DomainError: if errors is empty or non-finite

    """
    values = np.asarray(errors, dtype=float).ravel()
    if not values.size:
        raise DomainError("no errors to summarize")
    if not np.all(np.isfinite(values)):
        raise DomainError("errors must be finite")
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return float(np.mean(values)), std


def error_histogram(
    errors: Sequence[float], bin_width: float = DEFAULT_BIN_WIDTH_DB
) -> ErrorHistogram:
    """
    Histogram on bin_width-aligned edges plus a gaussian fitted by moments

    Args:
        errors: prediction errors in dB
        bin_width: bin width in dB

    Returns:
        ErrorHistogram: counts summing to len(errors)

    Raises:
        DomainError: if bin_width is not positive

    """
    if not bin_width > 0:
        raise DomainError("bin_width must be > 0")
    mean, std = error_summary(errors)
    values = np.asarray(errors, dtype=float).ravel()

    low = math.floor(values.min() / bin_width) * bin_width
    n_bins = max(1, math.ceil((values.max() - low) / bin_width))
    edges = low + bin_width * np.arange(n_bins + 1)
    # floating edges may fall just short of the maximum
    edges[-1] = max(edges[-1], values.max())
    counts, _ = np.histogram(values, bins=edges)
    return ErrorHistogram(
        bin_edges=edges, counts=counts, fitted_mean_db=mean, fitted_std_db=std
    )
