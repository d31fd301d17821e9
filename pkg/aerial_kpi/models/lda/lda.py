"""aerial_kpi.models.lda.lda"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from aerial_kpi.exceptions import DomainError, SingularCovariance

LOG = logging.getLogger(__name__)

HIGH_RANK = 4
LOW_RANK = 1
MAX_CONDITION = 1e12
RIDGE = 1e-6

RankPoint = Tuple[float, float, float, int]


@dataclass(frozen=True, eq=False)
class LdaModel:
    """
    Decision plane w . (d_m, azimuth_deg, elevation_deg) + bias

    Points with a score >= 0, the plane itself included, get class_for_positive_side.
    """

    weights: np.ndarray
    bias: float
    class_for_positive_side: int = HIGH_RANK
    class_for_negative_side: int = LOW_RANK
    ridge_applied: bool = False

    def __post_init__(self) -> None:
        """
        Validate the plane

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if the weight vector is zero or not a 3-vector

        """
        if self.weights.shape != (3,) or not np.any(self.weights != 0):
            raise DomainError("lda weights must be a nonzero 3-vector")

    def score(self, X: np.ndarray) -> np.ndarray:
        """
        Signed plane score

        Args:
            X: shape (n, 3) d_m, azimuth_deg, elevation_deg rows

        Returns:
            ndarray: w . x + bias per row

        Raises:
            N/A

        """
        return np.asarray(X, dtype=float).reshape(-1, 3) @ self.weights + self.bias

    def classify(self, X: np.ndarray) -> np.ndarray:
        """
        Rank per row, a score of exactly 0 goes to the positive side

        Args:
            X: shape (n, 3) d_m, azimuth_deg, elevation_deg rows

        Returns:
            ndarray: class_for_positive_side or class_for_negative_side per row

        Raises:
            N/A

        """
        return np.where(
            self.score(X) >= 0, self.class_for_positive_side, self.class_for_negative_side
        )

    def normalized(self) -> Tuple[float, float, float, float]:
        """
        Plane coefficients scaled to a unit weight vector

        Args:
            N/A

        Returns:
            tuple: (w_d, w_phi, w_theta, bias) divided by |w|

        Raises:
            N/A

        """
        norm = float(np.linalg.norm(self.weights))
        w_d, w_phi, w_theta = (self.weights / norm).tolist()
        return w_d, w_phi, w_theta, self.bias / norm

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready plane

        Args:
            N/A

        Returns:
            dict: raw weights, bias, side classes and ridge flag

        Raises:
            N/A

        """
        w_d, w_phi, w_theta = self.weights.tolist()
        return {
            "w_d": w_d,
            "w_phi": w_phi,
            "w_theta": w_theta,
            "bias": self.bias,
            "class_for_positive_side": self.class_for_positive_side,
            "class_for_negative_side": self.class_for_negative_side,
            "ridge_applied": self.ridge_applied,
        }


def _split(points: Sequence[RankPoint]) -> Tuple[np.ndarray, np.ndarray]:
    rows = np.array(points, dtype=float).reshape(-1, 4)
    X, ranks = rows[:, :3], rows[:, 3]
    if not np.all(np.isfinite(X)):
        raise DomainError("lda points must be finite")
    unexpected = ~np.isin(ranks, (LOW_RANK, HIGH_RANK))
    if np.any(unexpected):
        raise DomainError(f"lda separates ranks 1 and 4, got rank {ranks[unexpected][0]:g}")
    return X, ranks.astype(int)


def fit_lda(
    points: Sequence[RankPoint],
    positive_rank: int = HIGH_RANK,
    strict: bool = False,
) -> LdaModel:
    """
    Two-class linear discriminant with equal priors

    weights = pooled_covariance^-1 (mean_positive - mean_negative), and the bias puts the
    boundary halfway between the class means. A numerically singular pooled covariance gets a
    1e-6 * trace ridge unless strict is set.

    Args:
        points: (d_m, azimuth_deg, elevation_deg, rank) rows, rank 1 or 4
        positive_rank: rank placed on the >= 0 side of the plane
        strict: raise instead of regularizing a singular covariance

    Returns:
        LdaModel: fitted plane

    Raises:
        DomainError: if a class has fewer than 2 points or the class means coincide
        SingularCovariance: if the covariance is singular and strict, or singular beyond repair

    """
    if positive_rank not in (LOW_RANK, HIGH_RANK):
        raise DomainError("positive_rank must be 1 or 4")
    negative_rank = LOW_RANK if positive_rank == HIGH_RANK else HIGH_RANK
    X, ranks = _split(points)
    positive, negative = X[ranks == positive_rank], X[ranks == negative_rank]
    if positive.shape[0] < 2 or negative.shape[0] < 2:
        raise DomainError("lda needs at least 2 points of each rank")

    mean_positive = positive.mean(axis=0)
    mean_negative = negative.mean(axis=0)
    scatter = (positive - mean_positive).T @ (positive - mean_positive) + (
        negative - mean_negative
    ).T @ (negative - mean_negative)
    pooled = scatter / (X.shape[0] - 2)

    ridge_applied = False
    if np.linalg.cond(pooled) > MAX_CONDITION:
        if strict:
            raise SingularCovariance("pooled within-class covariance is singular")
        trace = float(np.trace(pooled))
        if not trace > 0:
            raise SingularCovariance("pooled within-class covariance is zero")
        pooled = pooled + RIDGE * trace * np.eye(3)
        ridge_applied = True
        LOG.warning("pooled covariance singular, applied %.3g ridge", RIDGE * trace)

    difference = mean_positive - mean_negative
    if not np.any(difference != 0):
        raise DomainError("lda class means coincide")
    weights = np.linalg.solve(pooled, difference)
    bias = -float(weights @ (mean_positive + mean_negative)) / 2.0
    return LdaModel(
        weights=weights,
        bias=bias,
        class_for_positive_side=positive_rank,
        class_for_negative_side=negative_rank,
        ridge_applied=ridge_applied,
    )


def classify_rank(m: LdaModel, point: Sequence[float]) -> int:
    """
    Rank predicted for one point

    Args:
        m: lda model
        point: (d_m, azimuth_deg, elevation_deg)

    Returns:
        int: class_for_positive_side when the score is >= 0, else the other rank

    Raises:
        N/A

    """
    return int(m.classify(np.asarray(point[:3], dtype=float))[0])
