"""aerial_kpi.evaluation.metrics"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from aerial_kpi.exceptions import DomainError, LengthMismatch
from aerial_kpi.models.lda import LdaModel

RANKS = (1, 4)


@dataclass(frozen=True)
class EvalReport:
    """Prediction accuracy; r2 is nan when the measured values are constant"""

    mae_db: float
    rmse_db: float
    mape_pct: float
    r2: float
    n: int

    def __post_init__(self) -> None:
        """
        Validate report invariants

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if n < 1, mae > rmse or r2 > 1

        """
        if self.n < 1:
            raise DomainError("a report needs at least one sample")
        if self.mae_db > self.rmse_db * (1 + 1e-12) + 1e-12:
            raise DomainError("mae exceeds rmse")
        if self.r2 > 1:
            raise DomainError("r2 exceeds 1")

    @property
    def rmse(self) -> float:
        """
        Alias of rmse_db

        Args:
            N/A

        Returns:
            float: root mean squared error in dB

        Raises:
            N/A

        """
        return self.rmse_db

    @property
    def r2_defined(self) -> bool:
        """
        Whether r2 is a number

        Args:
            N/A

        Returns:
            bool: False when the measured values were constant

        Raises:
            N/A

        """
        return not math.isnan(self.r2)

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready report, undefined r2 becomes null

        Args:
            N/A

        Returns:
            dict: report fields plus r2_defined

        Raises:
            N/A

        """
        return {
            "mae_db": self.mae_db,
            "rmse_db": self.rmse_db,
            "mape_pct": self.mape_pct,
            "r2": self.r2 if self.r2_defined else None,
            "r2_defined": self.r2_defined,
            "n": self.n,
        }


def metrics(measured: Sequence[float], predicted: Sequence[float]) -> EvalReport:
    """
    MAE, RMSE, MAPE on dBm magnitudes and R2 of a prediction

    Args:
        measured: measured values in dBm
        predicted: predicted values in dBm

    Returns:
        EvalReport: accuracy report

    Raises:
        LengthMismatch: if the inputs differ in length
        DomainError: if the inputs are empty or non-finite, or a measured value is 0

    """
    y = np.asarray(measured, dtype=float).ravel()
    y_hat = np.asarray(predicted, dtype=float).ravel()
    if y.size != y_hat.size:
        raise LengthMismatch(f"{y.size} measured values for {y_hat.size} predictions")
    if not y.size:
        raise DomainError("metrics need at least one value")
    if not np.all(np.isfinite(y)) or not np.all(np.isfinite(y_hat)):
        raise DomainError("metrics need finite values")
    if np.any(y == 0):
        raise DomainError("mape is undefined for a measured value of 0")

    error = y_hat - y
    sse = float(np.sum(error**2))
    sst = float(np.sum((y - y.mean()) ** 2))
    return EvalReport(
        mae_db=float(np.mean(np.abs(error))),
        rmse_db=math.sqrt(sse / y.size),
        mape_pct=100.0 * float(np.mean(np.abs(error) / np.abs(y))),
        r2=1.0 - sse / sst if sst > 0 else math.nan,
        n=int(y.size),
    )


@dataclass(frozen=True)
class LdaConfusion:
    counts: Dict[int, Dict[int, int]]
    n: int
    misclassified: int

    @property
    def misclassification_rate(self) -> float:
        """
        Share of misclassified points

        Args:
            N/A

        Returns:
            float: misclassified / n, 0.0 without points

        Raises:
            N/A

        """
        return self.misclassified / self.n if self.n else 0.0

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready confusion counts, ranks as string keys

        Args:
            N/A

        Returns:
            dict: counts, n, misclassified and misclassification_rate

        Raises:
            N/A

        """
        return {
            "counts": {
                str(true): {str(pred): count for pred, count in row.items()}
                for true, row in self.counts.items()
            },
            "n": self.n,
            "misclassified": self.misclassified,
            "misclassification_rate": self.misclassification_rate,
        }


def lda_confusion(
    model: LdaModel, points: Sequence[Tuple[float, float, float, int]]
) -> LdaConfusion:
    """
    Confusion counts of a rank plane

    Args:
        model: lda model
        points: (d_m, azimuth_deg, elevation_deg, rank) rows

    Returns:
        LdaConfusion: counts[true_rank][predicted_rank] over ranks 1 and 4

    Raises:
        N/A

    """
    rows = np.array(points, dtype=float).reshape(-1, 4)
    truth = rows[:, 3].astype(int)
    predicted = model.classify(rows[:, :3]) if rows.shape[0] else np.empty(0, dtype=int)
    counts = {
        true: {pred: int(np.sum((truth == true) & (predicted == pred))) for pred in RANKS}
        for true in RANKS
    }
    return LdaConfusion(
        counts=counts, n=int(truth.size), misclassified=int(np.sum(truth != predicted))
    )
