"""aerial_kpi.evaluation.profile"""
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence

import numpy as np

from aerial_kpi.exceptions import DomainError, LengthMismatch

DEFAULT_BIN_DEG = 2.5


@dataclass(frozen=True)
class ElevationBin:
    lower_deg: float
    upper_deg: float
    count: int
    median: float
    q1: float
    q3: float
    model_means: Dict[str, float]

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready bin statistics

        Args:
            N/A

        Returns:
            dict: bounds, count, quartiles and per-model means

        Raises:
            N/A

        """
        return {
            "lower_deg": self.lower_deg,
            "upper_deg": self.upper_deg,
            "count": self.count,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "model_means": dict(self.model_means),
        }


def elevation_profile(
    elevation_deg: Sequence[float],
    measured: Sequence[float],
    predicted_by_model: Mapping[str, Sequence[float]],
    bin_deg: float = DEFAULT_BIN_DEG,
) -> List[ElevationBin]:
    """
    Box statistics of measurements per elevation bin next to each model's mean prediction

    Args:
        elevation_deg: elevation per sample
        measured: measured value per sample
        predicted_by_model: model name -> prediction per sample
        bin_deg: bin width, bins are aligned to multiples of it

    Returns:
        list: populated bins in increasing elevation

    Raises:
        DomainError: if bin_deg is not positive
        LengthMismatch: if a sequence differs in length from elevation_deg

    """
    if not bin_deg > 0:
        raise DomainError("bin_deg must be > 0")
    elevation = np.asarray(elevation_deg, dtype=float)
    values = np.asarray(measured, dtype=float)
    predictions = {name: np.asarray(p, dtype=float) for name, p in predicted_by_model.items()}
    for name, series in [("measured", values), *predictions.items()]:
        if series.shape != elevation.shape:
            raise LengthMismatch(f"{name} has {series.size} values for {elevation.size} samples")

    index = np.floor(elevation / bin_deg).astype(np.int64)
    bins = []
    for key in np.unique(index):
        member = index == key
        q1, median, q3 = np.percentile(values[member], [25, 50, 75])
        bins.append(
            ElevationBin(
                lower_deg=float(key * bin_deg),
                upper_deg=float((key + 1) * bin_deg),
                count=int(member.sum()),
                median=float(median),
                q1=float(q1),
                q3=float(q3),
                model_means={
                    name: float(series[member].mean()) for name, series in predictions.items()
                },
            )
        )
    return bins
