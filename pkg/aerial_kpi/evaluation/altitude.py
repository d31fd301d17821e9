"""aerial_kpi.evaluation.altitude"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from aerial_kpi.data.flightlog import INTEGER_KPIS, FlightLog
from aerial_kpi.exceptions import DomainError, NoOverlap
from aerial_kpi.geo import GeoPosition, geodetic_to_enu_arrays

LOG = logging.getLogger(__name__)

GATE_M = 15.0
MIN_MATCHED_FRACTION = 0.5
MIN_PAIRS = 10


@dataclass(frozen=True)
class AltitudeComparison:
    """Statistics of lower-altitude minus higher-altitude kpi values over aligned samples"""

    kpi: str
    mean_diff: float
    std_diff: float
    pct_greater: float
    pct_equal: Optional[float]
    n_pairs: int
    alignment: str

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready comparison

        Args:
            N/A

        Returns:
            dict: kpi, difference statistics, pair count and alignment

        Raises:
            N/A

        """
        return {
            "kpi": self.kpi,
            "mean_diff": self.mean_diff,
            "std_diff": self.std_diff,
            "pct_greater": self.pct_greater,
            "pct_equal": self.pct_equal,
            "n_pairs": self.n_pairs,
            "alignment": self.alignment,
        }


def _horizontal(log: FlightLog, origin: GeoPosition) -> np.ndarray:
    positions = log.positions()
    enu = geodetic_to_enu_arrays(positions[:, 0], positions[:, 1], positions[:, 2], origin)
    return enu[:, :2]


def _elapsed_fraction(timestamps: np.ndarray) -> np.ndarray:
    span = timestamps[-1] - timestamps[0]
    if span <= 0:
        return np.zeros(timestamps.size)
    return (timestamps - timestamps[0]) / span


def align_by_position(
    low: FlightLog, high: FlightLog, origin: GeoPosition, gate_m: float = GATE_M
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pair each low-altitude row with the horizontally nearest high-altitude row inside a gate

    Args:
        low: lower-altitude log
        high: higher-altitude log
        origin: horizontal projection origin
        gate_m: maximum horizontal distance of a pair

    Returns:
        tuple: (low row indices, high row indices) of the pairs

    Raises:
        N/A

    """
    distance, nearest = cKDTree(_horizontal(high, origin)).query(
        _horizontal(low, origin), distance_upper_bound=gate_m
    )
    matched = np.flatnonzero(np.isfinite(distance))
    return matched, nearest[matched]


def align_by_time(low: FlightLog, high: FlightLog) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pair every low-altitude row with the high-altitude row at the nearest elapsed-time fraction

    Args:
        low: lower-altitude log
        high: higher-altitude log

    Returns:
        tuple: (low row indices, high row indices) of the pairs

    Raises:
        N/A

    """
    _, nearest = cKDTree(_elapsed_fraction(high.timestamps)[:, None]).query(
        _elapsed_fraction(low.timestamps)[:, None]
    )
    return np.arange(len(low)), np.asarray(nearest)


def _with_kpi(log: FlightLog, kpi: str) -> FlightLog:
    values = log.kpi_values(kpi)
    keep = tuple(r for r, v in zip(log.records, values) if np.isfinite(v))
    return FlightLog(records=keep, metadata=log.metadata)


def compare_altitudes(
    log30: FlightLog,
    log50: FlightLog,
    kpi: str,
    origin: Optional[GeoPosition] = None,
    gate_m: float = GATE_M,
) -> AltitudeComparison:
    """
    Compare one kpi between two flights of the same pattern at different altitudes

    Rows are aligned by horizontal position; when fewer than half of the lower flight's rows
    find a partner inside the gate, rows are aligned by elapsed-time fraction instead.

    Args:
        log30: lower-altitude flight
        log50: higher-altitude flight
        kpi: kpi column to compare
        origin: horizontal projection origin, defaults to the first lower-altitude position
        gate_m: position alignment gate

    Returns:
        AltitudeComparison: statistics of m_low - m_high

    Raises:
        DomainError: if a log has no values of the kpi
        NoOverlap: if neither alignment yields 10 pairs

    """
    low, high = _with_kpi(log30, kpi), _with_kpi(log50, kpi)
    if not len(low) or not len(high):
        raise DomainError(f"both logs need '{kpi}' values")
    origin = origin or low.records[0].position

    alignment = "position"
    low_rows, high_rows = align_by_position(low, high, origin, gate_m)
    if low_rows.size < MIN_MATCHED_FRACTION * len(low) or low_rows.size < MIN_PAIRS:
        LOG.warning(
            "%d of %d rows matched within %g m, aligning by elapsed time",
            low_rows.size,
            len(low),
            gate_m,
        )
        alignment = "time"
        low_rows, high_rows = align_by_time(low, high)
    if low_rows.size < MIN_PAIRS:
        raise NoOverlap(f"only {low_rows.size} aligned pairs, need {MIN_PAIRS}")

    m_low = low.kpi_values(kpi)[low_rows]
    m_high = high.kpi_values(kpi)[high_rows]
    diff = m_low - m_high
    return AltitudeComparison(
        kpi=kpi,
        mean_diff=float(np.mean(diff)),
        std_diff=float(np.std(diff, ddof=1)),
        pct_greater=100.0 * float(np.mean(m_low > m_high)),
        pct_equal=100.0 * float(np.mean(m_low == m_high)) if kpi in INTEGER_KPIS else None,
        n_pairs=int(diff.size),
        alignment=alignment,
    )
