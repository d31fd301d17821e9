"""aerial_kpi.evaluation.flags"""
import math
from dataclasses import dataclass
from typing import List, Tuple

from aerial_kpi.data.flightlog import FlightLog
from aerial_kpi.exceptions import MissingColumn

POOR_RSRQ_DB = -15.0
HANDOVER_WINDOW_S = 5.0


@dataclass(frozen=True)
class HandoverEvent:
    timestamp_s: float
    from_pci: int
    to_pci: int


def rsrq_poor_flags(log: FlightLog) -> List[Tuple[float, bool]]:
    """
    Flag rows whose rsrq is in the poor region, strictly below -15 dB

    Args:
        log: flight log carrying rsrq

    Returns:
        list: (timestamp_s, flag) per row; rows without rsrq are not flagged

    Raises:
        MissingColumn: if no row carries rsrq

    """
    if not log.has_kpi("rsrq_db"):
        raise MissingColumn("flight log carries no rsrq_db values")
    return [
        (record.timestamp_s, record.rsrq_db is not None and record.rsrq_db < POOR_RSRQ_DB)
        for record in log
    ]


def handover_events(log: FlightLog) -> List[HandoverEvent]:
    """
    Serving cell changes between consecutive rows with a known pci

    Args:
        log: single-device flight log

    Returns:
        list: events stamped with the time of the first row on the new cell

    Raises:
        N/A

    """
    events = []
    previous = None
    for record in log:
        if record.pci is None:
            continue
        if previous is not None and record.pci != previous:
            events.append(HandoverEvent(record.timestamp_s, previous, record.pci))
        previous = record.pci
    return events


def poor_rsrq_before_handover(log: FlightLog, window_s: float = HANDOVER_WINDOW_S) -> float:
    """
    Share of handovers preceded by poor rsrq within a time window

    Args:
        log: single-device flight log carrying rsrq and pci
        window_s: look-back window in seconds

    Returns:
        float: fraction in [0, 1], nan when the log has no handover

    Raises:
        N/A

    """
    events = handover_events(log)
    if not events:
        return math.nan
    poor = [t for t, flag in rsrq_poor_flags(log) if flag]
    hits = sum(
        1
        for event in events
        if any(event.timestamp_s - window_s <= t < event.timestamp_s for t in poor)
    )
    return hits / len(events)
