"""aerial_kpi.data.flightlog"""
import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from aerial_kpi.exceptions import ConfigError, DomainError, ParseError, SchemaError, UnknownKpi
from aerial_kpi.geo import GeoPosition

LOG = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("timestamp", "lat", "lon", "alt_m", "device")
KPI_COLUMNS = ("pci", "rsrp_dbm", "rsrq_db", "sinr_db", "cqi", "rank", "throughput_mbps")
INTEGER_KPIS = frozenset(("pci", "cqi", "rank"))
CSV_COLUMNS = REQUIRED_COLUMNS + KPI_COLUMNS

CsvSource = Union[str, Path, IO[Any]]


@dataclass(frozen=True)
class KpiRecord:
    timestamp_s: float
    position: GeoPosition
    device: str
    pci: Optional[int] = None
    rsrp_dbm: Optional[float] = None
    rsrq_db: Optional[float] = None
    sinr_db: Optional[float] = None
    cqi: Optional[int] = None
    rank: Optional[int] = None
    throughput_mbps: Optional[float] = None
    extras: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        """
        Validate record invariants

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if timestamp is not finite or cqi/rank are out of range

        """
        if not math.isfinite(self.timestamp_s):
            raise DomainError("timestamp must be finite")
        if self.cqi is not None and not 0 <= self.cqi <= 15:
            raise DomainError(f"cqi {self.cqi} outside [0, 15]")
        if self.rank is not None and self.rank < 1:
            raise DomainError(f"rank {self.rank} must be >= 1")

    def kpi(self, name: str) -> Optional[float]:
        """
        Value of a kpi column by canonical name

        Args:
            name: one of KPI_COLUMNS

        Returns:
            float or None: the value, None when not measured

        Raises:
            UnknownKpi: if name is not a kpi column

        """
        if name not in KPI_COLUMNS:
            raise UnknownKpi(f"unknown kpi '{name}', expected one of {', '.join(KPI_COLUMNS)}")
        value = getattr(self, name)
        return None if value is None else float(value)


@dataclass(frozen=True)
class FlightLog:
    records: Tuple[KpiRecord, ...] = ()
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        """
        Validate timestamp ordering

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if timestamps decrease

        """
        timestamps = self.timestamps
        if timestamps.size > 1 and np.any(np.diff(timestamps) < 0):
            raise DomainError("flight log timestamps must be non-decreasing")

    def __len__(self) -> int:
        """
        Number of records

        Args:
            N/A

        Returns:
            int: record count

        Raises:
            N/A

        """
        return len(self.records)

    def __iter__(self) -> Iterator[KpiRecord]:
        """
        Iterate records in timestamp order

        Args:
            N/A

        Returns:
            iterator: records

        Raises:
            N/A

        """
        return iter(self.records)

    @property
    def device(self) -> Optional[str]:
        """
        Device of a single-device log

        Args:
            N/A

        Returns:
            str or None: the device, None if the log is empty or mixes devices

        Raises:
            N/A

        """
        devices = {record.device for record in self.records}
        return devices.pop() if len(devices) == 1 else None

    @property
    def timestamps(self) -> np.ndarray:
        """
        Record timestamps

        Args:
            N/A

        Returns:
            ndarray: seconds, one per record

        Raises:
            N/A

        """
        return np.array([record.timestamp_s for record in self.records], dtype=float)

    def positions(self) -> np.ndarray:
        """
        Positions as an array

        Args:
            N/A

        Returns:
            ndarray: shape (n, 3) latitude_deg, longitude_deg, altitude_m

        Raises:
            N/A

        """
        return np.array(
            [
                (r.position.latitude_deg, r.position.longitude_deg, r.position.altitude_m)
                for r in self.records
            ],
            dtype=float,
        ).reshape(-1, 3)

    def kpi_values(self, name: str) -> np.ndarray:
        """
        One kpi across the log

        Args:
            name: one of KPI_COLUMNS

        Returns:
            ndarray: values with nan where not measured

        Raises:
            UnknownKpi: if name is not a kpi column

        """
        if name not in KPI_COLUMNS:
            raise UnknownKpi(f"unknown kpi '{name}', expected one of {', '.join(KPI_COLUMNS)}")
        return np.array(
            [np.nan if getattr(r, name) is None else getattr(r, name) for r in self.records],
            dtype=float,
        )

    def has_kpi(self, name: str) -> bool:
        """
        Whether any record carries a kpi

        Args:
            name: canonical kpi column

        Returns:
            bool: True when at least one value is present

        Raises:
            N/A

        """
        return bool(np.any(~np.isnan(self.kpi_values(name)))) if self.records else False


def load_column_map(source: CsvSource) -> Dict[str, str]:
    """
    Load a {"external_name": "canonical_name"} json column map

    Args:
        source: path or text stream

    Returns:
        dict: column map

    Raises:
        ConfigError: if the document is not a json object of strings

    """
    try:
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as f:
                document = json.load(f)
        else:
            document = json.load(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"column map is not valid json: {exc}") from exc
    if not isinstance(document, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in document.items()
    ):
        raise ConfigError("column map must be a json object of strings")
    return document


def _to_number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        return math.nan


def _parse_numeric(
    frame: pd.DataFrame, column: str, integer: bool, required: bool
) -> List[Optional[float]]:
    text = frame[column].str.strip()
    empty = (text == "").to_numpy()
    values = np.array([math.nan if e else _to_number(t) for t, e in zip(text, empty)])

    malformed = ~empty & ~np.isfinite(values)
    if integer:
        malformed |= ~empty & np.isfinite(values) & (values != np.round(values))
    missing = empty if required else np.zeros_like(empty)
    bad = malformed | missing
    if bad.any():
        first = int(np.flatnonzero(bad)[0])
        reason = "missing required value" if missing[first] else "malformed value"
        raise ParseError(reason, row=first + 2, column=column)

    if integer:
        return [None if e else int(v) for v, e in zip(values, empty)]
    return [None if e else float(v) for v, e in zip(values, empty)]


def load_flight_csv(
    source: CsvSource, column_map: Optional[Mapping[str, str]] = None
) -> FlightLog:
    """
    Load a flight log csv, validating and time-sorting its rows

    Args:
        source: path or stream with a header row
        column_map: optional external-to-canonical header renames applied before validation

    Returns:
        FlightLog: validated log; unrecognized columns are kept per record in `extras`

    Raises:
        ParseError: on malformed or out-of-range values, with the offending row number
        SchemaError: if required columns are missing

    """
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as exc:
        raise ParseError("flight csv is empty") from exc
    frame.columns = [str(c).strip() for c in frame.columns]
    if column_map:
        frame = frame.rename(columns=dict(column_map))

    missing = [column for column in REQUIRED_COLUMNS if column not in frame.columns]
    if missing:
        raise SchemaError(missing)

    parsed: Dict[str, List[Any]] = {}
    for column in ("timestamp", "lat", "lon", "alt_m"):
        parsed[column] = _parse_numeric(frame, column, integer=False, required=True)
    for column in KPI_COLUMNS:
        if column in frame.columns:
            parsed[column] = _parse_numeric(
                frame, column, integer=column in INTEGER_KPIS, required=False
            )
        else:
            parsed[column] = [None] * len(frame)

    devices = frame["device"].str.strip()
    if (devices == "").any():
        row = int(np.flatnonzero((devices == "").to_numpy())[0]) + 2
        raise ParseError("missing required value", row=row, column="device")

    extra_columns = [c for c in frame.columns if c not in CSV_COLUMNS]
    records = []
    for index in range(len(frame)):
        try:
            records.append(
                KpiRecord(
                    timestamp_s=parsed["timestamp"][index],
                    position=GeoPosition(
                        latitude_deg=parsed["lat"][index],
                        longitude_deg=parsed["lon"][index],
                        altitude_m=parsed["alt_m"][index],
                    ),
                    device=devices.iat[index],
                    extras={c: frame[c].iat[index] for c in extra_columns},
                    **{column: parsed[column][index] for column in KPI_COLUMNS},
                )
            )
        except DomainError as exc:
            raise ParseError(str(exc), row=index + 2) from exc

    timestamps = np.array(parsed["timestamp"], dtype=float)
    order = np.argsort(timestamps, kind="stable")
    reordered = int(np.count_nonzero(order != np.arange(order.size)))
    if reordered:
        LOG.warning("flight log had %d row(s) out of timestamp order; sorted on load", reordered)

    log = FlightLog(records=tuple(records[i] for i in order))
    metadata: Dict[str, Any] = {"reordered_rows": reordered, "extra_columns": extra_columns}
    if log.device is not None:
        metadata["device"] = log.device
    return replace(log, metadata=metadata)


def write_flight_csv(log: FlightLog, destination: CsvSource) -> None:
    """
    Write a flight log in the canonical csv layout, empty cells for unmeasured kpis

    Args:
        log: flight log to export
        destination: path or text stream

    Returns:
        N/A  # noqa: DAR202

    Raises:
        N/A

    """
    columns: Dict[str, Any] = {
        "timestamp": [r.timestamp_s for r in log],
        "lat": [r.position.latitude_deg for r in log],
        "lon": [r.position.longitude_deg for r in log],
        "alt_m": [r.position.altitude_m for r in log],
        "device": [r.device for r in log],
    }
    for column in KPI_COLUMNS:
        values = [getattr(r, column) for r in log]
        if column in INTEGER_KPIS:
            columns[column] = pd.array([pd.NA if v is None else v for v in values], dtype="Int64")
        else:
            columns[column] = [np.nan if v is None else v for v in values]
    extra_columns: List[str] = list(log.metadata.get("extra_columns", []))
    for record in log:
        extra_columns.extend(c for c in record.extras if c not in extra_columns)
    for column in extra_columns:
        columns[column] = [r.extras.get(column, "") for r in log]

    frame = pd.DataFrame(columns, columns=list(CSV_COLUMNS) + extra_columns)
    frame.to_csv(destination, index=False, na_rep="")


def partition_by_device(log: FlightLog) -> Dict[str, FlightLog]:
    """
    Split a log into one log per device, preserving record order

    Args:
        log: flight log, possibly interleaving devices

    Returns:
        dict: device -> single-device FlightLog, in order of first appearance

    Raises:
        N/A

    """
    groups: Dict[str, List[KpiRecord]] = {}
    for record in log:
        groups.setdefault(record.device, []).append(record)
    return {
        device: FlightLog(records=tuple(records), metadata={**log.metadata, "device": device})
        for device, records in groups.items()
    }


def flight_log_from_positions(
    timestamps: Sequence[float], positions: np.ndarray, device: str, **metadata: Any
) -> FlightLog:
    """
    Build a positions-only flight log

    Args:
        timestamps: sample times in seconds, non-decreasing
        positions: shape (n, 3) latitude_deg, longitude_deg, altitude_m
        device: device label for every record
        metadata: extra metadata entries (altitude_label, trajectory_label, ...)

    Returns:
        FlightLog: log without kpi values

    Raises:
        N/A

    """
    records = tuple(
        KpiRecord(
            timestamp_s=float(t),
            position=GeoPosition(
                latitude_deg=float(lat), longitude_deg=float(lon), altitude_m=float(alt)
            ),
            device=device,
        )
        for t, (lat, lon, alt) in zip(timestamps, positions)
    )
    return FlightLog(records=records, metadata={"device": device, **metadata})
