"""aerial_kpi.data.trajectory"""
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from aerial_kpi.data.flightlog import FlightLog, flight_log_from_positions
from aerial_kpi.exceptions import BadSpec, ConfigError
from aerial_kpi.geo import BsSiteConfig, enu_to_geodetic_arrays

PATTERNS = ("polygon", "sawtooth", "two_sweeps", "waypoints")

Point = Tuple[float, float]


@dataclass(frozen=True)
class TrajectorySpec:
    """
    Flight pattern in the horizontal frame of the base station, east/north meters

    Only the parameters of the chosen pattern are read: `vertices` for polygon, the sawtooth
    block for sawtooth, `sweep_offsets_m`/`sweep_extent_m` for two_sweeps, `waypoints` for
    waypoints. `altitude_m` is height above the ground under the base station.
    """

    pattern: str
    altitude_m: float
    speed_mps: float
    sample_period_s: float
    vertices: Tuple[Point, ...] = ()
    start_distance_m: float = 50.0
    end_distance_m: float = 500.0
    leg_spacing_m: float = 50.0
    half_width_m: float = 150.0
    bearing_deg: Optional[float] = None
    sweep_offsets_m: Tuple[float, ...] = (-50.0, 50.0)
    sweep_extent_m: float = 300.0
    waypoints: Tuple[Point, ...] = ()
    label: str = field(default="")

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "TrajectorySpec":
        """
        Build a spec from its json document

        Args:
            document: parsed trajectory json

        Returns:
            TrajectorySpec: spec, not yet validated against its pattern

        Raises:
            ConfigError: on missing keys or wrongly typed values

        """
        try:
            values = dict(document)
            for key in ("vertices", "waypoints"):
                if key in values:
                    values[key] = tuple((float(e), float(n)) for e, n in values[key])
            if "sweep_offsets_m" in values:
                values["sweep_offsets_m"] = tuple(float(v) for v in values["sweep_offsets_m"])
            return cls(**values)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid trajectory spec: {exc}") from exc


def load_trajectory_spec(source: Union[str, Path, IO[str]]) -> TrajectorySpec:
    """
    Load a TrajectorySpec json document

    Args:
        source: path or text stream

    Returns:
        TrajectorySpec: loaded spec

    Raises:
        ConfigError: if the document is not valid json

    """
    try:
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as f:
                document = json.load(f)
        else:
            document = json.load(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"trajectory spec is not valid json: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("trajectory spec must be a json object")
    return TrajectorySpec.from_dict(document)


def _polygon(spec: TrajectorySpec) -> np.ndarray:
    if len(spec.vertices) < 3:
        raise BadSpec("polygon needs at least 3 vertices")
    vertices = np.array(spec.vertices, dtype=float)
    return np.vstack([vertices, vertices[:1]])


def _sawtooth(spec: TrajectorySpec, site: BsSiteConfig) -> np.ndarray:
    if spec.leg_spacing_m <= 0 or spec.half_width_m <= 0:
        raise BadSpec("sawtooth leg_spacing_m and half_width_m must be > 0")
    if spec.end_distance_m <= spec.start_distance_m or spec.start_distance_m < 0:
        raise BadSpec("sawtooth needs 0 <= start_distance_m < end_distance_m")

    along = np.arange(
        spec.start_distance_m, spec.end_distance_m + spec.leg_spacing_m / 2, spec.leg_spacing_m
    )
    lateral = np.where(np.arange(along.size) % 2 == 0, -spec.half_width_m, spec.half_width_m)

    bearing = math.radians(
        site.boresight_azimuth_deg if spec.bearing_deg is None else spec.bearing_deg
    )
    # along axis points at the bearing, lateral axis 90 degrees clockwise of it
    east = along * math.sin(bearing) + lateral * math.cos(bearing)
    north = along * math.cos(bearing) - lateral * math.sin(bearing)
    return np.column_stack([east, north])


def _two_sweeps(spec: TrajectorySpec) -> np.ndarray:
    if not spec.sweep_offsets_m or spec.sweep_extent_m <= 0:
        raise BadSpec("two_sweeps needs sweep offsets and sweep_extent_m > 0")
    points = []
    for index, offset in enumerate(spec.sweep_offsets_m):
        south, north = -spec.sweep_extent_m, spec.sweep_extent_m
        ends = (south, north) if index % 2 == 0 else (north, south)
        points.extend([(offset, ends[0]), (offset, ends[1])])
    return np.array(points, dtype=float)


def _waypoints(spec: TrajectorySpec) -> np.ndarray:
    if len(spec.waypoints) < 2:
        raise BadSpec("waypoints pattern needs at least 2 waypoints")
    return np.array(spec.waypoints, dtype=float)


def path_vertices(spec: TrajectorySpec, site: BsSiteConfig) -> np.ndarray:
    """
    Horizontal polyline of a pattern

    Args:
        spec: trajectory spec
        site: base station site, for the default sawtooth bearing

    Returns:
        ndarray: shape (m, 2) east/north vertices in traversal order

    Raises:
        BadSpec: for unknown patterns or degenerate pattern parameters

    """
    if spec.pattern == "polygon":
        return _polygon(spec)
    if spec.pattern == "sawtooth":
        return _sawtooth(spec, site)
    if spec.pattern == "two_sweeps":
        return _two_sweeps(spec)
    if spec.pattern == "waypoints":
        return _waypoints(spec)
    raise BadSpec(f"unknown pattern '{spec.pattern}', expected one of {', '.join(PATTERNS)}")


def resample_path(vertices: np.ndarray, step_m: float) -> np.ndarray:
    """
    Points every step_m meters of arc length along a polyline, starting at its first vertex

    Args:
        vertices: shape (m, 2) polyline
        step_m: arc length between samples

    Returns:
        ndarray: shape (k, 2) sampled points

    Raises:
        BadSpec: if the polyline has zero length

    """
    segment = np.hypot(*np.diff(vertices, axis=0).T)
    arc = np.concatenate([[0.0], np.cumsum(segment)])
    if arc[-1] <= 0:
        raise BadSpec("trajectory path has zero length")
    s = np.arange(0.0, arc[-1] + 1e-9, step_m)
    return np.column_stack([np.interp(s, arc, vertices[:, 0]), np.interp(s, arc, vertices[:, 1])])


def generate_trajectory(
    spec: TrajectorySpec, site: BsSiteConfig, device: str = "trajectory"
) -> FlightLog:
    """
    Time-stamped positions flying a pattern at constant speed and altitude

    Args:
        spec: trajectory spec
        site: base station site the pattern is centred on
        device: device label for the generated records

    Returns:
        FlightLog: positions-only log sampled every sample_period_s

    Raises:
        BadSpec: if altitude, speed or sample period are not positive

    """
    if spec.altitude_m <= 0 or spec.speed_mps <= 0 or spec.sample_period_s <= 0:
        raise BadSpec("altitude_m, speed_mps and sample_period_s must be > 0")

    horizontal = resample_path(path_vertices(spec, site), spec.speed_mps * spec.sample_period_s)
    enu = np.column_stack([horizontal, np.zeros(horizontal.shape[0])])
    positions = enu_to_geodetic_arrays(enu, site.position)
    # constant gps altitude, not constant height in the tangent plane
    ground_m = site.position.altitude_m - site.antenna_height_m
    positions[:, 2] = ground_m + spec.altitude_m
    timestamps = np.arange(horizontal.shape[0]) * spec.sample_period_s

    return flight_log_from_positions(
        timestamps,
        positions,
        device=device,
        altitude_label=f"{spec.altitude_m:g}m",
        trajectory_label=spec.label or spec.pattern,
    )


def path_length(vertices: Sequence[Point]) -> float:
    """
    Length of a horizontal polyline

    Args:
        vertices: (east, north) points in traversal order

    Returns:
        float: length in meters

    Raises:
        N/A

    """
    points = np.asarray(vertices, dtype=float)
    return float(np.sum(np.hypot(*np.diff(points, axis=0).T)))
