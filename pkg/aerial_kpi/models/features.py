"""aerial_kpi.models.features"""
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from aerial_kpi.data.flightlog import FlightLog
from aerial_kpi.exceptions import DomainError, LengthMismatch
from aerial_kpi.geo import BsSiteConfig, geodetic_to_enu_arrays, geometry_from_enu

DISTANCE_TRANSFORMS = ("log10", "linear")

# raw feature matrix column order
D_UAV, ELEVATION, AZIMUTH = 0, 1, 2


@dataclass(frozen=True)
class FeatureVector:
    d_uav_m: float
    elevation_deg: float
    azimuth_deg: float

    def distance_feature(self, distance_transform: str) -> float:
        """
        Distance after a model's transform

        Args:
            distance_transform: "log10" or "linear"

        Returns:
            float: transformed distance

        Raises:
            N/A

        """
        return float(transform_distance(np.array([self.d_uav_m]), distance_transform)[0])


@dataclass(frozen=True)
class Dataset:
    """
    Training rows: X holds raw (d_uav_m, elevation_deg, azimuth_deg) per row, y the target

    Models apply their own distance transform to column D_UAV.
    """

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        """
        Validate shapes and finiteness

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            LengthMismatch: if X and y disagree in length
            DomainError: if X is not (n, 3) or holds non-finite values

        """
        if self.X.ndim != 2 or self.X.shape[1] != 3:
            raise DomainError("feature matrix must have shape (n, 3)")
        if self.X.shape[0] != self.y.shape[0]:
            raise LengthMismatch(f"{self.X.shape[0]} feature rows for {self.y.shape[0]} targets")
        if not np.all(np.isfinite(self.X)) or not np.all(np.isfinite(self.y)):
            raise DomainError("features and targets must be finite")

    def __len__(self) -> int:
        """
        Number of rows

        Args:
            N/A

        Returns:
            int: row count

        Raises:
            N/A

        """
        return int(self.X.shape[0])

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[FeatureVector, float]]) -> "Dataset":
        """
        Build from (FeatureVector, target) pairs

        Args:
            pairs: training pairs

        Returns:
            Dataset: stacked rows

        Raises:
            N/A

        """
        rows = [((f.d_uav_m, f.elevation_deg, f.azimuth_deg), target) for f, target in pairs]
        X = np.array([row for row, _ in rows], dtype=float).reshape(-1, 3)
        y = np.array([target for _, target in rows], dtype=float)
        return cls(X=X, y=y)

    def subset(self, index: np.ndarray) -> "Dataset":
        """
        Rows selected by index

        Args:
            index: integer or boolean row index

        Returns:
            Dataset: selected rows

        Raises:
            N/A

        """
        return Dataset(X=self.X[index], y=self.y[index])


def transform_distance(d_m: np.ndarray, distance_transform: str) -> np.ndarray:
    """
    Distance feature of a model

    Args:
        d_m: distances in meters
        distance_transform: "log10" or "linear"

    Returns:
        ndarray: transformed distances

    Raises:
        DomainError: on an unknown transform or a non-positive distance under log10

    """
    if distance_transform == "linear":
        return np.asarray(d_m, dtype=float)
    if distance_transform == "log10":
        if np.any(np.asarray(d_m) <= 0):
            raise DomainError("log10 distance transform needs d > 0")
        return np.log10(d_m)
    raise DomainError(
        f"unknown distance transform '{distance_transform}', expected one of "
        f"{', '.join(DISTANCE_TRANSFORMS)}"
    )


def model_inputs(X: np.ndarray, distance_transform: str) -> np.ndarray:
    """
    Raw feature matrix with the distance column transformed

    Args:
        X: shape (n, 3) raw features
        distance_transform: "log10" or "linear"

    Returns:
        ndarray: shape (n, 3) model inputs

    Raises:
        N/A

    """
    Z = np.array(X, dtype=float, copy=True).reshape(-1, 3)
    Z[:, D_UAV] = transform_distance(Z[:, D_UAV], distance_transform)
    return Z


def log_geometry(log: FlightLog, site: BsSiteConfig) -> np.ndarray:
    """
    Raw features of every record of a log

    Args:
        log: flight log
        site: base station site

    Returns:
        ndarray: shape (n, 3) d_uav_m, elevation_deg, azimuth_deg; nan rows where degenerate

    Raises:
        N/A

    """
    if not len(log):
        return np.empty((0, 3))
    positions = log.positions()
    enu = geodetic_to_enu_arrays(positions[:, 0], positions[:, 1], positions[:, 2], site.position)
    d_az_el = geometry_from_enu(enu, site)
    return d_az_el[:, [0, 2, 1]]


def dataset_from_log(
    log: FlightLog, site: BsSiteConfig, target: str = "rsrp_dbm"
) -> Tuple[Dataset, List[int]]:
    """
    Training rows of a flight log: records with a target value and non-degenerate geometry

    Args:
        log: flight log
        site: base station site
        target: kpi column used as target

    Returns:
        tuple: (Dataset, indices of the log records used)

    Raises:
        N/A

    """
    X = log_geometry(log, site)
    y = log.kpi_values(target)
    keep = np.flatnonzero(np.all(np.isfinite(X), axis=1) & np.isfinite(y))
    return Dataset(X=X[keep].reshape(-1, 3), y=y[keep]), keep.tolist()
