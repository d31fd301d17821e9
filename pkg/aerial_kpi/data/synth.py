"""aerial_kpi.data.synth"""
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Any, Dict, Optional, Union

import numpy as np

from aerial_kpi.antenna import AntennaPattern
from aerial_kpi.data.flightlog import FlightLog
from aerial_kpi.exceptions import ConfigError, DomainError
from aerial_kpi.geo import BsSiteConfig
from aerial_kpi.linkbudget import predict_trajectory

# w_d, w_phi, w_theta, bias of a measured rank-1 / rank-4 decision plane
REFERENCE_RANK_PLANE = (0.0475, -0.1051, -0.0892, -15.549)


@dataclass(frozen=True)
class RankPlane:
    """Plane w_d*d + w_phi*azimuth + w_theta*elevation + bias; >= 0 side gets positive_rank"""

    w_d: float
    w_phi: float
    w_theta: float
    bias: float
    positive_rank: int = 1
    negative_rank: int = 4

    def score(self, d_m: np.ndarray, azimuth_deg: np.ndarray, elevation_deg: np.ndarray) -> Any:
        """
        Signed plane score

        Args:
            d_m: distances
            azimuth_deg: azimuths from boresight
            elevation_deg: elevations

        Returns:
            float or ndarray: plane value per sample

        Raises:
            N/A

        """
        return self.w_d * d_m + self.w_phi * azimuth_deg + self.w_theta * elevation_deg + self.bias


@dataclass(frozen=True)
class SynthConfig:
    noise_std_db: float = 0.0
    seed: int = 0
    rank_plane: Optional[RankPlane] = None

    def __post_init__(self) -> None:
        """
        Validate noise level

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if noise_std_db is negative

        """
        if not self.noise_std_db >= 0:
            raise DomainError("noise_std_db must be >= 0")

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "SynthConfig":
        """
        Build a config from json; "rank_plane" may be true for the reference plane or an object

        Args:
            document: parsed synth config json

        Returns:
            SynthConfig: validated config

        Raises:
            ConfigError: on wrongly typed values

        """
        try:
            plane = document.get("rank_plane")
            if plane is True:
                plane = RankPlane(*REFERENCE_RANK_PLANE)
            elif isinstance(plane, dict):
                plane = RankPlane(**plane)
            elif plane not in (None, False):
                raise ConfigError("rank_plane must be true, false or an object")
            return cls(
                noise_std_db=float(document.get("noise_std_db", 0.0)),
                seed=int(document.get("seed", 0)),
                rank_plane=plane or None,
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid synth config: {exc}") from exc


def load_synth_config(source: Union[str, Path, IO[str]]) -> SynthConfig:
    """
    Load a SynthConfig json document

    Args:
        source: path or text stream

    Returns:
        SynthConfig: loaded config

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
        raise ConfigError(f"synth config is not valid json: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("synth config must be a json object")
    return SynthConfig.from_dict(document)


def synthesize_measurements(
    positions: FlightLog, site: BsSiteConfig, pattern: AntennaPattern, cfg: SynthConfig
) -> FlightLog:
    """
    Fill a positions-only log with free-space rsrp plus seeded gaussian noise

    Rows co-located with the antenna keep rsrp_dbm = None. With cfg.rank_plane set, every
    predicted row also gets a rank label from the side of the plane it falls on.

    Args:
        positions: flight log whose positions are used
        site: base station site
        pattern: base station antenna pattern
        cfg: noise level, seed and optional rank plane

    Returns:
        FlightLog: copy of the log with rsrp_dbm (and rank) set

    Raises:
        N/A

    """
    prediction = predict_trajectory(site, pattern, positions)
    rng = np.random.default_rng(cfg.seed)
    noise = rng.normal(0.0, cfg.noise_std_db, size=len(prediction))

    records = list(positions.records)
    for index, predicted, delta in zip(prediction.indices, prediction.predictions, noise):
        values: Dict[str, Any] = {"rsrp_dbm": predicted.rsrp_dbm + float(delta)}
        if cfg.rank_plane is not None:
            g = predicted.geometry
            score = cfg.rank_plane.score(g.d_uav_m, g.azimuth_deg, g.elevation_deg)
            values["rank"] = (
                cfg.rank_plane.positive_rank if score >= 0 else cfg.rank_plane.negative_rank
            )
        records[index] = replace(records[index], **values)

    return FlightLog(records=tuple(records), metadata=dict(positions.metadata))

