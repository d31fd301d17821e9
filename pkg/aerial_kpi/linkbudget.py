"""aerial_kpi.linkbudget"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from aerial_kpi.antenna import AntennaPattern, gain_h, gain_v
from aerial_kpi.data.flightlog import FlightLog
from aerial_kpi.exceptions import DomainError
from aerial_kpi.geo import (
    BsSiteConfig,
    GeoPosition,
    RelativeGeometry,
    geodetic_to_enu_arrays,
    geometry_from_enu,
    relative_geometry,
    wavelength,
)

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class SsTxPower:
    per_re_dbm: float


@dataclass(frozen=True)
class RsrpBreakdown:
    tx_dbm: float
    gain_h_db: float
    gain_v_db: float
    fspl_db: float


@dataclass(frozen=True)
class RsrpPrediction:
    rsrp_dbm: float
    components: RsrpBreakdown
    geometry: RelativeGeometry
    timestamp_s: Optional[float] = None


@dataclass(frozen=True)
class SkippedRow:
    index: int
    timestamp_s: float
    reason: str


@dataclass(frozen=True)
class TrajectoryPrediction:
    """Per-row predictions of a flight log; rows that could not be predicted are in `skipped`"""

    predictions: Tuple[RsrpPrediction, ...] = ()
    skipped: Tuple[SkippedRow, ...] = field(default=())

    def __len__(self) -> int:
        """
        Number of predicted rows

        Args:
            N/A

        Returns:
            int: prediction count

        Raises:
            N/A

        """
        return len(self.predictions)

    @property
    def indices(self) -> List[int]:
        """
        Log row index of every prediction

        Args:
            N/A

        Returns:
            list: indices of the rows that were not skipped

        Raises:
            N/A

        """
        skipped = {row.index for row in self.skipped}
        return [i for i in range(len(self.predictions) + len(self.skipped)) if i not in skipped]


def ss_tx_power(site: BsSiteConfig) -> SsTxPower:
    """
    Synchronization signal power per resource element

    Args:
        site: base station site

    Returns:
        SsTxPower: tx_power_w / (n_prb * n_sc) in dBm

    Raises:
        N/A

    """
    per_re_mw = site.tx_power_w * 1000.0 / (site.n_prb * site.n_sc)
    return SsTxPower(per_re_dbm=10.0 * math.log10(per_re_mw))


def fspl_db(d_m: float, lambda_m: float) -> float:
    """
    Free-space path loss

    Args:
        d_m: distance in meters
        lambda_m: wavelength in meters

    Returns:
        float: 20 log10(4 pi d / lambda) in dB

    Raises:
        DomainError: if distance or wavelength is not positive

    """
    if not d_m > 0 or not lambda_m > 0:
        raise DomainError("fspl needs positive distance and wavelength")
    return 20.0 * math.log10(4.0 * math.pi * d_m / lambda_m)


def _predict_geometry(
    site: BsSiteConfig,
    pattern: AntennaPattern,
    geometry: RelativeGeometry,
    tx: SsTxPower,
    timestamp_s: Optional[float] = None,
) -> RsrpPrediction:
    components = RsrpBreakdown(
        tx_dbm=tx.per_re_dbm,
        gain_h_db=float(gain_h(pattern, geometry.azimuth_deg)),
        gain_v_db=float(gain_v(pattern, geometry.elevation_deg)),
        fspl_db=fspl_db(geometry.d_uav_m, wavelength(site)),
    )
    rsrp = components.tx_dbm + components.gain_h_db + components.gain_v_db - components.fspl_db
    return RsrpPrediction(
        rsrp_dbm=rsrp, components=components, geometry=geometry, timestamp_s=timestamp_s
    )


def predict_rsrp(site: BsSiteConfig, pattern: AntennaPattern, uav: GeoPosition) -> RsrpPrediction:
    """
    Free-space ss-rsrp at the uav with an isotropic ue antenna

    Args:
        site: base station site
        pattern: base station antenna pattern
        uav: uav position

    Returns:
        RsrpPrediction: prediction with its link budget breakdown

    Raises:
        DegenerateGeometry: if the uav is co-located with the antenna

    """
    return _predict_geometry(site, pattern, relative_geometry(uav, site), ss_tx_power(site))


def predict_trajectory(
    site: BsSiteConfig, pattern: AntennaPattern, log: FlightLog
) -> TrajectoryPrediction:
    """
    Element-wise predict_rsrp over a flight log

    Rows co-located with the antenna are collected in `skipped` instead of raising.

    Args:
        site: base station site
        pattern: base station antenna pattern
        log: flight log, only positions are read

    Returns:
        TrajectoryPrediction: predictions in log order plus skipped rows

    Raises:
        N/A

    """
    if not len(log):
        return TrajectoryPrediction()

    positions = log.positions()
    enu = geodetic_to_enu_arrays(positions[:, 0], positions[:, 1], positions[:, 2], site.position)
    geometry = geometry_from_enu(enu, site)
    tx = ss_tx_power(site)

    predictions = []
    skipped = []
    for index, (record, (d_m, azimuth, elevation)) in enumerate(zip(log, geometry)):
        if np.isnan(d_m):
            LOG.debug("row %d at t=%s co-located with the antenna", index, record.timestamp_s)
            skipped.append(SkippedRow(index, record.timestamp_s, "degenerate geometry"))
            continue
        predictions.append(
            _predict_geometry(
                site,
                pattern,
                RelativeGeometry(float(d_m), float(azimuth), float(elevation)),
                tx,
                timestamp_s=record.timestamp_s,
            )
        )
    if skipped:
        LOG.warning("skipped %d row(s) with degenerate geometry", len(skipped))
    return TrajectoryPrediction(predictions=tuple(predictions), skipped=tuple(skipped))
