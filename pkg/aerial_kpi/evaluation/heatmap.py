"""aerial_kpi.evaluation.heatmap"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any, Optional, Tuple, Union

import numpy as np
import pandas as pd

from aerial_kpi.data.flightlog import FlightLog
from aerial_kpi.exceptions import DomainError
from aerial_kpi.geo import GeoPosition, geodetic_to_enu_arrays

LOG = logging.getLogger(__name__)

HEATMAP_COLUMNS = ("east_m", "north_m", "value")


@dataclass(frozen=True)
class HeatmapCell:
    east_m: float
    north_m: float
    value: float
    count: int


@dataclass(frozen=True)
class HeatmapGrid:
    """
    Per-bin kpi means on a square east/north grid; cells are keyed by their bin centre

    Rows without a value of the kpi are left out of every cell and counted in skipped, so
    total_count + skipped is the length of the binned log.
    """

    kpi: str
    bin_m: float
    cells: Tuple[HeatmapCell, ...]
    skipped: int = 0

    @property
    def total_count(self) -> int:
        """
        Rows binned over all cells

        Args:
            N/A

        Returns:
            int: sum of the cell counts

        Raises:
            N/A

        """
        return sum(cell.count for cell in self.cells)

    def to_frame(self) -> pd.DataFrame:
        """
        Cells as a frame

        Args:
            N/A

        Returns:
            DataFrame: east_m, north_m, value columns

        Raises:
            N/A

        """
        return pd.DataFrame(
            [(c.east_m, c.north_m, c.value) for c in self.cells], columns=list(HEATMAP_COLUMNS)
        )


def heatmap(
    log: FlightLog, kpi: str, bin_m: float, origin: Optional[GeoPosition] = None
) -> HeatmapGrid:
    """
    Bin a kpi on an east/north grid around an origin

    Rows without a value of the kpi are not binned and are counted in the grid's skipped.

    Args:
        log: flight log
        kpi: kpi column
        bin_m: square bin size in meters
        origin: grid origin, defaults to the first record's position

    Returns:
        HeatmapGrid: populated cells ordered by east then north

    Raises:
        DomainError: if the log is empty or bin_m is not positive

    """
    values = log.kpi_values(kpi)
    if not len(log):
        raise DomainError("heatmap needs a nonempty log")
    if not bin_m > 0:
        raise DomainError("bin_m must be > 0")

    origin = origin or log.records[0].position
    positions = log.positions()
    enu = geodetic_to_enu_arrays(positions[:, 0], positions[:, 1], positions[:, 2], origin)
    frame = pd.DataFrame(
        {
            "east_bin": np.floor(enu[:, 0] / bin_m).astype(np.int64),
            "north_bin": np.floor(enu[:, 1] / bin_m).astype(np.int64),
            "value": values,
        }
    )
    missing = int(frame["value"].isna().sum())
    if missing:
        LOG.info(
            "%d of %d rows have no '%s' value, left out of the heatmap", missing, len(log), kpi
        )
    frame = frame.dropna(subset=["value"])
    grouped = frame.groupby(["east_bin", "north_bin"], sort=True)["value"].agg(["mean", "count"])

    cells = tuple(
        HeatmapCell(
            east_m=(east + 0.5) * bin_m,
            north_m=(north + 0.5) * bin_m,
            value=float(row["mean"]),
            count=int(row["count"]),
        )
        for (east, north), row in grouped.iterrows()
    )
    return HeatmapGrid(kpi=kpi, bin_m=float(bin_m), cells=cells, skipped=missing)


def write_heatmap_csv(grid: HeatmapGrid, destination: Union[str, Path, IO[Any]]) -> None:
    """
    Write cells as east_m,north_m,value rows

    Args:
        grid: heatmap
        destination: path or text stream

    Returns:
        N/A  # noqa: DAR202

    Raises:
        N/A

    """
    grid.to_frame().to_csv(destination, index=False)
