import io
from typing import Any, Dict, List

import numpy as np
import pytest

from aerial_kpi.antenna import default_pattern, isotropic_pattern
from aerial_kpi.data.flightlog import CSV_COLUMNS, load_flight_csv
from aerial_kpi.geo import BsSiteConfig, GeoPosition, enu_to_geodetic

ORIGIN = GeoPosition(latitude_deg=35.7275, longitude_deg=-78.696, altitude_m=132.0)


@pytest.fixture
def site():
    return BsSiteConfig(position=ORIGIN)


@pytest.fixture
def equator_site():
    return BsSiteConfig(position=GeoPosition(latitude_deg=0.0, longitude_deg=0.0, altitude_m=0.0))


@pytest.fixture
def isotropic():
    return isotropic_pattern()


@pytest.fixture
def pattern():
    return default_pattern()


@pytest.fixture
def site_document() -> Dict[str, Any]:
    return {
        "lat": ORIGIN.latitude_deg,
        "lon": ORIGIN.longitude_deg,
        "alt_m": ORIGIN.altitude_m,
        "boresight_azimuth_deg": 0.0,
        "downtilt_deg": 0.0,
        "carrier_hz": 3.4e9,
        "tx_power_w": 5.0,
        "n_prb": 273,
        "n_sc": 12,
    }


def offset(site: BsSiteConfig, east: float, north: float, up: float) -> GeoPosition:
    return enu_to_geodetic(east, north, up, site.position)


def csv_text(rows: List[Dict[str, Any]], columns=CSV_COLUMNS) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join("" if row.get(c) is None else str(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def log_from_rows(rows: List[Dict[str, Any]], columns=CSV_COLUMNS):
    return load_flight_csv(io.StringIO(csv_text(rows, columns)))


def grid_rows(
    site: BsSiteConfig, kpi: str, values: np.ndarray, spacing_m: float = 20.0, up: float = 30.0
) -> List[Dict[str, Any]]:
    """One row per value on a square grid of points around the site, timestamps 0, 1, ..."""
    side = int(np.ceil(np.sqrt(len(values))))
    rows = []
    for index, value in enumerate(values):
        p = offset(site, (index % side) * spacing_m, 50.0 + (index // side) * spacing_m, up)
        rows.append(
            {
                "timestamp": float(index),
                "lat": p.latitude_deg,
                "lon": p.longitude_deg,
                "alt_m": p.altitude_m,
                "device": "S21",
                kpi: value,
            }
        )
    return rows
