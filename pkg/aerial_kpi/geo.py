"""aerial_kpi.geo"""
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import IO, Any, Dict, Tuple, Union

import numpy as np
from pyproj import Transformer
from scipy.constants import c as SPEED_OF_LIGHT

from aerial_kpi.exceptions import ConfigError, DegenerateGeometry, DomainError

# separation below which the uav counts as co-located with the antenna
MIN_SEPARATION_M = 0.01
# horizontal distance below which azimuth is pinned to 0 (uav straight above/below the antenna)
ZENITH_HORIZONTAL_M = 0.01

DEFAULT_SITE: Dict[str, Any] = {
    "boresight_azimuth_deg": 0.0,
    "downtilt_deg": 0.0,
    "carrier_hz": 3.4e9,
    "tx_power_w": 5.0,
    "n_prb": 273,
    "n_sc": 12,
    "antenna_height_m": 10.0,
}

EnuTriple = Tuple[float, float, float]


@dataclass(frozen=True)
class GeoPosition:
    latitude_deg: float
    longitude_deg: float
    altitude_m: float

    def __post_init__(self) -> None:
        """
        Validate coordinate ranges

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if latitude/longitude are out of range or altitude is not finite

        """
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise DomainError(f"latitude {self.latitude_deg} outside [-90, 90]")
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise DomainError(f"longitude {self.longitude_deg} outside [-180, 180]")
        if not math.isfinite(self.altitude_m):
            raise DomainError(f"altitude {self.altitude_m} is not finite")


@dataclass(frozen=True)
class BsSiteConfig:
    position: GeoPosition
    boresight_azimuth_deg: float = DEFAULT_SITE["boresight_azimuth_deg"]
    mechanical_downtilt_deg: float = DEFAULT_SITE["downtilt_deg"]
    carrier_frequency_hz: float = DEFAULT_SITE["carrier_hz"]
    tx_power_w: float = DEFAULT_SITE["tx_power_w"]
    n_prb: int = DEFAULT_SITE["n_prb"]
    n_sc: int = DEFAULT_SITE["n_sc"]
    antenna_height_m: float = DEFAULT_SITE["antenna_height_m"]

    def __post_init__(self) -> None:
        """
        Validate link budget parameters

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if any physical parameter is outside its domain

        """
        if not self.carrier_frequency_hz > 0:
            raise DomainError("carrier_hz must be > 0")
        if not self.tx_power_w > 0:
            raise DomainError("tx_power_w must be > 0")
        if self.n_prb < 1 or self.n_sc < 1:
            raise DomainError("n_prb and n_sc must be >= 1")
        if not math.isfinite(self.boresight_azimuth_deg):
            raise DomainError("boresight_azimuth_deg must be finite")
        if self.antenna_height_m < 0:
            raise DomainError("antenna_height_m must be >= 0")

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "BsSiteConfig":
        """
        Build a site from its json document, filling optional keys from DEFAULT_SITE

        Args:
            document: parsed site json

        Returns:
            BsSiteConfig: validated site

        Raises:
            ConfigError: if position keys are missing or values have the wrong type

        """
        missing = [key for key in ("lat", "lon", "alt_m") if key not in document]
        if missing:
            raise ConfigError(f"site config missing key(s): {', '.join(missing)}")
        merged = {**DEFAULT_SITE, **document}
        try:
            return cls(
                position=GeoPosition(
                    latitude_deg=float(merged["lat"]),
                    longitude_deg=float(merged["lon"]),
                    altitude_m=float(merged["alt_m"]),
                ),
                boresight_azimuth_deg=float(merged["boresight_azimuth_deg"]),
                mechanical_downtilt_deg=float(merged["downtilt_deg"]),
                carrier_frequency_hz=float(merged["carrier_hz"]),
                tx_power_w=float(merged["tx_power_w"]),
                n_prb=int(merged["n_prb"]),
                n_sc=int(merged["n_sc"]),
                antenna_height_m=float(merged["antenna_height_m"]),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid site config value: {exc}") from exc

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the site json document layout

        Args:
            N/A

        Returns:
            dict: json-ready site document

        Raises:
            N/A

        """
        return {
            "lat": self.position.latitude_deg,
            "lon": self.position.longitude_deg,
            "alt_m": self.position.altitude_m,
            "boresight_azimuth_deg": self.boresight_azimuth_deg,
            "downtilt_deg": self.mechanical_downtilt_deg,
            "carrier_hz": self.carrier_frequency_hz,
            "tx_power_w": self.tx_power_w,
            "n_prb": self.n_prb,
            "n_sc": self.n_sc,
            "antenna_height_m": self.antenna_height_m,
        }


@dataclass(frozen=True)
class RelativeGeometry:
    d_uav_m: float
    azimuth_deg: float
    elevation_deg: float


def load_site(source: Union[str, IO[str]]) -> BsSiteConfig:
    """
    Load a BsSiteConfig from a json file path or text stream

    Args:
        source: path or open text stream

    Returns:
        BsSiteConfig: validated site

    Raises:
        ConfigError: if the document is not valid json or not an object

    """
    try:
        if isinstance(source, str):
            with open(source, "r", encoding="utf-8") as f:
                document = json.load(f)
        else:
            document = json.load(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"site config is not valid json: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("site config must be a json object")
    return BsSiteConfig.from_dict(document)


@lru_cache(maxsize=None)
def _to_ecef() -> Transformer:
    return Transformer.from_crs("EPSG:4979", "EPSG:4978", always_xy=True)


@lru_cache(maxsize=None)
def _from_ecef() -> Transformer:
    return Transformer.from_crs("EPSG:4978", "EPSG:4979", always_xy=True)


def _enu_rotation(origin: GeoPosition) -> np.ndarray:
    lat = math.radians(origin.latitude_deg)
    lon = math.radians(origin.longitude_deg)
    sin_lat, cos_lat = math.sin(lat), math.cos(lat)
    sin_lon, cos_lon = math.sin(lon), math.cos(lon)
    return np.array(
        [
            [-sin_lon, cos_lon, 0.0],
            [-sin_lat * cos_lon, -sin_lat * sin_lon, cos_lat],
            [cos_lat * cos_lon, cos_lat * sin_lon, sin_lat],
        ]
    )


def geodetic_to_enu_arrays(
    latitude_deg: np.ndarray, longitude_deg: np.ndarray, altitude_m: np.ndarray, origin: GeoPosition
) -> np.ndarray:
    """
    Vectorized geodetic to local east/north/up conversion on the WGS-84 ellipsoid

    Args:
        latitude_deg: latitudes of the points
        longitude_deg: longitudes of the points
        altitude_m: altitudes of the points, same datum as origin
        origin: tangent point of the local frame

    Returns:
        ndarray: shape (n, 3) east, north, up offsets in meters

    Raises:
        N/A

    """
    x, y, z = _to_ecef().transform(
        np.asarray(longitude_deg, dtype=float),
        np.asarray(latitude_deg, dtype=float),
        np.asarray(altitude_m, dtype=float),
    )
    x0, y0, z0 = _to_ecef().transform(
        origin.longitude_deg, origin.latitude_deg, origin.altitude_m
    )
    delta = np.column_stack(
        [np.atleast_1d(x) - x0, np.atleast_1d(y) - y0, np.atleast_1d(z) - z0]
    )
    return delta @ _enu_rotation(origin).T


def geodetic_to_enu(p: GeoPosition, origin: GeoPosition) -> EnuTriple:
    """
    Local east/north/up offsets of p relative to origin

    Args:
        p: position to convert
        origin: tangent point of the local frame

    Returns:
        tuple: (east_m, north_m, up_m)

    Raises:
        N/A

    """
    if p == origin:
        return 0.0, 0.0, 0.0
    east, north, up = geodetic_to_enu_arrays(
        np.array([p.latitude_deg]), np.array([p.longitude_deg]), np.array([p.altitude_m]), origin
    )[0]
    return float(east), float(north), float(up)


def enu_to_geodetic_arrays(enu: np.ndarray, origin: GeoPosition) -> np.ndarray:
    """
    Vectorized inverse of geodetic_to_enu_arrays

    Args:
        enu: shape (n, 3) east, north, up offsets in meters
        origin: tangent point of the local frame

    Returns:
        ndarray: shape (n, 3) latitude_deg, longitude_deg, altitude_m

    Raises:
        N/A

    """
    delta = np.atleast_2d(np.asarray(enu, dtype=float)) @ _enu_rotation(origin)
    x0, y0, z0 = _to_ecef().transform(
        origin.longitude_deg, origin.latitude_deg, origin.altitude_m
    )
    lon, lat, alt = _from_ecef().transform(delta[:, 0] + x0, delta[:, 1] + y0, delta[:, 2] + z0)
    return np.column_stack([lat, lon, alt])


def enu_to_geodetic(east: float, north: float, up: float, origin: GeoPosition) -> GeoPosition:
    """
    Geodetic position of a local east/north/up offset from origin

    Args:
        east: east offset in meters
        north: north offset in meters
        up: up offset in meters
        origin: tangent point of the local frame

    Returns:
        GeoPosition: converted position

    Raises:
        N/A

    """
    lat, lon, alt = enu_to_geodetic_arrays(np.array([[east, north, up]]), origin)[0]
    return GeoPosition(latitude_deg=float(lat), longitude_deg=float(lon), altitude_m=float(alt))


def wrap_degrees(angle_deg: Any) -> Any:
    """
    Wrap angles into (-180, 180]

    Args:
        angle_deg: scalar or array of angles in degrees

    Returns:
        float or ndarray: wrapped angle(s), same shape as input

    Raises:
        N/A

    """
    wrapped = 180.0 - np.mod(180.0 - np.asarray(angle_deg, dtype=float), 360.0)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def geometry_from_enu(enu: np.ndarray, site: BsSiteConfig) -> np.ndarray:
    """
    Distance, azimuth and elevation of enu offsets seen from the site antenna

    Rows closer than MIN_SEPARATION_M come back as nan; callers decide whether that is an error.

    Args:
        enu: shape (n, 3) offsets of the uav from the antenna phase centre
        site: base station site

    Returns:
        ndarray: shape (n, 3) d_uav_m, azimuth_deg, elevation_deg

    Raises:
        N/A

    """
    enu = np.atleast_2d(np.asarray(enu, dtype=float))
    east, north, up = enu[:, 0], enu[:, 1], enu[:, 2]
    horizontal = np.hypot(east, north)
    distance = np.sqrt(horizontal ** 2 + up ** 2)

    zenith = horizontal < ZENITH_HORIZONTAL_M
    bearing = np.degrees(np.arctan2(east, north))
    azimuth = np.where(zenith, 0.0, wrap_degrees(bearing - site.boresight_azimuth_deg))
    elevation = np.degrees(np.arctan2(up, horizontal)) + site.mechanical_downtilt_deg
    elevation = np.clip(elevation, -90.0, 90.0)

    result = np.column_stack([distance, np.atleast_1d(azimuth), elevation])
    result[distance < MIN_SEPARATION_M] = np.nan
    return result


def relative_geometry(uav: GeoPosition, site: BsSiteConfig) -> RelativeGeometry:
    """
    Uav distance, azimuth from boresight and elevation above the tilted boresight plane

    Args:
        uav: uav position
        site: base station site

    Returns:
        RelativeGeometry: geometry of the uav relative to the antenna

    Raises:
        DegenerateGeometry: if the uav is within MIN_SEPARATION_M of the antenna

    """
    enu = np.array([geodetic_to_enu(uav, site.position)])
    d_uav_m, azimuth_deg, elevation_deg = geometry_from_enu(enu, site)[0]
    if math.isnan(d_uav_m):
        raise DegenerateGeometry(f"uav within {MIN_SEPARATION_M} m of the antenna")
    return RelativeGeometry(
        d_uav_m=float(d_uav_m), azimuth_deg=float(azimuth_deg), elevation_deg=float(elevation_deg)
    )


def wavelength_m(frequency_hz: float) -> float:
    """
    Free-space wavelength

    Args:
        frequency_hz: carrier frequency

    Returns:
        float: wavelength in meters

    Raises:
        DomainError: if frequency is not positive

    """
    if not frequency_hz > 0:
        raise DomainError("frequency must be > 0")
    return float(SPEED_OF_LIGHT / frequency_hz)


def wavelength(site: BsSiteConfig) -> float:
    """
    Carrier wavelength of a site

    Args:
        site: base station site

    Returns:
        float: wavelength in meters

    Raises:
        N/A

    """
    return wavelength_m(site.carrier_frequency_hz)
