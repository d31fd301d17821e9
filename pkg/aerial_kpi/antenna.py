"""aerial_kpi.antenna"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Iterable, Tuple, Union

import numpy as np
import pandas as pd

from aerial_kpi.exceptions import DomainError, ParseError
from aerial_kpi.geo import RelativeGeometry, wrap_degrees

RESOURCES = Path(__file__).parent / "resources"
DEFAULT_AZIMUTH_PATTERN = RESOURCES / "pattern_azimuth.csv"
DEFAULT_ELEVATION_PATTERN = RESOURCES / "pattern_elevation.csv"

CsvSource = Union[str, Path, IO[Any]]


@dataclass(frozen=True, eq=False)
class PatternCut:
    """
    One radiation pattern cut, angles strictly increasing, gains in dBi

    An azimuth cut is periodic: angles live in (-180, 180] and -180 is folded onto 180, so
    gain(-180) == gain(180) holds by construction.
    """

    angles_deg: np.ndarray
    gains_db: np.ndarray
    periodic: bool = field(default=False)

    @classmethod
    def from_samples(
        cls, samples: Iterable[Tuple[float, float]], periodic: bool
    ) -> "PatternCut":
        """
        Canonicalize (angle, gain) samples into a validated cut

        Args:
            samples: (angle_deg, gain_db) pairs in any order
            periodic: True for an azimuth cut, False for an elevation cut

        Returns:
            PatternCut: sorted, validated cut

        Raises:
            DomainError: on out-of-range or duplicate angles, non-finite gains or no samples

        """
        pairs = np.array(list(samples), dtype=float).reshape(-1, 2)
        if pairs.shape[0] == 0:
            raise DomainError("pattern cut has no samples")
        angles, gains = pairs[:, 0], pairs[:, 1]
        if not np.all(np.isfinite(gains)) or not np.all(np.isfinite(angles)):
            raise DomainError("pattern cut contains non-finite values")

        limit = 180.0 if periodic else 90.0
        out_of_range = np.abs(angles) > limit
        if np.any(out_of_range):
            raise DomainError(
                f"pattern angle {angles[out_of_range][0]} outside [-{limit:g}, {limit:g}]"
            )

        if periodic:
            # closing sample: -180 and 180 are the same direction
            folded = angles == -180.0
            if np.any(folded) and np.any(angles == 180.0):
                if not np.allclose(gains[folded], gains[angles == 180.0]):
                    raise DomainError("azimuth gains at -180 and 180 differ")
                angles, gains = angles[~folded], gains[~folded]
            else:
                angles = np.where(folded, 180.0, angles)

        order = np.argsort(angles, kind="stable")
        angles, gains = angles[order], gains[order]
        duplicated = np.diff(angles) == 0
        if np.any(duplicated):
            raise DomainError(f"duplicate pattern angle {angles[1:][duplicated][0]}")

        angles.flags.writeable = False
        gains.flags.writeable = False
        return cls(angles_deg=angles, gains_db=gains, periodic=periodic)

    @property
    def samples(self) -> Tuple[Tuple[float, float], ...]:
        """
        Sample pairs of the cut

        Args:
            N/A

        Returns:
            tuple: (angle_deg, gain_db) pairs in angle order

        Raises:
            N/A

        """
        return tuple(zip(self.angles_deg.tolist(), self.gains_db.tolist()))

    def lookup(self, angle_deg: Any) -> Any:
        """
        Linear interpolation in dB; periodic cuts wrap, others clamp at their end samples

        Args:
            angle_deg: scalar or array of angles

        Returns:
            float or ndarray: interpolated gain(s) in dB

        Raises:
            N/A

        """
        if self.periodic:
            gain = np.interp(wrap_degrees(angle_deg), self.angles_deg, self.gains_db, period=360.0)
        else:
            gain = np.interp(angle_deg, self.angles_deg, self.gains_db)
        return float(gain) if np.ndim(gain) == 0 else gain


@dataclass(frozen=True, eq=False)
class AntennaPattern:
    azimuth_cut: PatternCut
    elevation_cut: PatternCut


def _read_cut(source: CsvSource, periodic: bool) -> PatternCut:
    try:
        frame = pd.read_csv(source, header=None, dtype=str, skip_blank_lines=True)
    except pd.errors.EmptyDataError as exc:
        raise ParseError("pattern csv is empty") from exc
    if frame.shape[1] < 2:
        raise ParseError("pattern csv rows must be 'angle_deg,gain_db'", row=1)
    frame = frame.iloc[:, :2].apply(lambda column: column.str.strip())

    first_line = 1
    if pd.to_numeric(frame.iloc[0], errors="coerce").isna().all():
        # header row
        frame = frame.iloc[1:]
        first_line = 2

    values = frame.apply(pd.to_numeric, errors="coerce")
    bad = values.isna().any(axis=1).to_numpy()
    if bad.any():
        position = int(np.argmax(bad))
        raise ParseError("malformed pattern row", row=first_line + position)

    return PatternCut.from_samples(values.to_numpy(dtype=float).tolist(), periodic=periodic)


def load_pattern(azimuth_csv: CsvSource, elevation_csv: CsvSource) -> AntennaPattern:
    """
    Load an antenna pattern from azimuth and elevation cut csv files

    Args:
        azimuth_csv: path or stream of 'angle_deg,gain_db' rows covering [-180, 180]
        elevation_csv: path or stream of 'angle_deg,gain_db' rows covering [-90, 90]

    Returns:
        AntennaPattern: validated pattern

    Raises:
        ParseError: if a csv is empty or a row is not two numeric fields
        DomainError: if a cut has no samples, non-finite or duplicate angles, angles outside its
            range, or azimuth gains at -180 and 180 that differ

    """
    return AntennaPattern(
        azimuth_cut=_read_cut(azimuth_csv, periodic=True),
        elevation_cut=_read_cut(elevation_csv, periodic=False),
    )


def default_pattern() -> AntennaPattern:
    """
    Synthetic stand-in pattern shipped with the package

    Args:
        N/A

    Returns:
        AntennaPattern: 65 degree azimuth / 10 degree elevation beam, 17 dBi peak

    Raises:
        N/A

    """
    return load_pattern(DEFAULT_AZIMUTH_PATTERN, DEFAULT_ELEVATION_PATTERN)


def isotropic_pattern(gain_db: float = 0.0) -> AntennaPattern:
    """
    Pattern with the same gain in every direction

    Args:
        gain_db: gain of each cut

    Returns:
        AntennaPattern: flat pattern

    Raises:
        N/A

    """
    return AntennaPattern(
        azimuth_cut=PatternCut.from_samples([(-90.0, gain_db), (90.0, gain_db)], periodic=True),
        elevation_cut=PatternCut.from_samples([(-90.0, gain_db), (90.0, gain_db)], periodic=False),
    )


def synthetic_pattern(
    peak_gain_dbi: float = 17.0,
    azimuth_beamwidth_deg: float = 65.0,
    elevation_beamwidth_deg: float = 10.0,
    front_to_back_db: float = 30.0,
    azimuth_step_deg: float = 5.0,
    elevation_step_deg: float = 2.0,
) -> AntennaPattern:
    """
    Sector antenna stand-in with parabolic-in-dB main lobes

    Each cut follows -min(12 (angle / beamwidth)^2, front_to_back_db); the azimuth cut carries
    the peak gain so the cross-pattern sum peaks at peak_gain_dbi on boresight.

    Args:
        peak_gain_dbi: boresight gain
        azimuth_beamwidth_deg: 3 dB beamwidth of the azimuth cut
        elevation_beamwidth_deg: 3 dB beamwidth of the elevation cut
        front_to_back_db: attenuation floor
        azimuth_step_deg: azimuth sampling step
        elevation_step_deg: elevation sampling step

    Returns:
        AntennaPattern: sampled pattern

    Raises:
        N/A

    """
    azimuth = np.arange(-180.0, 180.0 + azimuth_step_deg / 2, azimuth_step_deg)
    elevation = np.arange(-90.0, 90.0 + elevation_step_deg / 2, elevation_step_deg)
    azimuth_gain = peak_gain_dbi - np.minimum(
        12.0 * (azimuth / azimuth_beamwidth_deg) ** 2, front_to_back_db
    )
    elevation_gain = -np.minimum(
        12.0 * (elevation / elevation_beamwidth_deg) ** 2, front_to_back_db
    )
    return AntennaPattern(
        azimuth_cut=PatternCut.from_samples(zip(azimuth, azimuth_gain), periodic=True),
        elevation_cut=PatternCut.from_samples(zip(elevation, elevation_gain), periodic=False),
    )


def gain_h(p: AntennaPattern, azimuth_deg: Any) -> Any:
    """
    Horizontal (azimuth cut) gain

    Args:
        p: antenna pattern
        azimuth_deg: azimuth from boresight, any real value

    Returns:
        float or ndarray: gain in dB

    Raises:
        N/A

    """
    return p.azimuth_cut.lookup(azimuth_deg)


def gain_v(p: AntennaPattern, elevation_deg: Any) -> Any:
    """
    Vertical (elevation cut) gain, clamped beyond the tabulated range

    Args:
        p: antenna pattern
        elevation_deg: elevation above the tilted boresight plane

    Returns:
        float or ndarray: gain in dB

    Raises:
        N/A

    """
    return p.elevation_cut.lookup(elevation_deg)


def directional_gain(p: AntennaPattern, g: RelativeGeometry) -> float:
    """
    Cross-pattern gain as the dB sum of both cuts

    Args:
        p: antenna pattern
        g: uav geometry relative to the antenna

    Returns:
        float: gain_h(azimuth) + gain_v(elevation) in dB

    Raises:
        N/A

    """
    return float(gain_h(p, g.azimuth_deg) + gain_v(p, g.elevation_deg))


def in_main_lobe(p: AntennaPattern, azimuth_deg: Any, drop_db: float = 3.0) -> Any:
    """
    Whether an azimuth falls inside the azimuth main lobe

    Args:
        p: antenna pattern
        azimuth_deg: azimuth from boresight
        drop_db: allowed drop below the azimuth peak

    Returns:
        bool or ndarray: True where gain_h is within drop_db of the peak

    Raises:
        N/A

    """
    inside = np.asarray(gain_h(p, azimuth_deg)) >= p.azimuth_cut.gains_db.max() - drop_db
    return bool(inside) if np.ndim(inside) == 0 else inside
