import io

import numpy as np
import pytest

from aerial_kpi.antenna import (
    PatternCut,
    directional_gain,
    gain_h,
    gain_v,
    in_main_lobe,
    isotropic_pattern,
    load_pattern,
    synthetic_pattern,
)
from aerial_kpi.exceptions import DomainError, ParseError
from aerial_kpi.geo import RelativeGeometry

ELEVATION_CSV = "-90,-30\n0,0\n90,-30\n"


def load_azimuth(text):
    return load_pattern(io.StringIO(text), io.StringIO(ELEVATION_CSV))


def test_load_pattern_two_samples():
    p = load_azimuth("0,17\n180,-30\n")
    assert p.azimuth_cut.samples == ((0.0, 17.0), (180.0, -30.0))
    assert len(p.elevation_cut.samples) == 3


def test_load_pattern_sorts_samples():
    p = load_azimuth("90,1\n-90,2\n0,3\n")
    assert p.azimuth_cut.angles_deg.tolist() == [-90.0, 0.0, 90.0]
    assert p.azimuth_cut.gains_db.tolist() == [2.0, 3.0, 1.0]


def test_load_pattern_skips_header():
    p = load_azimuth("angle_deg,gain_db\n0,17\n180,-30\n")
    assert p.azimuth_cut.samples == ((0.0, 17.0), (180.0, -30.0))


@pytest.mark.parametrize(
    "text, row",
    [("0,abc\n", 1), ("0,17\n10,abc\n", 2), ("angle,gain\n0,17\n10,\n", 3)],
    ids=["first_row", "second_row", "after_header"],
)
def test_load_pattern_malformed_row(text, row):
    with pytest.raises(ParseError) as exc:
        load_azimuth(text)
    assert exc.value.row == row


def test_load_pattern_empty_csv():
    with pytest.raises(ParseError):
        load_azimuth("")


@pytest.mark.parametrize(
    "text",
    ["0,1\n0,2\n", "200,1\n", "-180,1\n180,2\n"],
    ids=["duplicate", "out_of_range", "inconsistent_closing_sample"],
)
def test_load_pattern_domain_errors(text):
    with pytest.raises(DomainError):
        load_azimuth(text)


def test_elevation_cut_rejects_angles_beyond_vertical():
    with pytest.raises(DomainError):
        load_pattern(io.StringIO("0,1\n"), io.StringIO("0,1\n95,0\n"))


def test_closing_sample_is_folded():
    cut = PatternCut.from_samples([(-180.0, -20.0), (0.0, 10.0), (180.0, -20.0)], periodic=True)
    assert cut.angles_deg.tolist() == [0.0, 180.0]
    assert cut.lookup(-180.0) == cut.lookup(180.0) == -20.0


def test_lookup_interpolates_in_db():
    cut = PatternCut.from_samples([(0.0, 17.0), (10.0, 15.0)], periodic=False)
    assert cut.lookup(5.0) == pytest.approx(16.0)


def test_periodic_lookup_wraps():
    cut = PatternCut.from_samples([(0.0, 17.0), (10.0, 15.0), (180.0, -30.0)], periodic=True)
    assert cut.lookup(361.0) == pytest.approx(cut.lookup(1.0))
    assert cut.lookup(1.0) == pytest.approx(16.8)
    # between 180 and 360 == 0
    assert cut.lookup(-90.0) == pytest.approx(-6.5)


def test_elevation_lookup_clamps():
    cut = PatternCut.from_samples([(-90.0, -30.0), (0.0, 0.0), (90.0, -25.0)], periodic=False)
    assert cut.lookup(95.0) == pytest.approx(-25.0)
    assert cut.lookup(-120.0) == pytest.approx(-30.0)


def test_lookup_vectorized():
    cut = PatternCut.from_samples([(0.0, 17.0), (10.0, 15.0)], periodic=False)
    np.testing.assert_allclose(cut.lookup(np.array([0.0, 5.0, 10.0])), [17.0, 16.0, 15.0])


def test_isotropic_pattern_is_flat():
    p = isotropic_pattern(3.0)
    for angle in (-179.0, -45.0, 0.0, 120.0, 180.0):
        assert gain_h(p, angle) == pytest.approx(3.0)
    for angle in (-90.0, 0.0, 60.0):
        assert gain_v(p, angle) == pytest.approx(3.0)


def test_default_pattern_peak(pattern):
    assert directional_gain(pattern, RelativeGeometry(100.0, 0.0, 0.0)) == pytest.approx(17.0)


@pytest.mark.parametrize("angle", [5.0, 30.0, 72.5, 150.0], ids=["5", "30", "72_5", "150"])
def test_default_pattern_symmetry(pattern, angle):
    assert gain_h(pattern, angle) == pytest.approx(gain_h(pattern, -angle))
    assert gain_v(pattern, angle / 2) == pytest.approx(gain_v(pattern, -angle / 2))


def test_directional_gain_is_db_sum(pattern):
    g = RelativeGeometry(d_uav_m=250.0, azimuth_deg=20.0, elevation_deg=-7.0)
    assert directional_gain(pattern, g) == pytest.approx(
        gain_h(pattern, 20.0) + gain_v(pattern, -7.0)
    )


def test_synthetic_pattern_beamwidth():
    p = synthetic_pattern(peak_gain_dbi=17.0, azimuth_beamwidth_deg=60.0, azimuth_step_deg=1.0)
    assert gain_h(p, 0.0) - gain_h(p, 60.0) == pytest.approx(12.0)
    assert gain_h(p, 180.0) == pytest.approx(17.0 - 30.0)


@pytest.mark.parametrize(
    "azimuth, expected",
    [(0.0, True), (30.0, True), (40.0, False), (180.0, False)],
    ids=["boresight", "inside", "outside", "back"],
)
def test_in_main_lobe(pattern, azimuth, expected):
    assert in_main_lobe(pattern, azimuth) is expected
