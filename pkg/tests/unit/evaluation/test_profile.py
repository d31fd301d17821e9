import pytest

from aerial_kpi.evaluation.profile import elevation_profile
from aerial_kpi.exceptions import DomainError, LengthMismatch


def test_elevation_profile():
    bins = elevation_profile(
        [1.0, 2.0, 3.0, 6.0, -1.0],
        [-80.0, -82.0, -85.0, -90.0, -75.0],
        {
            "fspl": [-81.0, -81.0, -84.0, -91.0, -70.0],
            "forest": [-80.0, -82.0, -85.0, -90.0, -75.0],
        },
    )

    assert [(b.lower_deg, b.upper_deg, b.count) for b in bins] == [
        (-2.5, 0.0, 1),
        (0.0, 2.5, 2),
        (2.5, 5.0, 1),
        (5.0, 7.5, 1),
    ]
    first_positive = bins[1]
    assert first_positive.median == pytest.approx(-81.0)
    assert (first_positive.q1, first_positive.q3) == pytest.approx((-81.5, -80.5))
    assert first_positive.model_means == pytest.approx({"fspl": -81.0, "forest": -81.0})
    assert bins[0].to_dict()["model_means"] == {"fspl": -70.0, "forest": -75.0}


def test_elevation_profile_bin_width():
    bins = elevation_profile([1.0, 9.0], [-80.0, -90.0], {}, bin_deg=10.0)
    assert len(bins) == 1
    assert bins[0].count == 2


def test_elevation_profile_errors():
    with pytest.raises(LengthMismatch):
        elevation_profile([1.0, 2.0], [-80.0], {})
    with pytest.raises(LengthMismatch):
        elevation_profile([1.0, 2.0], [-80.0, -81.0], {"fspl": [-80.0]})
    with pytest.raises(DomainError):
        elevation_profile([1.0], [-80.0], {}, bin_deg=0.0)
