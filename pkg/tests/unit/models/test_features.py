import math

import numpy as np
import pytest

from aerial_kpi.exceptions import DomainError, LengthMismatch
from aerial_kpi.models.features import (
    D_UAV,
    Dataset,
    FeatureVector,
    dataset_from_log,
    log_geometry,
    model_inputs,
    transform_distance,
)
from tests.conftest import log_from_rows, offset


@pytest.mark.parametrize(
    "transform, expected",
    [("log10", [1.0, 2.0, 3.0]), ("linear", [10.0, 100.0, 1000.0])],
    ids=["log10", "linear"],
)
def test_transform_distance(transform, expected):
    d_m = np.array([10.0, 100.0, 1000.0])
    np.testing.assert_allclose(transform_distance(d_m, transform), expected)


@pytest.mark.parametrize(
    "d_m, transform",
    [([0.0], "log10"), ([-5.0], "log10"), ([10.0], "sqrt")],
    ids=["zero", "negative", "unknown_transform"],
)
def test_transform_distance_domain(d_m, transform):
    with pytest.raises(DomainError):
        transform_distance(np.array(d_m), transform)


def test_feature_vector_distance_feature():
    assert FeatureVector(1000.0, 5.0, -3.0).distance_feature("log10") == pytest.approx(3.0)


def test_model_inputs_only_touch_distance():
    X = np.array([[100.0, 5.0, -20.0], [1000.0, -2.0, 40.0]])
    Z = model_inputs(X, "log10")
    np.testing.assert_allclose(Z[:, D_UAV], [2.0, 3.0])
    np.testing.assert_allclose(Z[:, 1:], X[:, 1:])
    assert X[0, D_UAV] == 100.0


def test_dataset_validation():
    with pytest.raises(LengthMismatch):
        Dataset(X=np.zeros((3, 3)), y=np.zeros(2))
    with pytest.raises(DomainError):
        Dataset(X=np.zeros((3, 2)), y=np.zeros(3))
    with pytest.raises(DomainError):
        Dataset(X=np.array([[1.0, math.nan, 0.0]]), y=np.zeros(1))


def test_dataset_from_pairs():
    data = Dataset.from_pairs(
        [(FeatureVector(100.0, 10.0, 20.0), -80.0), (FeatureVector(200.0, 5.0, -10.0), -85.0)]
    )
    assert len(data) == 2
    assert data.X.tolist() == [[100.0, 10.0, 20.0], [200.0, 5.0, -10.0]]
    assert data.subset(np.array([1])).y.tolist() == [-85.0]


def test_empty_dataset():
    assert len(Dataset.from_pairs([])) == 0


def rows_for(site, points):
    rows = []
    for index, (east, north, up, rsrp) in enumerate(points):
        p = offset(site, east, north, up)
        rows.append(
            {
                "timestamp": float(index),
                "lat": p.latitude_deg,
                "lon": p.longitude_deg,
                "alt_m": p.altitude_m,
                "device": "S21",
                "rsrp_dbm": rsrp,
            }
        )
    return rows


def test_log_geometry_column_order(site):
    log = log_from_rows(rows_for(site, [(100.0, 0.0, 100.0, -80.0)]))
    d_uav, elevation, azimuth = log_geometry(log, site)[0]
    assert d_uav == pytest.approx(100.0 * math.sqrt(2.0), abs=1e-6)
    assert elevation == pytest.approx(45.0, abs=1e-6)
    assert azimuth == pytest.approx(90.0, abs=1e-6)


def test_dataset_from_log_drops_unusable_rows(site):
    log = log_from_rows(
        rows_for(
            site,
            [
                (0.0, 100.0, 30.0, -80.0),
                (0.0, 150.0, 30.0, None),
                (0.0, 0.0, 0.0, -40.0),
                (50.0, 200.0, 30.0, -85.0),
            ],
        )
    )
    data, kept = dataset_from_log(log, site)
    assert kept == [0, 3]
    assert data.y.tolist() == [-80.0, -85.0]
    assert data.X.shape == (2, 3)
