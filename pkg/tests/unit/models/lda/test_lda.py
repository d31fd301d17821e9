import numpy as np
import pytest

from aerial_kpi.exceptions import DomainError, SingularCovariance
from aerial_kpi.models.lda import LdaModel, classify_rank, fit_lda

NORMAL = np.array([0.0475, -0.1051, -0.0892])
BIAS = -15.549


def plane_points(n=40, seed=0):
    """Points of the plane NORMAL . x + BIAS = 0 spread over d, azimuth and elevation"""
    rng = np.random.default_rng(seed)
    raw = np.column_stack(
        [rng.uniform(100.0, 800.0, n), rng.uniform(-60.0, 60.0, n), rng.uniform(0.0, 40.0, n)]
    )
    return raw - np.outer((raw @ NORMAL + BIAS) / (NORMAL @ NORMAL), NORMAL)


def mirrored(base, offsets=(2.0, 6.0)):
    points = []
    for b in base:
        for t in offsets:
            points.append((*(b + t * NORMAL), 4))
            points.append((*(b - t * NORMAL), 1))
    return points


def test_fit_recovers_mirrored_plane():
    model = fit_lda(mirrored(plane_points()))
    expected = np.append(NORMAL, BIAS) / np.linalg.norm(NORMAL)

    np.testing.assert_allclose(model.normalized(), expected, rtol=1e-8, atol=1e-8)
    assert model.class_for_positive_side == 4
    assert not model.ridge_applied


def test_fit_separates_training_points():
    points = mirrored(plane_points(seed=1))
    model = fit_lda(points)
    predicted = model.classify(np.array([p[:3] for p in points]))
    assert predicted.tolist() == [p[3] for p in points]


def labelled_sample(n, seed, margin=2.0):
    """Random points at least margin away from the reference plane, rank 4 on its positive side"""
    rng = np.random.default_rng(seed)
    unit = NORMAL / np.linalg.norm(NORMAL)
    side = rng.choice([-1.0, 1.0], n)
    offset = side * rng.uniform(margin, margin + 20.0, n)
    X = plane_points(n=n, seed=seed + 100) + np.outer(offset, unit)
    return X, np.where(side > 0, 4, 1)


def as_points(X, ranks):
    return [(*row, rank) for row, rank in zip(X, ranks)]


def test_held_out_accuracy():
    model = fit_lda(as_points(*labelled_sample(2000, seed=3)))
    X, ranks = labelled_sample(5000, seed=4)

    assert np.mean(model.classify(X) == ranks) >= 0.99


def test_swapped_labels_negate_the_plane():
    X, ranks = labelled_sample(500, seed=5)
    model = fit_lda(as_points(X, ranks))
    swapped = fit_lda(as_points(X, np.where(ranks == 4, 1, 4)))

    np.testing.assert_allclose(swapped.weights, -model.weights, rtol=1e-10)
    assert swapped.bias == pytest.approx(-model.bias, rel=1e-10)


def test_feature_scaling_rescales_the_weights():
    X, ranks = labelled_sample(500, seed=6)
    scale = np.array([0.001, 3.0, 0.5])
    model = fit_lda(as_points(X, ranks))
    scaled = fit_lda(as_points(X * scale, ranks))

    np.testing.assert_allclose(scaled.weights * scale, model.weights, rtol=1e-8, atol=1e-10)
    assert scaled.bias == pytest.approx(model.bias, rel=1e-8)
    held_out, _ = labelled_sample(1000, seed=7)
    np.testing.assert_array_equal(scaled.classify(held_out * scale), model.classify(held_out))


def test_points_on_the_plane_get_the_positive_rank():
    model = LdaModel(weights=np.array([1.0, 0.0, 0.0]), bias=-100.0)
    assert model.score(np.array([100.0, 20.0, -5.0])).tolist() == [0.0]
    assert model.classify(np.array([[100.0, 20.0, -5.0], [99.0, 0.0, 0.0]])).tolist() == [4, 1]


def test_classify_rank():
    model = LdaModel(weights=np.array([1.0, 0.0, 0.0]), bias=-300.0)
    assert classify_rank(model, (350.0, 10.0, 5.0)) == 4
    assert classify_rank(model, (250.0, 10.0, 5.0)) == 1


def test_positive_rank_one_flips_the_plane():
    points = mirrored(plane_points())
    high = fit_lda(points)
    low = fit_lda(points, positive_rank=1)

    assert low.class_for_positive_side == 1
    np.testing.assert_allclose(np.array(low.normalized()), -np.array(high.normalized()), atol=1e-8)
    X = np.array([p[:3] for p in points])
    assert low.classify(X).tolist() == high.classify(X).tolist()


def test_singular_covariance_is_regularized():
    points = [(d, 0.0, 10.0, 4 if d > 300 else 1) for d in np.arange(100.0, 500.0, 20.0)]
    model = fit_lda(points)
    assert model.ridge_applied
    assert model.classify(np.array([[450.0, 0.0, 10.0], [150.0, 0.0, 10.0]])).tolist() == [4, 1]


def test_singular_covariance_strict():
    points = [(d, 0.0, 10.0, 4 if d > 300 else 1) for d in np.arange(100.0, 500.0, 20.0)]
    with pytest.raises(SingularCovariance):
        fit_lda(points, strict=True)


@pytest.mark.parametrize(
    "points",
    [
        [(100.0, 0.0, 0.0, 1), (110.0, 1.0, 2.0, 1), (300.0, 0.0, 5.0, 2), (310.0, 3.0, 1.0, 4)],
        [(100.0, 0.0, 0.0, 1), (300.0, 0.0, 5.0, 4), (310.0, 3.0, 1.0, 4)],
        [(100.0, 0.0, 0.0, 4), (300.0, 0.0, 5.0, 4)],
    ],
    ids=["rank_two", "single_low_point", "single_class"],
)
def test_fit_domain(points):
    with pytest.raises(DomainError):
        fit_lda(points)


def test_model_rejects_zero_weights():
    with pytest.raises(DomainError):
        LdaModel(weights=np.zeros(3), bias=1.0)


def test_document_layout():
    document = LdaModel(weights=np.array([0.5, -1.0, 2.0]), bias=3.0).to_dict()
    assert document == {
        "w_d": 0.5,
        "w_phi": -1.0,
        "w_theta": 2.0,
        "bias": 3.0,
        "class_for_positive_side": 4,
        "class_for_negative_side": 1,
        "ridge_applied": False,
    }
