import io
import json

import numpy as np
import pytest

from aerial_kpi.exceptions import ConfigError, UnknownModelFamily
from aerial_kpi.models.features import Dataset
from aerial_kpi.models.forest.forest import fit_forest
from aerial_kpi.models.gbt.gbt import fit_gbt
from aerial_kpi.models.mlp.mlp import MlpConfig, fit_mlp
from aerial_kpi.models.polynomial.polynomial import fit_polynomial
from aerial_kpi.models.serialization import (
    FORMAT_VERSION,
    data_hash,
    dumps,
    load_model,
    model_document,
    save_model,
)


@pytest.fixture
def data():
    rng = np.random.default_rng(0)
    X = np.column_stack(
        [rng.uniform(100.0, 900.0, 80), rng.uniform(0.0, 30.0, 80), rng.uniform(-50.0, 50.0, 80)]
    )
    return Dataset(X=X, y=-50.0 - 20.0 * np.log10(X[:, 0]) - 0.1 * X[:, 1])


FITTERS = {
    "polynomial": lambda data: fit_polynomial(data, degree=4),
    "forest": lambda data: fit_forest(data, n_trees=3, max_depth=4, seed=1),
    "gbt": lambda data: fit_gbt(data, n_trees=4, max_depth=2),
    "mlp": lambda data: fit_mlp(data, MlpConfig(neurons=5, epochs=5), seed=1),
}


@pytest.mark.parametrize("family", list(FITTERS), ids=list(FITTERS))
def test_save_and_load(tmp_path, data, family):
    model = FITTERS[family](data)
    destination = tmp_path / f"{family}.json"
    save_model(model, destination, seed=1, training={"data_sha256": data_hash(data)})

    document = json.loads(destination.read_text())
    assert document["format_version"] == FORMAT_VERSION
    assert document["family"] == family
    assert document["seed"] == 1
    assert document["training"]["data_sha256"] == data_hash(data)
    assert document["hyper_parameters"] == model.hyper_parameters

    loaded = load_model(str(destination))
    assert loaded.family == family
    np.testing.assert_allclose(loaded.predict(data.X), model.predict(data.X))


@pytest.mark.parametrize("family", list(FITTERS), ids=list(FITTERS))
def test_refit_writes_identical_bytes(tmp_path, data, family):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    save_model(FITTERS[family](data), first, seed=1, training={"data_sha256": data_hash(data)})
    save_model(FITTERS[family](data), second, seed=1, training={"data_sha256": data_hash(data)})

    assert first.read_bytes() == second.read_bytes()


def test_dumps_is_stable(data):
    model = FITTERS["gbt"](data)
    text = dumps(model_document(model, seed=1))
    assert text.endswith("\n")
    assert text == dumps(json.loads(text))
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_data_hash(data):
    assert data_hash(data) == data_hash(Dataset(X=data.X.copy(), y=data.y.copy()))
    assert data_hash(data) != data_hash(Dataset(X=data.X, y=data.y + 1.0))


@pytest.mark.parametrize(
    "text",
    ["{not json", "[]", '{"family": "forest"}', '{"family": "forest", "model": {"n_trees": 1}}'],
    ids=["malformed", "not_object", "no_payload", "bad_payload"],
)
def test_load_model_errors(text):
    with pytest.raises(ConfigError):
        load_model(io.StringIO(text))


def test_load_model_unknown_family():
    with pytest.raises(UnknownModelFamily):
        load_model(io.StringIO('{"family": "svm", "model": {}}'))
