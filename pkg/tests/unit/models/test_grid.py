import io

import pytest

from aerial_kpi.antenna import RESOURCES
from aerial_kpi.exceptions import ConfigError, UnknownModelFamily
from aerial_kpi.models.grid import GRID_FAMILIES, HyperGrid, load_grid


@pytest.mark.parametrize(
    "family, size",
    [("polynomial", 16), ("forest", 24), ("gbt", 24), ("mlp", 432)],
    ids=GRID_FAMILIES,
)
def test_default_grid_sizes(family, size):
    assert HyperGrid().size(family) == size


def test_default_polynomial_grid():
    ranges = HyperGrid().for_family("polynomial")
    assert ranges["degree"] == [2, 3, 4, 5, 6, 7, 8, 9]
    assert ranges["distance_transform"] == ["log10", "linear"]


def test_default_forest_grid():
    ranges = HyperGrid().for_family("forest")
    assert ranges["n_trees"] == [50, 100, 150, 200, 250, 300]
    assert ranges["max_depth"] == [5, 10, 15, 20]


def test_for_family_returns_a_copy():
    grid = HyperGrid()
    grid.for_family("forest")["n_trees"].append(1)
    assert grid.size("forest") == 24


def test_unknown_family():
    with pytest.raises(UnknownModelFamily):
        HyperGrid().for_family("svm")


@pytest.mark.parametrize(
    "forest",
    [{}, {"n_trees": []}, {"n_trees": "50"}],
    ids=["empty_family", "empty_range", "string_range"],
)
def test_empty_ranges_rejected(forest):
    with pytest.raises(ConfigError):
        HyperGrid(forest=forest)


def test_with_overrides_keeps_other_ranges():
    grid = HyperGrid().with_overrides({"forest": {"n_trees": [10]}})
    assert grid.for_family("forest") == {"n_trees": [10], "max_depth": [5, 10, 15, 20]}
    assert grid.size("polynomial") == 16


@pytest.mark.parametrize(
    "document",
    [
        {"svm": {}},
        {"forest": [1, 2]},
        {"forest": {"n_trees": 5}},
        {"forest": {"n_trees": []}},
        {"forest": {"n_tres": [5]}},
        {"gbt": {"degree": [2]}},
    ],
    ids=["unknown_family", "not_object", "not_list", "empty_list", "misspelt", "other_family"],
)
def test_with_overrides_errors(document):
    with pytest.raises(ConfigError):
        HyperGrid().with_overrides(document)


def test_load_grid_resource():
    grid = load_grid(str(RESOURCES / "grid_quick.json"))
    assert grid.for_family("polynomial") == {"degree": [2, 3, 5], "distance_transform": ["log10"]}
    assert grid.size("forest") == 2
    assert grid.size("mlp") == 2


@pytest.mark.parametrize("text", ["{oops", "[1]"], ids=["malformed", "not_object"])
def test_load_grid_errors(text):
    with pytest.raises(ConfigError):
        load_grid(io.StringIO(text))


def test_unknown_parameter_is_named():
    with pytest.raises(ConfigError, match="unknown polynomial grid parameter 'degre'"):
        load_grid(io.StringIO('{"polynomial": {"degre": [2, 3]}}'))


@pytest.mark.parametrize("family", GRID_FAMILIES, ids=GRID_FAMILIES)
def test_every_family_accepts_a_distance_transform_range(family):
    grid = HyperGrid().with_overrides({family: {"distance_transform": ["log10"]}})
    assert grid.for_family(family)["distance_transform"] == ["log10"]
