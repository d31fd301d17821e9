"""aerial_kpi.models.forest.forest"""
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Tuple

import numpy as np
from joblib import Parallel, delayed

from aerial_kpi.exceptions import DomainError
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset, model_inputs
from aerial_kpi.models.tree import RegressionTree, grow_tree

MIN_SAMPLES_LEAF = 2


@dataclass(frozen=True, eq=False)
class ForestModel(TrainedModel):
    trees: Tuple[RegressionTree, ...]
    n_trees: int
    max_depth: int
    distance_transform: str = "linear"

    family = "forest"

    def __post_init__(self) -> None:
        """
        Validate tree count and depth

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if the trees do not match n_trees or max_depth

        """
        if len(self.trees) != self.n_trees:
            raise DomainError(f"forest holds {len(self.trees)} trees, expected {self.n_trees}")
        if any(tree.depth > self.max_depth for tree in self.trees):
            raise DomainError(f"a tree exceeds max_depth {self.max_depth}")

    @property
    def hyper_parameters(self) -> Dict[str, Any]:
        """
        Tunable settings of the model

        Args:
            N/A

        Returns:
            dict: n_trees, max_depth, distance_transform

        Raises:
            N/A

        """
        return {
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "distance_transform": self.distance_transform,
        }

    def tree_predictions(self, X: np.ndarray) -> np.ndarray:
        """
        Prediction of every tree

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n_trees, n)

        Raises:
            N/A

        """
        Z = model_inputs(X, self.distance_transform)
        return np.stack([tree.predict(Z) for tree in self.trees])

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Mean of the tree predictions

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """
        return self.tree_predictions(X).mean(axis=0)

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready model payload

        Args:
            N/A

        Returns:
            dict: hyper parameters and nested trees

        Raises:
            N/A

        """
        return {**self.hyper_parameters, "trees": [tree.to_dict() for tree in self.trees]}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ForestModel":
        """
        Rebuild a model from its payload

        Args:
            payload: output of to_dict

        Returns:
            ForestModel: model

        Raises:
            N/A

        """
        return cls(
            trees=tuple(RegressionTree.from_dict(tree) for tree in payload["trees"]),
            n_trees=int(payload["n_trees"]),
            max_depth=int(payload["max_depth"]),
            distance_transform=payload.get("distance_transform", "linear"),
        )


def _fit_tree(
    Z: np.ndarray,
    y: np.ndarray,
    max_depth: int,
    stream: np.random.SeedSequence,
    bootstrap: bool,
) -> RegressionTree:
    rows = np.arange(y.size)
    if bootstrap:
        rows = np.random.default_rng(stream).integers(0, y.size, size=y.size)
    return grow_tree(Z[rows], y[rows], max_depth=max_depth, min_samples_leaf=MIN_SAMPLES_LEAF)


def fit_forest(
    data: Dataset,
    n_trees: int,
    max_depth: int,
    seed: int,
    distance_transform: str = "linear",
    n_jobs: int = 1,
) -> ForestModel:
    """
    Bagged CART regression trees

    Every tree draws its bootstrap rows from its own child stream of
    SeedSequence(seed), so the forest is identical for any n_jobs. A single-tree forest is
    fitted on all rows.

    Args:
        data: training rows
        n_trees: number of trees
        max_depth: depth limit per tree, 0 for single leaves
        seed: forest seed
        distance_transform: "log10" or "linear" distance feature
        n_jobs: joblib workers growing trees

    Returns:
        ForestModel: fitted forest

    Raises:
        DomainError: on empty data or non-positive n_trees

    """
    if not len(data):
        raise DomainError("forest needs at least one training row")
    if n_trees < 1 or max_depth < 0:
        raise DomainError("forest needs n_trees >= 1 and max_depth >= 0")

    Z = model_inputs(data.X, distance_transform)
    streams = np.random.SeedSequence(seed).spawn(n_trees)
    trees = Parallel(n_jobs=n_jobs)(
        delayed(_fit_tree)(Z, data.y, max_depth, stream, n_trees > 1) for stream in streams
    )
    return ForestModel(
        trees=tuple(trees),
        n_trees=n_trees,
        max_depth=max_depth,
        distance_transform=distance_transform,
    )


def fit_from_params(data: Dataset, params: Mapping[str, Any], seed: int) -> ForestModel:
    """
    Registry fit entry

    Args:
        data: training rows
        params: one grid configuration
        seed: bootstrap seed

    Returns:
        ForestModel: fitted model

    Raises:
        N/A

    """
    return fit_forest(
        data,
        n_trees=int(params["n_trees"]),
        max_depth=int(params["max_depth"]),
        seed=seed,
        distance_transform=str(params.get("distance_transform", "linear")),
        n_jobs=int(params.get("n_jobs", 1)),
    )


MODEL_FAMILY = {
    "model_class": ForestModel,
    "fit": fit_from_params,
    "defaults": {
        "distance_transform": "linear",
        "min_samples_leaf": MIN_SAMPLES_LEAF,
        "n_jobs": 1,
    },
    "variants": {},
}
