"""aerial_kpi.models.gbt.gbt"""
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Tuple

import numpy as np

from aerial_kpi.exceptions import DomainError
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset, model_inputs
from aerial_kpi.models.tree import RegressionTree, grow_tree

DEFAULT_LEARNING_RATE = 0.1


@dataclass(frozen=True, eq=False)
class GbtModel(TrainedModel):
    """Squared-loss boosted trees: base_prediction + learning_rate * sum of tree outputs"""

    trees: Tuple[RegressionTree, ...]
    n_trees: int
    max_depth: int
    learning_rate: float
    base_prediction: float
    train_loss: Tuple[float, ...] = ()
    distance_transform: str = "linear"

    family = "gbt"

    def __post_init__(self) -> None:
        """
        Validate tree count, depth and learning rate

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: on a tree count or depth mismatch or a learning rate outside (0, 1]

        """
        if len(self.trees) != self.n_trees:
            raise DomainError(f"model holds {len(self.trees)} trees, expected {self.n_trees}")
        if any(tree.depth > self.max_depth for tree in self.trees):
            raise DomainError(f"a tree exceeds max_depth {self.max_depth}")
        if not 0 < self.learning_rate <= 1:
            raise DomainError("learning_rate must be in (0, 1]")

    @property
    def hyper_parameters(self) -> Dict[str, Any]:
        """
        Tunable settings of the model

        Args:
            N/A

        Returns:
            dict: n_trees, max_depth, learning_rate, distance_transform

        Raises:
            N/A

        """
        return {
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "learning_rate": self.learning_rate,
            "distance_transform": self.distance_transform,
        }

    def tree_outputs(self, X: np.ndarray) -> np.ndarray:
        """
        Unshrunk output of each tree

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n_trees, n)

        Raises:
            N/A

        """
        Z = model_inputs(X, self.distance_transform)
        if not self.trees:
            return np.zeros((0, Z.shape[0]))
        return np.stack([tree.predict(Z) for tree in self.trees])

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Base prediction plus the shrunk sum of tree outputs

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """
        return self.base_prediction + self.learning_rate * self.tree_outputs(X).sum(axis=0)

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready model payload

        Args:
            N/A

        Returns:
            dict: hyper parameters, base prediction, training loss and nested trees

        Raises:
            N/A

        """
        return {
            **self.hyper_parameters,
            "base_prediction": self.base_prediction,
            "train_loss": list(self.train_loss),
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "GbtModel":
        """
        Rebuild a model from its payload

        Args:
            payload: output of to_dict

        Returns:
            GbtModel: model

        Raises:
            N/A

        """
        return cls(
            trees=tuple(RegressionTree.from_dict(tree) for tree in payload["trees"]),
            n_trees=int(payload["n_trees"]),
            max_depth=int(payload["max_depth"]),
            learning_rate=float(payload["learning_rate"]),
            base_prediction=float(payload["base_prediction"]),
            train_loss=tuple(float(v) for v in payload.get("train_loss", ())),
            distance_transform=payload.get("distance_transform", "linear"),
        )


def fit_gbt(
    data: Dataset,
    n_trees: int,
    max_depth: int,
    learning_rate: float = DEFAULT_LEARNING_RATE,
    distance_transform: str = "linear",
) -> GbtModel:
    """
    Gradient boosting under squared loss, each tree fitted to the current residuals

    Args:
        data: training rows
        n_trees: boosting rounds
        max_depth: depth limit per tree
        learning_rate: shrinkage in (0, 1]
        distance_transform: "log10" or "linear" distance feature

    Returns:
        GbtModel: fitted model; train_loss holds the training mse before and after each round

    Raises:
        DomainError: on empty data, a learning rate outside (0, 1] or negative sizes

    """
    if not len(data):
        raise DomainError("boosting needs at least one training row")
    if not 0 < learning_rate <= 1:
        raise DomainError("learning_rate must be in (0, 1]")
    if n_trees < 0 or max_depth < 0:
        raise DomainError("n_trees and max_depth must be >= 0")

    Z = model_inputs(data.X, distance_transform)
    base = float(np.mean(data.y))
    running = np.full(data.y.shape, base)
    loss = [float(np.mean((data.y - running) ** 2))]

    trees = []
    for _ in range(n_trees):
        tree = grow_tree(Z, data.y - running, max_depth=max_depth, min_samples_leaf=1)
        running = running + learning_rate * tree.predict(Z)
        loss.append(float(np.mean((data.y - running) ** 2)))
        trees.append(tree)

    return GbtModel(
        trees=tuple(trees),
        n_trees=n_trees,
        max_depth=max_depth,
        learning_rate=learning_rate,
        base_prediction=base,
        train_loss=tuple(loss),
        distance_transform=distance_transform,
    )


def fit_from_params(data: Dataset, params: Mapping[str, Any], seed: int) -> GbtModel:
    """
    Registry fit entry; boosting draws no randomness so the seed is unused

    Args:
        data: training rows
        params: one grid configuration
        seed: search seed

    Returns:
        GbtModel: fitted model

    Raises:
        N/A

    """
    return fit_gbt(
        data,
        n_trees=int(params["n_trees"]),
        max_depth=int(params["max_depth"]),
        learning_rate=float(params.get("learning_rate", DEFAULT_LEARNING_RATE)),
        distance_transform=str(params.get("distance_transform", "linear")),
    )


MODEL_FAMILY = {
    "model_class": GbtModel,
    "fit": fit_from_params,
    "defaults": {
        "learning_rate": DEFAULT_LEARNING_RATE,
        "distance_transform": "linear",
    },
    "variants": {},
}
