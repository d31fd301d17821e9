"""aerial_kpi.models.tree"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

LEAF = -1
# values closer than this are not split apart
FEATURE_THRESHOLD = 1e-7
IMPURITY_EPSILON = 10 * np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class RegressionTree:
    """
    Axis-aligned regression tree in flat node arrays, node 0 is the root

    Leaves have feature == LEAF. A row goes left when float32(x[feature]) <= threshold, the
    precision CART split on.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @classmethod
    def leaf(cls, value: float) -> "RegressionTree":
        """
        Single-leaf tree

        Args:
            value: prediction for every row

        Returns:
            RegressionTree: one-node tree

        Raises:
            N/A

        """
        return cls(
            feature=np.array([LEAF]),
            threshold=np.array([0.0]),
            left=np.array([LEAF]),
            right=np.array([LEAF]),
            value=np.array([float(value)]),
        )

    @property
    def n_nodes(self) -> int:
        """
        Node count

        Args:
            N/A

        Returns:
            int: number of nodes, leaves included

        Raises:
            N/A

        """
        return int(self.feature.size)

    @property
    def depth(self) -> int:
        """
        Longest root-to-leaf path

        Args:
            N/A

        Returns:
            int: depth, 0 for a single leaf

        Raises:
            N/A

        """
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        for node in range(self.n_nodes):
            if self.feature[node] != LEAF:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max())

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Leaf values reached by each row

        Args:
            X: shape (n, n_features) inputs

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """
        Xf = np.asarray(X, dtype=np.float32).astype(np.float64)
        node = np.zeros(Xf.shape[0], dtype=np.int64)
        while True:
            active = np.flatnonzero(self.feature[node] != LEAF)
            if not active.size:
                return self.value[node]
            at = node[active]
            go_left = Xf[active, self.feature[at]] <= self.threshold[at]
            node[active] = np.where(go_left, self.left[at], self.right[at])

    def to_dict(self, node: int = 0) -> Dict[str, Any]:
        """
        Nested {feature, threshold, left, right} / {leaf_value} document

        Args:
            node: subtree root

        Returns:
            dict: json-ready subtree

        Raises:
            N/A

        """
        if self.feature[node] == LEAF:
            return {"leaf_value": float(self.value[node])}
        return {
            "feature": int(self.feature[node]),
            "threshold": float(self.threshold[node]),
            "left": self.to_dict(int(self.left[node])),
            "right": self.to_dict(int(self.right[node])),
        }

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "RegressionTree":
        """
        Rebuild a tree from its nested document, nodes numbered in preorder

        Args:
            document: output of to_dict

        Returns:
            RegressionTree: flat tree

        Raises:
            N/A

        """
        feature: List[int] = []
        threshold: List[float] = []
        left: List[int] = []
        right: List[int] = []
        value: List[float] = []

        def visit(subtree: Dict[str, Any]) -> int:
            node = len(feature)
            if "leaf_value" in subtree:
                feature.append(LEAF)
                threshold.append(0.0)
                left.append(LEAF)
                right.append(LEAF)
                value.append(float(subtree["leaf_value"]))
                return node
            feature.append(int(subtree["feature"]))
            threshold.append(float(subtree["threshold"]))
            left.append(LEAF)
            right.append(LEAF)
            value.append(0.0)
            left[node] = visit(subtree["left"])
            right[node] = visit(subtree["right"])
            return node

        visit(document)
        return cls(
            feature=np.array(feature, dtype=np.int64),
            threshold=np.array(threshold, dtype=np.float64),
            left=np.array(left, dtype=np.int64),
            right=np.array(right, dtype=np.int64),
            value=np.array(value, dtype=np.float64),
        )


def _best_split(X: np.ndarray, y: np.ndarray, min_samples_leaf: int) -> Optional[Tuple[int, float]]:
    """
    Squared-error split with the largest variance reduction

    Features are scanned in index order and thresholds in ascending order; only a strictly
    better candidate replaces the current best, so gain ties keep the lowest feature index and
    then the lowest threshold.

    Args:
        X: shape (n, n_features) float32-exact inputs of the node
        y: shape (n,) node targets
        min_samples_leaf: minimum rows per child

    Returns:
        tuple or None: (feature, threshold), None when no valid split exists

    Raises:
        N/A

    """
    n = y.size
    total = float(np.sum(y))
    n_left = np.arange(1, n, dtype=np.float64)
    sized = (n_left >= min_samples_leaf) & (n - n_left >= min_samples_leaf)

    best_proxy, best = -np.inf, None
    for feature in range(X.shape[1]):
        order = np.argsort(X[:, feature], kind="stable")
        xs = X[order, feature]
        valid = sized & (xs[1:] > xs[:-1] + FEATURE_THRESHOLD)
        if not valid.any():
            continue
        left_sum = np.cumsum(y[order])[:-1]
        # sum_left^2 / n_left + sum_right^2 / n_right ranks splits like the sse reduction
        proxy = np.where(
            valid, left_sum**2 / n_left + (total - left_sum) ** 2 / (n - n_left), -np.inf
        )
        position = int(np.argmax(proxy))
        if proxy[position] > best_proxy:
            best_proxy = float(proxy[position])
            lower, upper = float(xs[position]), float(xs[position + 1])
            threshold = lower / 2.0 + upper / 2.0
            if threshold == upper or not np.isfinite(threshold):
                threshold = lower
            best = (feature, threshold)
    return best


def grow_tree(
    X: np.ndarray, y: np.ndarray, max_depth: int, min_samples_leaf: int
) -> RegressionTree:
    """
    Fit one squared-error CART tree, depth first

    Inputs are rounded to float32 first so that thresholds sit between float32 values, the
    precision predict compares in. A node becomes a leaf at max_depth, below
    2 * min_samples_leaf rows, when its targets are constant or when no feature varies.

    Args:
        X: shape (n, n_features) inputs
        y: shape (n,) targets
        max_depth: depth limit, 0 gives a single leaf
        min_samples_leaf: minimum rows per leaf

    Returns:
        RegressionTree: fitted tree

    Raises:
        N/A

    """
    Xf = np.asarray(X, dtype=np.float32).astype(np.float64)
    y = np.asarray(y, dtype=np.float64)
    if max_depth == 0 or y.size < 2:
        return RegressionTree.leaf(float(np.mean(y)))

    feature: List[int] = []
    threshold: List[float] = []
    left: List[int] = []
    right: List[int] = []
    value: List[float] = []

    def build(rows: np.ndarray, depth: int) -> int:
        node = len(feature)
        targets = y[rows]
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(float(np.mean(targets)))
        if (
            depth >= max_depth
            or rows.size < 2 * min_samples_leaf
            or float(np.var(targets)) <= IMPURITY_EPSILON
        ):
            return node
        split = _best_split(Xf[rows], targets, min_samples_leaf)
        if split is None:
            return node
        feature[node], threshold[node] = split
        go_left = Xf[rows, split[0]] <= split[1]
        left[node] = build(rows[go_left], depth + 1)
        right[node] = build(rows[~go_left], depth + 1)
        return node

    build(np.arange(y.size), 0)
    return RegressionTree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.array(value, dtype=np.float64),
    )
