"""aerial_kpi.models.mlp.mlp"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from aerial_kpi.exceptions import DomainError, NonFinite
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset, model_inputs

ACTIVATIONS = ("relu", "tanh", "logistic")

BETA_1 = 0.9
BETA_2 = 0.999
EPSILON = 1e-8

Layer = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class MlpConfig:
    hidden_layers: int = 1
    neurons: int = 20
    activation: str = "relu"
    alpha: float = 0.0001
    learning_rate_init: float = 0.001
    epochs: int = 500
    batch_size: Optional[int] = None
    distance_transform: str = "log10"

    def __post_init__(self) -> None:
        """
        Validate network shape and optimizer settings

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: on an unsupported shape, activation or optimizer setting

        """
        if self.hidden_layers not in (1, 2):
            raise DomainError("mlp supports 1 or 2 hidden layers")
        if self.neurons < 1:
            raise DomainError("neurons must be >= 1")
        if self.activation not in ACTIVATIONS:
            raise DomainError(
                f"unknown activation '{self.activation}', expected one of {', '.join(ACTIVATIONS)}"
            )
        if self.alpha < 0 or self.learning_rate_init <= 0 or self.epochs < 0:
            raise DomainError("alpha >= 0, learning_rate_init > 0 and epochs >= 0 required")
        if self.batch_size is not None and self.batch_size < 1:
            raise DomainError("batch_size must be >= 1")

    @property
    def layer_sizes(self) -> List[int]:
        """
        Widths from input to output

        Args:
            N/A

        Returns:
            list: 3, hidden widths, 1

        Raises:
            N/A

        """
        return [3] + [self.neurons] * self.hidden_layers + [1]

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready configuration

        Args:
            N/A

        Returns:
            dict: every config field

        Raises:
            N/A

        """
        return {
            "hidden_layers": self.hidden_layers,
            "neurons": self.neurons,
            "activation": self.activation,
            "alpha": self.alpha,
            "learning_rate_init": self.learning_rate_init,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "distance_transform": self.distance_transform,
        }


def _activate(Z: np.ndarray, activation: str) -> np.ndarray:
    if activation == "relu":
        return np.maximum(Z, 0.0)
    if activation == "tanh":
        return np.tanh(Z)
    return 1.0 / (1.0 + np.exp(-Z))


def _activation_derivative(Z: np.ndarray, A: np.ndarray, activation: str) -> np.ndarray:
    if activation == "relu":
        return (Z > 0).astype(float)
    if activation == "tanh":
        return 1.0 - A**2
    return A * (1.0 - A)


def initialize_network(
    layer_sizes: Sequence[int], activation: str, rng: np.random.Generator
) -> List[Layer]:
    """
    Glorot-uniform weights and biases

    Args:
        layer_sizes: units per layer, inputs first, output last
        activation: hidden activation, logistic layers use the narrower bound
        rng: random generator

    Returns:
        list: (weights, biases) per layer

    Raises:
        N/A

    """
    factor = 2.0 if activation == "logistic" else 6.0
    layers = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = math.sqrt(factor / (fan_in + fan_out))
        weights = rng.uniform(-bound, bound, size=(fan_in, fan_out))
        biases = rng.uniform(-bound, bound, size=fan_out)
        layers.append((weights, biases))
    return layers


def forward(layers: Sequence[Layer], X: np.ndarray, activation: str) -> np.ndarray:
    """
    Network output, linear last layer

    Args:
        layers: (weights, biases) per layer
        X: shape (n, n_inputs) standardized inputs
        activation: "relu" or "tanh" for hidden layers

    Returns:
        ndarray: shape (n, 1) outputs

    Raises:
        N/A

    """
    A = X
    for index, (weights, biases) in enumerate(layers):
        Z = A @ weights + biases
        A = Z if index == len(layers) - 1 else _activate(Z, activation)
    return A


def loss_and_gradients(
    layers: Sequence[Layer], X: np.ndarray, y: np.ndarray, activation: str, alpha: float
) -> Tuple[float, List[Layer]]:
    """
    Half mean squared error plus alpha / (2 n) times the squared weight norm, with gradients

    Args:
        layers: (weights, biases) per layer
        X: shape (n, inputs) inputs
        y: shape (n, outputs) targets
        activation: hidden activation
        alpha: l2 penalty

    Returns:
        tuple: (loss, [(d weights, d biases) per layer])

    Raises:
        N/A

    """
    n = X.shape[0]
    pre: List[np.ndarray] = []
    post: List[np.ndarray] = [X]
    for index, (weights, biases) in enumerate(layers):
        Z = post[-1] @ weights + biases
        pre.append(Z)
        post.append(Z if index == len(layers) - 1 else _activate(Z, activation))

    residual = post[-1] - y
    penalty = sum(float(np.sum(weights**2)) for weights, _ in layers)
    loss = 0.5 * float(np.mean(np.sum(residual**2, axis=1))) + 0.5 * alpha * penalty / n

    gradients: List[Layer] = []
    delta = residual / n
    for index in range(len(layers) - 1, -1, -1):
        weights, _ = layers[index]
        gradients.append((post[index].T @ delta + alpha * weights / n, delta.sum(axis=0)))
        if index:
            delta = (delta @ weights.T) * _activation_derivative(
                pre[index - 1], post[index], activation
            )
    return loss, gradients[::-1]


def flatten_layers(layers: Sequence[Layer]) -> np.ndarray:
    """
    All weights and biases as one vector

    Args:
        layers: (weights, biases) per layer

    Returns:
        ndarray: parameters, layer by layer

    Raises:
        N/A

    """
    return np.concatenate([np.concatenate([w.ravel(), b.ravel()]) for w, b in layers])


def unflatten_layers(vector: np.ndarray, layer_sizes: Sequence[int]) -> List[Layer]:
    """
    Inverse of flatten_layers

    Args:
        vector: flat parameters
        layer_sizes: widths from input to output

    Returns:
        list: (weights, biases) per layer

    Raises:
        N/A

    """
    layers = []
    offset = 0
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        weights = vector[offset : offset + fan_in * fan_out].reshape(fan_in, fan_out)
        offset += fan_in * fan_out
        biases = vector[offset : offset + fan_out]
        offset += fan_out
        layers.append((weights.copy(), biases.copy()))
    return layers


def _scale(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    mean = values.mean(axis=0)
    std = values.std(axis=0)
    return mean, np.where(std > 0, std, 1.0)


@dataclass(frozen=True, eq=False)
class MlpModel(TrainedModel):
    config: MlpConfig
    layers: Tuple[Layer, ...]
    feature_mean: np.ndarray
    feature_std: np.ndarray
    target_mean: float
    target_std: float
    train_loss: Tuple[float, ...] = field(default=())

    family = "mlp"

    def __post_init__(self) -> None:
        """
        Validate layer shapes and standardization

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: on inconsistent layer shapes or non-positive stds

        """
        sizes = self.config.layer_sizes
        for (weights, biases), fan_in, fan_out in zip(self.layers, sizes[:-1], sizes[1:]):
            if weights.shape != (fan_in, fan_out) or biases.shape != (fan_out,):
                raise DomainError("mlp layer shapes do not match the configuration")
        if len(self.layers) != len(sizes) - 1:
            raise DomainError("mlp layer count does not match the configuration")
        if np.any(self.feature_std <= 0) or not self.target_std > 0:
            raise DomainError("standardization stds must be > 0")

    @property
    def hyper_parameters(self) -> Dict[str, Any]:
        """
        Tunable settings of the model

        Args:
            N/A

        Returns:
            dict: the training configuration

        Raises:
            N/A

        """
        return self.config.to_dict()

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Network prediction mapped back to dBm

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """
        Z = (model_inputs(X, self.config.distance_transform) - self.feature_mean) / self.feature_std
        out = forward(self.layers, Z, self.config.activation)[:, 0]
        return out * self.target_std + self.target_mean

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready model payload

        Args:
            N/A

        Returns:
            dict: config, layers and standardization statistics

        Raises:
            N/A

        """
        return {
            "config": self.config.to_dict(),
            "layers": [{"weights": w.tolist(), "biases": b.tolist()} for w, b in self.layers],
            "feature_mean": self.feature_mean.tolist(),
            "feature_std": self.feature_std.tolist(),
            "target_mean": self.target_mean,
            "target_std": self.target_std,
            "train_loss": list(self.train_loss),
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "MlpModel":
        """
        Rebuild a model from its payload

        Args:
            payload: output of to_dict

        Returns:
            MlpModel: model

        Raises:
            N/A

        """
        return cls(
            config=MlpConfig(**payload["config"]),
            layers=tuple(
                (np.array(layer["weights"], dtype=float), np.array(layer["biases"], dtype=float))
                for layer in payload["layers"]
            ),
            feature_mean=np.array(payload["feature_mean"], dtype=float),
            feature_std=np.array(payload["feature_std"], dtype=float),
            target_mean=float(payload["target_mean"]),
            target_std=float(payload["target_std"]),
            train_loss=tuple(float(v) for v in payload.get("train_loss", ())),
        )


def fit_mlp(data: Dataset, config: MlpConfig, seed: int) -> MlpModel:
    """
    Train a regression mlp on standardized features and target with adam

    The network is initialized from default_rng(seed) before anything else draws from it, so
    epochs=0 returns exactly initialize_network(config.layer_sizes, config.activation, rng).

    Args:
        data: training rows
        config: network and optimizer settings
        seed: initialization and shuffling seed

    Returns:
        MlpModel: trained network

    Raises:
        DomainError: if there are fewer rows than the batch size
        NonFinite: if the loss diverges

    """
    batch_size = config.batch_size or len(data)
    if not len(data) or len(data) < batch_size:
        raise DomainError(f"mlp needs at least {batch_size} rows, got {len(data)}")

    rng = np.random.default_rng(seed)
    sizes = config.layer_sizes
    layers = initialize_network(sizes, config.activation, rng)

    Z = model_inputs(data.X, config.distance_transform)
    feature_mean, feature_std = _scale(Z)
    target_mean, target_std = _scale(data.y)
    X = (Z - feature_mean) / feature_std
    y = ((data.y - target_mean) / target_std).reshape(-1, 1)

    params = flatten_layers(layers)
    first_moment = np.zeros_like(params)
    second_moment = np.zeros_like(params)
    step = 0
    losses = []
    for _ in range(config.epochs):
        order = rng.permutation(len(data)) if batch_size < len(data) else np.arange(len(data))
        epoch_loss = 0.0
        for start in range(0, len(data), batch_size):
            batch = order[start : start + batch_size]
            loss, gradients = loss_and_gradients(
                unflatten_layers(params, sizes), X[batch], y[batch], config.activation, config.alpha
            )
            if not math.isfinite(loss):
                raise NonFinite(f"mlp loss diverged at update {step}")
            step += 1
            grad = flatten_layers(gradients)
            first_moment = BETA_1 * first_moment + (1 - BETA_1) * grad
            second_moment = BETA_2 * second_moment + (1 - BETA_2) * grad**2
            rate = (
                config.learning_rate_init * math.sqrt(1 - BETA_2**step) / (1 - BETA_1**step)
            )
            params = params - rate * first_moment / (np.sqrt(second_moment) + EPSILON)
            epoch_loss += loss * batch.size
        losses.append(epoch_loss / len(data))

    if not np.all(np.isfinite(params)):
        raise NonFinite("mlp weights are not finite")
    return MlpModel(
        config=config,
        layers=tuple(unflatten_layers(params, sizes)),
        feature_mean=feature_mean,
        feature_std=feature_std,
        target_mean=float(target_mean),
        target_std=float(target_std),
        train_loss=tuple(losses),
    )


def fit_from_params(data: Dataset, params: Mapping[str, Any], seed: int) -> MlpModel:
    """
    Registry fit entry

    Args:
        data: training rows
        params: one grid configuration
        seed: weight initialization and minibatch seed

    Returns:
        MlpModel: fitted model

    Raises:
        N/A

    """
    return fit_mlp(data, MlpConfig(**dict(params)), seed)


MODEL_FAMILY = {
    "model_class": MlpModel,
    "fit": fit_from_params,
    "defaults": {
        "epochs": 500,
        "batch_size": None,
        "distance_transform": "log10",
    },
    "variants": {},
}
