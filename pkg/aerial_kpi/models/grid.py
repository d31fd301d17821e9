"""aerial_kpi.models.grid"""
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Any, Dict, List, Mapping, Sequence, Tuple, Union

from aerial_kpi.exceptions import ConfigError, UnknownModelFamily

GridRanges = Mapping[str, Sequence[Any]]

DEFAULT_POLYNOMIAL_GRID: Dict[str, List[Any]] = {
    "degree": list(range(2, 10)),
    "distance_transform": ["log10", "linear"],
}
DEFAULT_FOREST_GRID: Dict[str, List[Any]] = {
    "n_trees": list(range(50, 301, 50)),
    "max_depth": list(range(5, 21, 5)),
}
DEFAULT_GBT_GRID: Dict[str, List[Any]] = {
    "n_trees": list(range(50, 301, 50)),
    "max_depth": list(range(5, 21, 5)),
}
DEFAULT_MLP_GRID: Dict[str, List[Any]] = {
    "hidden_layers": [1, 2],
    "neurons": [10, 15, 20, 25, 30, 50],
    "activation": ["relu", "tanh", "logistic"],
    "alpha": [0.0001, 0.001, 0.01, 0.1],
    "learning_rate_init": [0.001, 0.01, 0.05],
}

GRID_FAMILIES = ("polynomial", "forest", "gbt", "mlp")
# parameters each family's fit accepts
GRID_PARAMETERS: Dict[str, Tuple[str, ...]] = {
    "polynomial": ("degree", "distance_transform"),
    "forest": ("n_trees", "max_depth", "distance_transform", "n_jobs"),
    "gbt": ("n_trees", "max_depth", "learning_rate", "distance_transform"),
    "mlp": (
        "hidden_layers",
        "neurons",
        "activation",
        "alpha",
        "learning_rate_init",
        "epochs",
        "batch_size",
        "distance_transform",
    ),
}


@dataclass(frozen=True)
class HyperGrid:
    """Per-family hyper-parameter ranges; every range must be non-empty"""

    polynomial: GridRanges = field(default_factory=lambda: dict(DEFAULT_POLYNOMIAL_GRID))
    forest: GridRanges = field(default_factory=lambda: dict(DEFAULT_FOREST_GRID))
    gbt: GridRanges = field(default_factory=lambda: dict(DEFAULT_GBT_GRID))
    mlp: GridRanges = field(default_factory=lambda: dict(DEFAULT_MLP_GRID))

    def __post_init__(self) -> None:
        """
        Validate that every range is non-empty and names a parameter of its family

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            ConfigError: if a family grid or one of its ranges is empty, or a range names an
                unknown parameter

        """
        for family in GRID_FAMILIES:
            ranges = getattr(self, family)
            if not ranges:
                raise ConfigError(f"{family} grid is empty")
            for name, values in ranges.items():
                if name not in GRID_PARAMETERS[family]:
                    raise ConfigError(
                        f"unknown {family} grid parameter '{name}', expected one of "
                        f"{', '.join(GRID_PARAMETERS[family])}"
                    )
                if isinstance(values, (str, bytes)) or not len(values):
                    raise ConfigError(f"{family} grid range '{name}' must be a non-empty list")

    def for_family(self, family: str) -> Dict[str, List[Any]]:
        """
        Parameter ranges of one family

        Args:
            family: one of GRID_FAMILIES

        Returns:
            dict: parameter name -> candidate values

        Raises:
            UnknownModelFamily: if the family has no grid

        """
        if family not in GRID_FAMILIES:
            raise UnknownModelFamily(
                f"no grid for model family '{family}', expected one of {', '.join(GRID_FAMILIES)}"
            )
        return {name: list(values) for name, values in getattr(self, family).items()}

    def size(self, family: str) -> int:
        """
        Number of configurations of a family

        Args:
            family: model family name or alias

        Returns:
            int: product of the value counts

        Raises:
            N/A

        """
        count = 1
        for values in self.for_family(family).values():
            count *= len(values)
        return count

    def with_overrides(self, document: Mapping[str, Any]) -> "HyperGrid":
        """
        Copy of the grid with per-family ranges replaced, other ranges keep their values

        Args:
            document: {"family": {"parameter": [values, ...]}} overrides

        Returns:
            HyperGrid: updated grid

        Raises:
            ConfigError: on unknown families or parameters, or non-object family entries

        """
        changes: Dict[str, Dict[str, List[Any]]] = {}
        for family, ranges in document.items():
            if family not in GRID_FAMILIES:
                raise ConfigError(
                    f"unknown grid family '{family}', expected one of {', '.join(GRID_FAMILIES)}"
                )
            if not isinstance(ranges, dict):
                raise ConfigError(f"grid entry for '{family}' must be a json object")
            merged = self.for_family(family)
            for name, values in ranges.items():
                if not isinstance(values, list):
                    raise ConfigError(f"{family} grid range '{name}' must be a list")
                merged[name] = values
            changes[family] = merged
        return replace(self, **changes)


def load_grid(source: Union[str, Path, IO[str]]) -> HyperGrid:
    """
    Load grid overrides on top of the default grid

    Args:
        source: path or text stream of a grid json document

    Returns:
        HyperGrid: default grid with the document's overrides

    Raises:
        ConfigError: if the document is not a json object or names an unknown family or parameter

    """
    try:
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as f:
                document = json.load(f)
        else:
            document = json.load(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"grid is not valid json: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("grid must be a json object")
    return HyperGrid().with_overrides(document)
