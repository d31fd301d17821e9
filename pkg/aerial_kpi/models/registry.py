"""aerial_kpi.models.registry"""
import importlib
from typing import Any, Dict, Type

from aerial_kpi.exceptions import UnknownModelFamily
from aerial_kpi.models.base import TrainedModel

MODEL_FAMILIES = ("polynomial", "forest", "gbt", "mlp")
FAMILY_ALIASES = {"poly": "polynomial"}


def canonical_family(name: str) -> str:
    """
    Resolve a family name or alias

    Args:
        name: family name, e.g. "poly" or "polynomial"

    Returns:
        str: canonical family name

    Raises:
        UnknownModelFamily: if the name is not a registered family

    """
    family = FAMILY_ALIASES.get(name, name)
    if family not in MODEL_FAMILIES:
        raise UnknownModelFamily(
            f"unknown model family '{name}', expected one of "
            f"{', '.join(sorted(MODEL_FAMILIES + tuple(FAMILY_ALIASES)))}"
        )
    return family


def get_family(name: str) -> Dict[str, Any]:
    """
    MODEL_FAMILY block of a family package

    Args:
        name: family name or alias

    Returns:
        dict: "model_class", "fit", "defaults" and "variants" of the family

    Raises:
        N/A

    """
    module = importlib.import_module(f"aerial_kpi.models.{canonical_family(name)}")
    model_family: Dict[str, Any] = getattr(module, "MODEL_FAMILY")
    return model_family


def model_class(name: str) -> Type[TrainedModel]:
    """
    Model class of a family

    Args:
        name: family name or alias

    Returns:
        type: TrainedModel subclass registered by the family

    Raises:
        N/A

    """
    cls: Type[TrainedModel] = get_family(name)["model_class"]
    return cls
