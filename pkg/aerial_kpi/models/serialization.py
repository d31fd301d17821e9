"""aerial_kpi.models.serialization"""
import hashlib
import json
from pathlib import Path
from typing import IO, Any, Dict, Mapping, Optional, Union

import numpy as np

from aerial_kpi.exceptions import ConfigError
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset
from aerial_kpi.models.registry import model_class

FORMAT_VERSION = 1


def data_hash(data: Dataset) -> str:
    """
    Sha256 of the training rows

    Args:
        data: training rows

    Returns:
        str: hex digest over the float64 feature and target bytes

    Raises:
        N/A

    """
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(data.X, dtype=np.float64).tobytes())
    digest.update(np.ascontiguousarray(data.y, dtype=np.float64).tobytes())
    return digest.hexdigest()


def model_document(
    model: TrainedModel, seed: int, training: Optional[Mapping[str, Any]] = None
) -> Dict[str, Any]:
    """
    Model file document

    Args:
        model: trained model
        seed: fitting seed
        training: training metadata

    Returns:
        dict: format version, family, hyper parameters, seed, training block and model payload

    Raises:
        N/A

    """
    return {
        "format_version": FORMAT_VERSION,
        "family": model.family,
        "hyper_parameters": model.hyper_parameters,
        "seed": seed,
        "model": model.to_dict(),
        "training": dict(training or {}),
    }


def dumps(document: Mapping[str, Any]) -> str:
    """
    Stable json text: sorted keys, two-space indent, trailing newline

    Args:
        document: json-ready mapping

    Returns:
        str: serialized document

    Raises:
        N/A

    """
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def save_model(
    model: TrainedModel,
    destination: Union[str, Path],
    seed: int,
    training: Optional[Mapping[str, Any]] = None,
) -> None:
    """
    Write a model json document

    Args:
        model: fitted model
        destination: output path
        seed: seed the model was fitted with
        training: training metadata (data hash, split seed, row counts, ...)

    Returns:
        N/A  # noqa: DAR202

    Raises:
        N/A

    """
    Path(destination).write_text(dumps(model_document(model, seed, training)), encoding="utf-8")


def model_from_document(document: Mapping[str, Any]) -> TrainedModel:
    """
    Rebuild a model from its json document

    Args:
        document: parsed model json

    Returns:
        TrainedModel: model of the tagged family

    Raises:
        ConfigError: if the document misses its family tag or payload

    """
    if "family" not in document or "model" not in document:
        raise ConfigError("model document needs 'family' and 'model' entries")
    try:
        return model_class(document["family"]).from_dict(document["model"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed {document['family']} model document: {exc}") from exc


def load_model(source: Union[str, Path, IO[str]]) -> TrainedModel:
    """
    Load a model json document

    Args:
        source: path or text stream

    Returns:
        TrainedModel: rebuilt model

    Raises:
        ConfigError: if the document is not valid json

    """
    try:
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as f:
                document = json.load(f)
        else:
            document = json.load(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"model file is not valid json: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("model file must be a json object")
    return model_from_document(document)
