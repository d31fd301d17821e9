"""aerial_kpi.models.base"""
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict

import numpy as np

from aerial_kpi.models.features import FeatureVector


class TrainedModel(ABC):
    """Fitted rsrp predictor over raw (d_uav_m, elevation_deg, azimuth_deg) feature rows"""

    family: ClassVar[str] = ""

    @abstractmethod
    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Predict a batch of raw feature rows

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """

    @property
    @abstractmethod
    def hyper_parameters(self) -> Dict[str, Any]:
        """
        Hyper-parameters the model was fitted with

        Args:
            N/A

        Returns:
            dict: json-ready hyper-parameters

        Raises:
            N/A

        """

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready payload from which from_dict rebuilds an identical model

        Args:
            N/A

        Returns:
            dict: model payload

        Raises:
            N/A

        """

    @classmethod
    @abstractmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "TrainedModel":
        """
        Rebuild a model from its payload

        Args:
            payload: output of to_dict

        Returns:
            TrainedModel: rebuilt model

        Raises:
            N/A

        """

    def predict_one(self, f: FeatureVector) -> float:
        """
        Prediction for a single feature vector

        Args:
            f: distance, elevation and azimuth of one sample

        Returns:
            float: predicted rsrp in dBm

        Raises:
            N/A

        """
        return float(self.predict(np.array([[f.d_uav_m, f.elevation_deg, f.azimuth_deg]]))[0])
