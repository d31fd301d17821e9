"""aerial_kpi.models.polynomial.polynomial"""
import itertools
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy.special import comb

from aerial_kpi.exceptions import DomainError, RankDeficient
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset, FeatureVector, model_inputs

Exponents = Tuple[int, int, int]

MAX_CONDITION = 1e12
# degrees above this fit on z-scored features
STANDARDIZE_ABOVE_DEGREE = 3


def expand_monomials(degree: int) -> List[Exponents]:
    """
    Exponent triples (i, j, k) of distance, elevation and azimuth with i + j + k <= degree

    Args:
        degree: total degree, >= 0

    Returns:
        list: triples in lexicographic order, (0, 0, 0) first

    Raises:
        DomainError: if degree is negative

    """
    if degree < 0:
        raise DomainError("polynomial degree must be >= 0")
    return [
        (i, j, k)
        for i in range(degree + 1)
        for j in range(degree + 1 - i)
        for k in range(degree + 1 - i - j)
    ]


def n_coefficients(degree: int) -> int:
    """
    Monomials of three variables up to a total degree

    Args:
        degree: total degree

    Returns:
        int: C(degree + 3, 3)

    Raises:
        N/A

    """
    return int(comb(degree + 3, 3, exact=True))


def design_matrix(Z: np.ndarray, monomials: List[Exponents]) -> np.ndarray:
    """
    Monomial columns of transformed feature rows

    Args:
        Z: shape (n, 3) transformed features
        monomials: exponent triples

    Returns:
        ndarray: shape (n, len(monomials))

    Raises:
        N/A

    """
    exponents = np.array(monomials, dtype=np.int64).reshape(-1, 3)
    return np.prod(Z[:, None, :] ** exponents[None, :, :], axis=2)


def destandardize(
    monomials: List[Exponents], coefficients: np.ndarray, mean: np.ndarray, std: np.ndarray
) -> np.ndarray:
    """
    Coefficients over raw features of a polynomial fitted on z = (x - mean) / std

    Args:
        monomials: exponent triples shared by both forms
        coefficients: coefficients over z-scored features
        mean: per-feature mean
        std: per-feature standard deviation

    Returns:
        ndarray: coefficients over raw features, same monomial order

    Raises:
        N/A

    """
    position = {m: index for index, m in enumerate(monomials)}
    raw = np.zeros(len(monomials))
    for (i, j, k), beta in zip(monomials, coefficients):
        scale = beta / (std[0] ** i * std[1] ** j * std[2] ** k)
        # binomial expansion of each (x - mean)^e
        for a, b, c in itertools.product(range(i + 1), range(j + 1), range(k + 1)):
            term = (
                comb(i, a, exact=True)
                * comb(j, b, exact=True)
                * comb(k, c, exact=True)
                * (-mean[0]) ** (i - a)
                * (-mean[1]) ** (j - b)
                * (-mean[2]) ** (k - c)
            )
            raw[position[(a, b, c)]] += scale * term
    return raw


@dataclass(frozen=True, eq=False)
class PolyModel(TrainedModel):
    """
    Multivariate polynomial in (distance feature, elevation, azimuth)

    `coefficients` are over raw (transformed-distance) features. Models fitted above degree 3
    also keep their z-scored form, which is what predict evaluates.
    """

    degree: int
    distance_transform: str
    monomials: Tuple[Exponents, ...]
    coefficients: np.ndarray
    feature_mean: Optional[np.ndarray] = None
    feature_std: Optional[np.ndarray] = None
    standardized_coefficients: Optional[np.ndarray] = None

    family = "polynomial"

    def __post_init__(self) -> None:
        """
        Validate the monomial set against the degree

        Args:
            N/A

        Returns:
            N/A  # noqa: DAR202

        Raises:
            DomainError: if the terms are not the full monomial set of the degree

        """
        if list(self.monomials) != expand_monomials(self.degree):
            raise DomainError(f"monomials do not match degree {self.degree}")
        if len(self.coefficients) != n_coefficients(self.degree):
            raise DomainError(
                f"degree {self.degree} needs {n_coefficients(self.degree)} coefficients"
            )

    @property
    def terms(self) -> List[Tuple[int, int, int, float]]:
        """
        Coefficient per monomial on the raw (transformed, unstandardized) features

        Args:
            N/A

        Returns:
            list: (i, j, k, coefficient) tuples in the expand_monomials order

        Raises:
            N/A

        """
        return [(i, j, k, float(b)) for (i, j, k), b in zip(self.monomials, self.coefficients)]

    @property
    def hyper_parameters(self) -> Dict[str, Any]:
        """
        Tunable settings of the model

        Args:
            N/A

        Returns:
            dict: degree and distance_transform

        Raises:
            N/A

        """
        return {"degree": self.degree, "distance_transform": self.distance_transform}

    @property
    def standardized(self) -> bool:
        """
        Whether the model evaluates on standardized features

        Args:
            N/A

        Returns:
            bool: True when standardized coefficients are held

        Raises:
            N/A

        """
        return self.standardized_coefficients is not None

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        Evaluate the polynomial

        Args:
            X: shape (n, 3) raw features

        Returns:
            ndarray: shape (n,) predictions

        Raises:
            N/A

        """
        Z = model_inputs(X, self.distance_transform)
        if self.standardized:
            Z = (Z - self.feature_mean) / self.feature_std
            return design_matrix(Z, list(self.monomials)) @ self.standardized_coefficients
        return design_matrix(Z, list(self.monomials)) @ self.coefficients

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready model payload

        Args:
            N/A

        Returns:
            dict: degree, distance transform, raw terms and the standardization block if any

        Raises:
            N/A

        """
        payload: Dict[str, Any] = {
            "degree": self.degree,
            "distance_transform": self.distance_transform,
            "terms": [list(term) for term in self.terms],
        }
        if self.standardized:
            payload["standardization"] = {
                "feature_mean": self.feature_mean.tolist(),
                "feature_std": self.feature_std.tolist(),
                "coefficients": self.standardized_coefficients.tolist(),
            }
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "PolyModel":
        """
        Rebuild a model from its payload

        Args:
            payload: output of to_dict

        Returns:
            PolyModel: model

        Raises:
            N/A

        """
        terms = payload["terms"]
        standardization = payload.get("standardization")
        return cls(
            degree=int(payload["degree"]),
            distance_transform=payload["distance_transform"],
            monomials=tuple((int(i), int(j), int(k)) for i, j, k, _ in terms),
            coefficients=np.array([float(b) for *_, b in terms]),
            feature_mean=None if not standardization else np.array(standardization["feature_mean"]),
            feature_std=None if not standardization else np.array(standardization["feature_std"]),
            standardized_coefficients=(
                None if not standardization else np.array(standardization["coefficients"])
            ),
        )


def _solve(A: np.ndarray, y: np.ndarray) -> np.ndarray:
    coefficients, _, _, singular_values = np.linalg.lstsq(A, y, rcond=None)
    smallest = singular_values[-1] if singular_values.size == A.shape[1] else 0.0
    condition = singular_values[0] / smallest if smallest > 0 else np.inf
    if condition > MAX_CONDITION:
        raise RankDeficient(f"polynomial design matrix condition number {condition:.3g} too large")
    return coefficients


def fit_polynomial(data: Dataset, degree: int, distance_transform: str = "log10") -> PolyModel:
    """
    Least-squares polynomial fit through an svd solve of the monomial design matrix

    Args:
        data: training rows
        degree: total degree
        distance_transform: "log10" or "linear"

    Returns:
        PolyModel: fitted model

    Raises:
        RankDeficient: if there are no more rows than coefficients or the design is singular

    """
    monomials = expand_monomials(degree)
    if len(data) <= len(monomials):
        raise RankDeficient(
            f"degree {degree} needs more than {len(monomials)} rows, got {len(data)}"
        )
    Z = model_inputs(data.X, distance_transform)

    if degree <= STANDARDIZE_ABOVE_DEGREE:
        coefficients = _solve(design_matrix(Z, monomials), data.y)
        return PolyModel(
            degree=degree,
            distance_transform=distance_transform,
            monomials=tuple(monomials),
            coefficients=coefficients,
        )

    mean = Z.mean(axis=0)
    std = Z.std(axis=0)
    if np.any(std == 0):
        raise RankDeficient("a feature is constant over the training rows")
    standardized = _solve(design_matrix((Z - mean) / std, monomials), data.y)
    return PolyModel(
        degree=degree,
        distance_transform=distance_transform,
        monomials=tuple(monomials),
        coefficients=destandardize(monomials, standardized, mean, std),
        feature_mean=mean,
        feature_std=std,
        standardized_coefficients=standardized,
    )


def predict_polynomial(m: PolyModel, f: FeatureVector) -> float:
    """
    Evaluate a polynomial model at one feature vector

    Args:
        m: polynomial model
        f: raw features

    Returns:
        float: predicted rsrp in dBm

    Raises:
        N/A

    """
    return m.predict_one(f)


def fit_from_params(data: Dataset, params: Mapping[str, Any], seed: int) -> PolyModel:
    """
    Registry fit entry

    Args:
        data: training rows
        params: one grid configuration
        seed: search seed

    Returns:
        PolyModel: fitted model

    Raises:
        N/A

    """
    # least squares draws no randomness, seed is unused
    return fit_polynomial(
        data,
        degree=int(params["degree"]),
        distance_transform=str(params.get("distance_transform", "log10")),
    )


MODEL_FAMILY = {
    "model_class": PolyModel,
    "fit": fit_from_params,
    "defaults": {
        "distance_transform": "log10",
    },
    "variants": {
        "stable": {"degree": 3, "distance_transform": "log10"},
        "best": {"degree": 5, "distance_transform": "log10"},
    },
}
