"""aerial_kpi.models.search"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from sklearn.model_selection import ParameterGrid, train_test_split

from aerial_kpi.evaluation.metrics import EvalReport, metrics
from aerial_kpi.exceptions import DomainError, NumericalError
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import Dataset
from aerial_kpi.models.grid import HyperGrid
from aerial_kpi.models.registry import canonical_family, get_family

LOG = logging.getLogger(__name__)

TEST_FRACTION = 0.3
# a later configuration must beat the best test rmse by more than this
RMSE_TIE_DB = 1e-9


@dataclass(frozen=True)
class LeaderboardEntry:
    params: Dict[str, Any]
    report: Optional[EvalReport] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """
        Json-ready leaderboard row

        Args:
            N/A

        Returns:
            dict: params, test report (None when the fit failed) and error

        Raises:
            N/A

        """
        return {
            "params": self.params,
            "report": None if self.report is None else self.report.to_dict(),
            "error": self.error,
        }


@dataclass(frozen=True, eq=False)
class GridSearchResult:
    family: str
    best: TrainedModel
    best_params: Dict[str, Any]
    leaderboard: Tuple[LeaderboardEntry, ...]
    seed: int
    train_rows: int
    test_rows: int
    metadata: Dict[str, Any] = field(default_factory=dict)

    def leaderboard_document(self) -> Dict[str, Any]:
        """
        Json-ready search summary

        Args:
            N/A

        Returns:
            dict: family, seeds, split sizes, best params and every leaderboard row

        Raises:
            N/A

        """
        return {
            "family": self.family,
            "seed": self.seed,
            "split_seed": self.seed,
            "train_rows": self.train_rows,
            "test_rows": self.test_rows,
            "best_params": self.best_params,
            "rows": [entry.to_dict() for entry in self.leaderboard],
        }


def split_dataset(data: Dataset, seed: int) -> Tuple[Dataset, Dataset]:
    """
    Seeded uniform 70-30 train/test split

    Args:
        data: rows to split, at least 2
        seed: split seed

    Returns:
        tuple: (train, test)

    Raises:
        DomainError: if there are fewer than 2 rows

    """
    if len(data) < 2:
        raise DomainError("a train/test split needs at least 2 rows")
    train, test = train_test_split(
        np.arange(len(data)), test_size=TEST_FRACTION, random_state=seed, shuffle=True
    )
    return data.subset(np.sort(train)), data.subset(np.sort(test))


def grid_search(data: Dataset, grid: HyperGrid, model_family: str, seed: int) -> GridSearchResult:
    """
    Exhaustive search over a family's grid on one seeded 70-30 split

    Configurations whose fit fails numerically stay on the leaderboard with their error and
    without a report. Test rmse within RMSE_TIE_DB of the best keeps the earlier configuration,
    so on noiseless data the lowest sufficient polynomial degree wins.

    Args:
        data: all rows
        grid: hyper-parameter ranges
        model_family: family name or alias
        seed: split and fitting seed

    Returns:
        GridSearchResult: lowest test rmse model and the full leaderboard in grid order

    Raises:
        NumericalError: if no configuration could be fitted

    """
    family = canonical_family(model_family)
    definition = get_family(family)
    train, test = split_dataset(data, seed)

    best: Optional[Tuple[float, TrainedModel, Dict[str, Any]]] = None
    last_error: Optional[NumericalError] = None
    leaderboard = []
    for params in ParameterGrid(grid.for_family(family)):
        params = dict(params)
        try:
            model = definition["fit"](train, {**definition["defaults"], **params}, seed)
        except NumericalError as exc:
            LOG.info("%s %s failed: %s", family, params, exc)
            leaderboard.append(LeaderboardEntry(params=params, error=str(exc)))
            last_error = exc
            continue
        report = metrics(test.y, model.predict(test.X))
        LOG.info("%s %s test rmse %.4f dB", family, params, report.rmse)
        leaderboard.append(LeaderboardEntry(params=params, report=report))
        if best is None or report.rmse < best[0] - RMSE_TIE_DB:
            best = (report.rmse, model, params)

    if best is None:
        raise last_error or NumericalError(f"no {family} configuration could be fitted")
    return GridSearchResult(
        family=family,
        best=best[1],
        best_params=best[2],
        leaderboard=tuple(leaderboard),
        seed=seed,
        train_rows=len(train),
        test_rows=len(test),
    )
