import math

import pytest

from aerial_kpi.evaluation.flags import (
    handover_events,
    poor_rsrq_before_handover,
    rsrq_poor_flags,
)
from aerial_kpi.exceptions import MissingColumn
from tests.conftest import log_from_rows


def rows(timestamps, **columns):
    result = []
    for index, timestamp in enumerate(timestamps):
        row = {
            "timestamp": timestamp,
            "lat": 35.7275,
            "lon": -78.696,
            "alt_m": 162.0,
            "device": "S21",
        }
        row.update({name: values[index] for name, values in columns.items()})
        result.append(row)
    return result


def test_rsrq_poor_flags():
    log = log_from_rows(rows([0.0, 1.0, 2.0, 3.0], rsrq_db=[-10.0, -15.0, -15.5, None]))
    assert rsrq_poor_flags(log) == [(0.0, False), (1.0, False), (2.0, True), (3.0, False)]


def test_rsrq_poor_flags_need_rsrq():
    with pytest.raises(MissingColumn):
        rsrq_poor_flags(log_from_rows(rows([0.0], rsrp_dbm=[-80.0])))


def test_handover_events():
    log = log_from_rows(rows([0.0, 1.0, 2.0, 3.0, 4.0, 5.0], pci=[1, 1, 2, None, 2, 3]))
    events = handover_events(log)
    assert [(e.timestamp_s, e.from_pci, e.to_pci) for e in events] == [(2.0, 1, 2), (5.0, 2, 3)]


def test_poor_rsrq_before_handover():
    log = log_from_rows(
        rows(
            [0.0, 1.0, 2.0, 10.0, 20.0, 21.0],
            pci=[1, 1, 2, 2, 2, 3],
            rsrq_db=[-10.0, -16.0, -10.0, -10.0, -10.0, -10.0],
        )
    )
    assert poor_rsrq_before_handover(log, window_s=5.0) == pytest.approx(0.5)
    assert poor_rsrq_before_handover(log, window_s=0.5) == pytest.approx(0.0)


def test_poor_rsrq_without_handover():
    log = log_from_rows(rows([0.0, 1.0], pci=[7, 7], rsrq_db=[-20.0, -20.0]))
    assert math.isnan(poor_rsrq_before_handover(log))
