import io

import numpy as np
import pytest

from aerial_kpi.data.flightlog import (
    CSV_COLUMNS,
    FlightLog,
    KpiRecord,
    load_column_map,
    load_flight_csv,
    partition_by_device,
    write_flight_csv,
)
from aerial_kpi.exceptions import ConfigError, DomainError, ParseError, SchemaError, UnknownKpi
from aerial_kpi.geo import GeoPosition
from tests.conftest import log_from_rows

HEADER = "timestamp,lat,lon,alt_m,device,rsrp_dbm,rank"


def row(timestamp, device="S21", **kpis):
    return {
        "timestamp": timestamp,
        "lat": 35.7275,
        "lon": -78.696 + timestamp * 1e-5,
        "alt_m": 162.0,
        "device": device,
        **kpis,
    }


def test_load_flight_csv():
    log = log_from_rows([row(0.0, rsrp_dbm=-80.5, rank=2), row(1.0, rsrq_db=-11.0)])

    assert len(log) == 2
    first, second = log.records
    assert first.rsrp_dbm == -80.5
    assert first.rank == 2 and isinstance(first.rank, int)
    assert first.rsrq_db is None
    assert second.rsrp_dbm is None
    assert log.device == "S21"
    assert log.metadata["reordered_rows"] == 0


def test_load_flight_csv_without_kpi_columns():
    log = load_flight_csv(io.StringIO("timestamp,lat,lon,alt_m,device\n0,1,2,3,a\n"))
    assert log.records[0].position == GeoPosition(1.0, 2.0, 3.0)
    assert not log.has_kpi("rsrp_dbm")


def test_load_flight_csv_missing_columns():
    with pytest.raises(SchemaError) as exc:
        load_flight_csv(io.StringIO("timestamp,lat,device\n0,1,a\n"))
    assert exc.value.missing == ["lon", "alt_m"]


@pytest.mark.parametrize(
    "body, row_number, column",
    [
        ("0,1,2,3,a,-80,1\n1,1,2,x,a,-80,1\n", 3, "alt_m"),
        ("0,1,2,3,a,-80,1\n1,,2,3,a,-80,1\n", 3, "lat"),
        ("0,1,2,3,a,oops,1\n", 2, "rsrp_dbm"),
        ("0,1,2,3,a,-80,2.5\n", 2, "rank"),
        ("0,1,2,3,,-80,1\n", 2, "device"),
    ],
    ids=["malformed_position", "missing_position", "malformed_kpi", "fractional_rank", "device"],
)
def test_load_flight_csv_parse_errors(body, row_number, column):
    with pytest.raises(ParseError) as exc:
        load_flight_csv(io.StringIO(f"{HEADER}\n{body}"))
    assert exc.value.row == row_number
    assert exc.value.column == column


@pytest.mark.parametrize(
    "body", ["0,91,2,3,a,-80,1\n", "0,1,2,3,a,-80,0\n"], ids=["latitude", "rank_zero"]
)
def test_load_flight_csv_out_of_range(body):
    with pytest.raises(ParseError) as exc:
        load_flight_csv(io.StringIO(f"{HEADER}\n{body}"))
    assert exc.value.row == 2


def test_load_flight_csv_cqi_range():
    text = "timestamp,lat,lon,alt_m,device,cqi\n0,1,2,3,a,15\n1,1,2,3,a,16\n"
    with pytest.raises(ParseError) as exc:
        load_flight_csv(io.StringIO(text))
    assert exc.value.row == 3


def test_load_flight_csv_sorts_by_timestamp():
    log = log_from_rows([row(2.0, rsrp_dbm=-82), row(0.0, rsrp_dbm=-80), row(1.0, rsrp_dbm=-81)])
    assert log.timestamps.tolist() == [0.0, 1.0, 2.0]
    assert log.kpi_values("rsrp_dbm").tolist() == [-80.0, -81.0, -82.0]
    assert log.metadata["reordered_rows"] == 3


def test_load_flight_csv_column_map():
    text = "time,latitude,longitude,altitude,ue,RSRP\n0,1,2,3,a,-90\n"
    log = load_flight_csv(
        io.StringIO(text),
        column_map={
            "time": "timestamp",
            "latitude": "lat",
            "longitude": "lon",
            "altitude": "alt_m",
            "ue": "device",
            "RSRP": "rsrp_dbm",
        },
    )
    assert log.records[0].rsrp_dbm == -90.0


def test_load_flight_csv_keeps_extra_columns():
    columns = CSV_COLUMNS + ("band",)
    log = log_from_rows([row(0.0, band="n78")], columns=columns)
    assert log.records[0].extras == {"band": "n78"}
    assert log.metadata["extra_columns"] == ["band"]


def test_write_flight_csv_round_trip():
    log = log_from_rows(
        [row(0.0, rsrp_dbm=-80.25, pci=301, cqi=9), row(1.0, rsrq_db=-16.5, rank=4)]
    )
    buffer = io.StringIO()
    write_flight_csv(log, buffer)
    buffer.seek(0)

    assert buffer.getvalue().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert load_flight_csv(buffer).records == log.records


def test_partition_by_device():
    log = log_from_rows([row(0.0, "S21"), row(1.0, "LG"), row(2.0, "S21"), row(3.0, "LG")])
    assert log.device is None

    groups = partition_by_device(log)
    assert list(groups) == ["S21", "LG"]
    assert groups["S21"].timestamps.tolist() == [0.0, 2.0]
    assert groups["LG"].device == "LG"
    assert groups["LG"].metadata["device"] == "LG"


def test_kpi_values_and_has_kpi():
    log = log_from_rows([row(0.0, sinr_db=4.5), row(1.0)])
    values = log.kpi_values("sinr_db")
    assert values[0] == 4.5 and np.isnan(values[1])
    assert log.has_kpi("sinr_db")
    assert not log.has_kpi("throughput_mbps")
    assert log.records[1].kpi("sinr_db") is None


def test_unknown_kpi():
    log = log_from_rows([row(0.0)])
    with pytest.raises(UnknownKpi):
        log.kpi_values("lat")


def test_flight_log_rejects_decreasing_timestamps():
    position = GeoPosition(1.0, 2.0, 3.0)
    with pytest.raises(DomainError):
        FlightLog(
            records=(
                KpiRecord(timestamp_s=1.0, position=position, device="a"),
                KpiRecord(timestamp_s=0.0, position=position, device="a"),
            )
        )


def test_empty_flight_log():
    log = FlightLog()
    assert len(log) == 0
    assert log.device is None
    assert log.positions().shape == (0, 3)
    assert not log.has_kpi("rsrp_dbm")


@pytest.mark.parametrize(
    "text", ["{bad", '["a"]', '{"a": 1}'], ids=["malformed", "not_object", "not_strings"]
)
def test_load_column_map_errors(text):
    with pytest.raises(ConfigError):
        load_column_map(io.StringIO(text))
