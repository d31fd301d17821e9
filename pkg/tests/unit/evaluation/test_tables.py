import math

from aerial_kpi.evaluation.altitude import AltitudeComparison
from aerial_kpi.evaluation.metrics import EvalReport
from aerial_kpi.evaluation.tables import format_comparison_table, format_report_table


def test_format_report_table():
    table = format_report_table(
        [
            ("S21", "fspl", EvalReport(5.123, 6.5, 5.9, 0.41, 120)),
            ("LG", "forest", EvalReport(1.0, 2.0, 1.1, math.nan, 7)),
        ]
    )
    lines = table.splitlines()

    assert lines[0].split() == [
        "Device", "Model", "MAE", "(dB)", "RMSE", "(dB)", "MAPE", "(%)", "R2", "n"
    ]
    assert set(lines[1]) == {"-", " "}
    assert lines[2].split() == ["S21", "fspl", "5.12", "6.50", "5.90", "0.41", "120"]
    assert lines[3].split()[-2:] == ["n/a", "7"]
    assert len({len(line) for line in lines}) == 1


def test_format_comparison_table():
    table = format_comparison_table(
        [
            AltitudeComparison("rsrp_dbm", 2.5, 1.25, 80.0, None, 120, "position"),
            AltitudeComparison("rank", -0.3, 1.0, 10.0, 55.0, 118, "position"),
        ]
    )
    lines = table.splitlines()

    assert lines[0].split()[:2] == ["KPI", "Mean"]
    assert lines[2].split() == ["rsrp_dbm", "2.50", "1.25", "80.00", "-", "120"]
    assert lines[3].split() == ["rank", "-0.30", "1.00", "10.00", "55.00", "118"]
