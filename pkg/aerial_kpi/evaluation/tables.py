"""aerial_kpi.evaluation.tables"""
from typing import List, Sequence, Tuple

from aerial_kpi.evaluation.altitude import AltitudeComparison
from aerial_kpi.evaluation.metrics import EvalReport

ReportRow = Tuple[str, str, EvalReport]


def _render(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(cell) for cell in column) for column in zip(header, *rows)]
    lines = [
        "  ".join(cell.rjust(width) for cell, width in zip(line, widths))
        for line in [header, *rows]
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def format_report_table(rows: Sequence[ReportRow]) -> str:
    """
    Accuracy summary table, one row per device and model

    Args:
        rows: (device, model, report) rows

    Returns:
        str: aligned text table

    Raises:
        N/A

    """
    body: List[List[str]] = [
        [
            device,
            model,
            f"{report.mae_db:.2f}",
            f"{report.rmse_db:.2f}",
            f"{report.mape_pct:.2f}",
            f"{report.r2:.2f}" if report.r2_defined else "n/a",
            str(report.n),
        ]
        for device, model, report in rows
    ]
    return _render(["Device", "Model", "MAE (dB)", "RMSE (dB)", "MAPE (%)", "R2", "n"], body)


def format_comparison_table(rows: Sequence[AltitudeComparison]) -> str:
    """
    Altitude comparison table, one row per kpi

    Args:
        rows: comparisons

    Returns:
        str: aligned text table

    Raises:
        N/A

    """
    body = [
        [
            row.kpi,
            f"{row.mean_diff:.2f}",
            f"{row.std_diff:.2f}",
            f"{row.pct_greater:.2f}",
            "-" if row.pct_equal is None else f"{row.pct_equal:.2f}",
            str(row.n_pairs),
        ]
        for row in rows
    ]
    return _render(["KPI", "Mean diff", "Std diff", "% greater", "% equal", "Pairs"], body)
