"""aerial_kpi.cli"""
import logging
from dataclasses import asdict, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import click
import numpy as np
import pandas as pd

from aerial_kpi import __version__
from aerial_kpi.antenna import AntennaPattern, default_pattern, in_main_lobe, load_pattern
from aerial_kpi.data.flightlog import (
    KPI_COLUMNS,
    FlightLog,
    load_column_map,
    load_flight_csv,
    partition_by_device,
    write_flight_csv,
)
from aerial_kpi.data.synth import (
    REFERENCE_RANK_PLANE,
    RankPlane,
    SynthConfig,
    load_synth_config,
    synthesize_measurements,
)
from aerial_kpi.data.trajectory import generate_trajectory, load_trajectory_spec
from aerial_kpi.evaluation.altitude import GATE_M, compare_altitudes
from aerial_kpi.evaluation.flags import (
    HANDOVER_WINDOW_S,
    handover_events,
    poor_rsrq_before_handover,
)
from aerial_kpi.evaluation.heatmap import heatmap, write_heatmap_csv
from aerial_kpi.evaluation.metrics import lda_confusion, metrics
from aerial_kpi.evaluation.profile import DEFAULT_BIN_DEG, elevation_profile
from aerial_kpi.evaluation.tables import format_comparison_table, format_report_table
from aerial_kpi.exceptions import ConfigError, DomainError, ValidationError
from aerial_kpi.geo import BsSiteConfig, load_site
from aerial_kpi.linkbudget import TrajectoryPrediction, predict_trajectory
from aerial_kpi.logging import enable_basic_logging
from aerial_kpi.manifest import RunManifest, write_manifest
from aerial_kpi.models.base import TrainedModel
from aerial_kpi.models.features import AZIMUTH, ELEVATION, dataset_from_log, log_geometry
from aerial_kpi.models.grid import HyperGrid, load_grid
from aerial_kpi.models.lda import fit_lda
from aerial_kpi.models.registry import FAMILY_ALIASES, MODEL_FAMILIES
from aerial_kpi.models.search import grid_search
from aerial_kpi.models.serialization import data_hash, dumps, load_model, save_model

LOG = logging.getLogger(__name__)

EXIT_INTERNAL_ERROR = 1
EXIT_VALIDATION_ERROR = 2

LOG_LEVELS = ("debug", "info", "warning", "error")

INPUT_FILE = click.Path(exists=True, dir_okay=False)
OUTPUT_FILE = click.Path(dir_okay=False)


class AerialKpiGroup(click.Group):
    def invoke(self, ctx: click.Context) -> Any:
        """
        Run a subcommand, mapping package errors onto exit codes

        Args:
            ctx: click context

        Returns:
            Any: subcommand result

        Raises:
            ClickException: click's own usage errors pass through unchanged

        """
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_VALIDATION_ERROR)
        except Exception as exc:  # pylint: disable=broad-except
            LOG.exception("%s failed", ctx.invoked_subcommand)
            click.echo(f"internal error: {exc}", err=True)
            ctx.exit(EXIT_INTERNAL_ERROR)


def _write_json(path: str, document: Mapping[str, Any]) -> None:
    Path(path).write_text(dumps(document), encoding="utf-8")
    LOG.info("wrote %s", path)


def _sibling(path: str, suffix: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}{suffix}"))


def _device_path(path: str, device: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{device}{p.suffix}"))


def _load_site(path: str, manifest: RunManifest) -> BsSiteConfig:
    manifest.add_input("site", path)
    return load_site(path)


def _load_pattern(
    azimuth_csv: Optional[str], elevation_csv: Optional[str], manifest: RunManifest
) -> AntennaPattern:
    if azimuth_csv is None and elevation_csv is None:
        return default_pattern()
    if azimuth_csv is None or elevation_csv is None:
        raise ConfigError("--azimuth-pattern and --elevation-pattern must be given together")
    manifest.add_input("azimuth_pattern", azimuth_csv)
    manifest.add_input("elevation_pattern", elevation_csv)
    return load_pattern(azimuth_csv, elevation_csv)


def _load_log(
    path: str, column_map: Optional[str], manifest: RunManifest, name: str = "flight"
) -> FlightLog:
    manifest.add_input(name, path)
    mapping = None
    if column_map:
        manifest.add_input("column_map", column_map)
        mapping = load_column_map(column_map)
    return load_flight_csv(path, column_map=mapping)


def _select_devices(log: FlightLog, device: Optional[str]) -> Dict[str, FlightLog]:
    logs = partition_by_device(log)
    if not logs:
        raise DomainError("flight log has no records")
    if device is None:
        return logs
    if device not in logs:
        raise DomainError(f"no records for device '{device}', found {', '.join(logs)}")
    return {device: logs[device]}


def _prediction_frame(log: FlightLog, prediction: TrajectoryPrediction) -> pd.DataFrame:
    rows = []
    for index, predicted in zip(prediction.indices, prediction.predictions):
        record = log.records[index]
        rows.append(
            {
                "timestamp": record.timestamp_s,
                "device": record.device,
                "d_m": predicted.geometry.d_uav_m,
                "azimuth_deg": predicted.geometry.azimuth_deg,
                "elevation_deg": predicted.geometry.elevation_deg,
                "tx_dbm": predicted.components.tx_dbm,
                "gain_h_db": predicted.components.gain_h_db,
                "gain_v_db": predicted.components.gain_v_db,
                "fspl_db": predicted.components.fspl_db,
                "rsrp_pred_dbm": predicted.rsrp_dbm,
                "rsrp_meas_dbm": np.nan if record.rsrp_dbm is None else record.rsrp_dbm,
            }
        )
    columns = [
        "timestamp",
        "device",
        "d_m",
        "azimuth_deg",
        "elevation_deg",
        "tx_dbm",
        "gain_h_db",
        "gain_v_db",
        "fspl_db",
        "rsrp_pred_dbm",
        "rsrp_meas_dbm",
    ]
    return pd.DataFrame(rows, columns=columns)


site_option = click.option(
    "--site",
    "site_json",
    required=True,
    type=INPUT_FILE,
    help="Base station site json (position, boresight, downtilt, carrier, power, PRBs)",
)
pattern_options = [
    click.option(
        "--azimuth-pattern",
        type=INPUT_FILE,
        default=None,
        help="Azimuth cut csv 'angle_deg,gain_db' (default: packaged synthetic pattern)",
    ),
    click.option(
        "--elevation-pattern",
        type=INPUT_FILE,
        default=None,
        help="Elevation cut csv 'angle_deg,gain_db' (default: packaged synthetic pattern)",
    ),
]
column_map_option = click.option(
    "--column-map",
    type=INPUT_FILE,
    default=None,
    help="Json object renaming external csv headers to canonical column names",
)
device_option = click.option(
    "--device", default=None, help="Restrict to one device of a multi-device flight log"
)


def _with_pattern_options(command: Any) -> Any:
    for option in reversed(pattern_options):
        command = option(command)
    return command


@click.group(cls=AerialKpiGroup)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS),
    default=None,
    help="Log to stderr at this level (default: no logging)",
)
@click.version_option(version=__version__, prog_name="aerial-kpi")
def cli(log_level: Optional[str]) -> None:
    """Air-to-ground cellular KPI modeling."""
    if log_level:
        enable_basic_logging(level=log_level)


@cli.command("predict-fspl")
@click.argument("flight_csv", type=INPUT_FILE)
@site_option
@_with_pattern_options
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Predictions csv")
@click.option(
    "--report",
    "report_json",
    type=OUTPUT_FILE,
    default=None,
    help="EvalReport json when the log carries rsrp_dbm (default: <output stem>.report.json)",
)
def predict_fspl(
    flight_csv: str,
    site_json: str,
    azimuth_pattern: Optional[str],
    elevation_pattern: Optional[str],
    column_map: Optional[str],
    output: str,
    report_json: Optional[str],
) -> None:
    """Predict free-space SS-RSRP along a flight log."""
    manifest = RunManifest(command="predict-fspl")
    site = _load_site(site_json, manifest)
    pattern = _load_pattern(azimuth_pattern, elevation_pattern, manifest)
    log = _load_log(flight_csv, column_map, manifest)

    frame = _prediction_frame(log, predict_trajectory(site, pattern, log))
    frame.to_csv(output, index=False)
    manifest.add_output(output)
    LOG.info("wrote %d predictions to %s", len(frame), output)

    measured = frame.dropna(subset=["rsrp_meas_dbm"])
    if len(measured):
        report = metrics(measured["rsrp_meas_dbm"], measured["rsrp_pred_dbm"])
        report_path = report_json or _sibling(output, ".report.json")
        _write_json(report_path, report.to_dict())
        manifest.add_output(report_path)
        click.echo(format_report_table([(log.device or "all", "FSPL", report)]), nl=False)
    write_manifest(manifest, output)


@cli.command("fit")
@click.argument("flight_csv", type=INPUT_FILE)
@site_option
@click.option(
    "--family",
    required=True,
    type=click.Choice(sorted(MODEL_FAMILIES + tuple(FAMILY_ALIASES))),
    help="Model family to tune",
)
@click.option(
    "--grid",
    "grid_json",
    type=INPUT_FILE,
    default=None,
    help="Json grid overrides, e.g. {\"forest\": {\"n_trees\": [50]}} (default: full grid)",
)
@click.option("--seed", default=0, show_default=True, help="Split and fitting seed")
@device_option
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Best model json")
@click.option(
    "--leaderboard",
    type=OUTPUT_FILE,
    default=None,
    help="Leaderboard json (default: <output stem>.leaderboard.json)",
)
def fit(
    flight_csv: str,
    site_json: str,
    family: str,
    grid_json: Optional[str],
    seed: int,
    device: Optional[str],
    column_map: Optional[str],
    output: str,
    leaderboard: Optional[str],
) -> None:
    """Grid-search a model family on measured RSRP, one model per device."""
    manifest = RunManifest(command="fit", seeds={"seed": seed})
    site = _load_site(site_json, manifest)
    grid = HyperGrid()
    if grid_json:
        manifest.add_input("grid", grid_json)
        grid = load_grid(grid_json)
    logs = _select_devices(_load_log(flight_csv, column_map, manifest), device)

    leaderboard = leaderboard or _sibling(output, ".leaderboard.json")
    for name, device_log in logs.items():
        model_path, board_path = output, leaderboard
        if len(logs) > 1:
            model_path, board_path = _device_path(output, name), _device_path(leaderboard, name)

        data, _ = dataset_from_log(device_log, site)
        result = grid_search(data, grid, family, seed)
        save_model(
            result.best,
            model_path,
            seed=seed,
            training={
                "data_hash": data_hash(data),
                "device": name,
                "split_seed": seed,
                "train_rows": result.train_rows,
                "test_rows": result.test_rows,
            },
        )
        _write_json(board_path, {**result.leaderboard_document(), "device": name})
        manifest.add_output(model_path)
        manifest.add_output(board_path)

        best_rmse = min(e.report.rmse_db for e in result.leaderboard if e.report is not None)
        click.echo(f"{name}: {result.family} {result.best_params} test RMSE {best_rmse:.2f} dB")
    write_manifest(manifest, output)


@cli.command("evaluate")
@click.argument("model_json", type=INPUT_FILE)
@click.argument("flight_csv", type=INPUT_FILE)
@site_option
@device_option
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Report json")
def evaluate(
    model_json: str,
    flight_csv: str,
    site_json: str,
    device: Optional[str],
    column_map: Optional[str],
    output: str,
) -> None:
    """Score a saved model against a flight log's measured RSRP."""
    manifest = RunManifest(command="evaluate")
    site = _load_site(site_json, manifest)
    manifest.add_input("model", model_json)
    model = load_model(model_json)
    log = _load_log(flight_csv, column_map, manifest)
    if device is not None:
        log = _select_devices(log, device)[device]

    data, _ = dataset_from_log(log, site)
    if not len(data):
        raise DomainError("flight log has no rows with rsrp_dbm and valid geometry")
    report = metrics(data.y, model.predict(data.X))
    document = {"family": model.family, "device": log.device, "report": report.to_dict()}
    _write_json(output, document)
    manifest.add_output(output)
    write_manifest(manifest, output)


@cli.command("synth")
@click.argument("spec_json", type=INPUT_FILE)
@site_option
@_with_pattern_options
@click.option(
    "--config",
    "config_json",
    type=INPUT_FILE,
    default=None,
    help="Synth config json (noise_std_db, seed, rank_plane)",
)
@click.option(
    "--noise-std", type=float, default=None, help="Gaussian noise std in dB (default: 0)"
)
@click.option("--seed", type=int, default=None, help="Noise seed (default: 0)")
@click.option(
    "--rank-plane/--no-rank-plane",
    default=False,
    help="Label rank 1/4 from the reference rank plane",
)
@click.option("--device", default="synthetic", show_default=True, help="Device label")
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Flight csv")
def synth(
    spec_json: str,
    site_json: str,
    azimuth_pattern: Optional[str],
    elevation_pattern: Optional[str],
    config_json: Optional[str],
    noise_std: Optional[float],
    seed: Optional[int],
    rank_plane: bool,
    device: str,
    output: str,
) -> None:
    """Generate a synthetic flight with free-space RSRP measurements."""
    manifest = RunManifest(command="synth")
    site = _load_site(site_json, manifest)
    pattern = _load_pattern(azimuth_pattern, elevation_pattern, manifest)
    manifest.add_input("trajectory", spec_json)
    spec = load_trajectory_spec(spec_json)

    cfg = SynthConfig()
    if config_json:
        manifest.add_input("config", config_json)
        cfg = load_synth_config(config_json)
    if noise_std is not None:
        cfg = replace(cfg, noise_std_db=noise_std)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    if rank_plane and cfg.rank_plane is None:
        cfg = replace(cfg, rank_plane=RankPlane(*REFERENCE_RANK_PLANE))
    manifest.seeds["seed"] = cfg.seed

    positions = generate_trajectory(spec, site, device=device)
    log = synthesize_measurements(positions, site, pattern, cfg)
    write_flight_csv(log, output)
    manifest.add_output(output)
    LOG.info("wrote %d synthetic rows to %s", len(log), output)
    write_manifest(manifest, output)


def _rank_points(log: FlightLog, site: BsSiteConfig) -> List[Tuple[float, float, float, int]]:
    geometry = log_geometry(log, site)
    ranks = log.kpi_values("rank")
    keep = np.all(np.isfinite(geometry), axis=1) & np.isin(ranks, (1, 4))
    return [
        (float(d), float(azimuth), float(elevation), int(rank))
        for (d, elevation, azimuth), rank in zip(geometry[keep], ranks[keep])
    ]


@cli.command("rank-lda")
@click.argument("flight_csv", type=INPUT_FILE)
@site_option
@device_option
@column_map_option
@click.option(
    "--strict", is_flag=True, help="Fail on a singular covariance instead of regularizing"
)
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Plane and confusion json")
def rank_lda(
    flight_csv: str,
    site_json: str,
    device: Optional[str],
    column_map: Optional[str],
    strict: bool,
    output: str,
) -> None:
    """Fit the rank-1 / rank-4 decision plane over (distance, azimuth, elevation)."""
    manifest = RunManifest(command="rank-lda")
    site = _load_site(site_json, manifest)
    log = _load_log(flight_csv, column_map, manifest)
    if device is not None:
        log = _select_devices(log, device)[device]

    points = _rank_points(log, site)
    model = fit_lda(points, strict=strict)
    confusion = lda_confusion(model, points)
    w_d, w_phi, w_theta, bias = model.normalized()
    _write_json(
        output,
        {
            "plane": model.to_dict(),
            "normalized_plane": {"w_d": w_d, "w_phi": w_phi, "w_theta": w_theta, "bias": bias},
            "confusion": confusion.to_dict(),
        },
    )
    manifest.add_output(output)
    click.echo(
        f"misclassified {confusion.misclassified}/{confusion.n} "
        f"({100 * confusion.misclassification_rate:.1f}%)"
    )
    write_manifest(manifest, output)


@cli.command("compare-altitudes")
@click.argument("flight_low_csv", type=INPUT_FILE)
@click.argument("flight_high_csv", type=INPUT_FILE)
@click.option(
    "--kpi",
    "kpis",
    type=click.Choice(KPI_COLUMNS),
    multiple=True,
    default=("rsrp_dbm",),
    show_default=True,
    help="Kpi to compare, repeatable",
)
@click.option("--gate-m", default=GATE_M, show_default=True, help="Position alignment gate")
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Comparison json")
def compare_altitudes_command(
    flight_low_csv: str,
    flight_high_csv: str,
    kpis: Tuple[str, ...],
    gate_m: float,
    column_map: Optional[str],
    output: str,
) -> None:
    """Compare KPIs of the same pattern flown at a lower and a higher altitude."""
    manifest = RunManifest(command="compare-altitudes")
    low = _load_log(flight_low_csv, column_map, manifest, name="flight_low")
    high = _load_log(flight_high_csv, column_map, manifest, name="flight_high")

    comparisons = [compare_altitudes(low, high, kpi, gate_m=gate_m) for kpi in kpis]
    _write_json(output, {"comparisons": [c.to_dict() for c in comparisons]})
    manifest.add_output(output)
    click.echo(format_comparison_table(comparisons), nl=False)
    write_manifest(manifest, output)


@cli.command("heatmap")
@click.argument("flight_csv", type=INPUT_FILE)
@click.option("--kpi", type=click.Choice(KPI_COLUMNS), default="rsrp_dbm", show_default=True)
@click.option("--bin-m", type=float, default=10.0, show_default=True, help="Square bin size")
@click.option(
    "--site",
    "site_json",
    type=INPUT_FILE,
    default=None,
    help="Site json whose position is the grid origin (default: first log position)",
)
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Heatmap csv")
def heatmap_command(
    flight_csv: str,
    kpi: str,
    bin_m: float,
    site_json: Optional[str],
    column_map: Optional[str],
    output: str,
) -> None:
    """Bin a KPI on an east/north grid, writing east_m,north_m,value rows."""
    manifest = RunManifest(command="heatmap")
    origin = _load_site(site_json, manifest).position if site_json else None
    log = _load_log(flight_csv, column_map, manifest)

    grid = heatmap(log, kpi, bin_m, origin=origin)
    write_heatmap_csv(grid, output)
    manifest.add_output(output)
    LOG.info(
        "wrote %d heatmap cells to %s, %d rows had no value", len(grid.cells), output, grid.skipped
    )
    write_manifest(manifest, output)


def _fspl_rmse(measured: np.ndarray, predicted: np.ndarray) -> Optional[float]:
    if not measured.size:
        return None
    return metrics(measured, predicted).rmse_db


def _device_profile(
    log: FlightLog,
    site: BsSiteConfig,
    pattern: AntennaPattern,
    models: Mapping[str, TrainedModel],
    bin_deg: float,
    window_s: float,
) -> Dict[str, Any]:
    data, indices = dataset_from_log(log, site)
    prediction = predict_trajectory(site, pattern, log)
    by_index = {index: p.rsrp_dbm for index, p in zip(prediction.indices, prediction.predictions)}
    fspl = np.array([by_index[index] for index in indices], dtype=float)

    predicted_by_model = {"fspl": fspl}
    for name, model in models.items():
        predicted_by_model[name] = model.predict(data.X) if len(data) else np.empty(0)
    bins = elevation_profile(data.X[:, ELEVATION], data.y, predicted_by_model, bin_deg=bin_deg)

    inside = np.asarray(in_main_lobe(pattern, data.X[:, AZIMUTH]), dtype=bool).reshape(-1)
    main_lobe = {
        "share": float(inside.mean()) if inside.size else None,
        "fspl_rmse_inside_db": _fspl_rmse(data.y[inside], fspl[inside]),
        "fspl_rmse_outside_db": _fspl_rmse(data.y[~inside], fspl[~inside]),
    }

    events = handover_events(log)
    poor_share: Optional[float] = None
    if events and log.has_kpi("rsrq_db"):
        poor_share = poor_rsrq_before_handover(log, window_s=window_s)
    return {
        "n_rows": len(data),
        "elevation_profile": [b.to_dict() for b in bins],
        "main_lobe": main_lobe,
        "handovers": [asdict(event) for event in events],
        "poor_rsrq_before_handover": poor_share,
    }


@cli.command("profile")
@click.argument("flight_csv", type=INPUT_FILE)
@site_option
@_with_pattern_options
@click.option(
    "--model",
    "model_jsons",
    type=INPUT_FILE,
    multiple=True,
    help="Saved model whose mean prediction joins each elevation bin, repeatable",
)
@click.option("--bin-deg", default=DEFAULT_BIN_DEG, show_default=True, help="Elevation bin width")
@click.option(
    "--window-s",
    default=HANDOVER_WINDOW_S,
    show_default=True,
    help="Look-back window for poor RSRQ before a handover",
)
@device_option
@column_map_option
@click.option("--output", "-o", required=True, type=OUTPUT_FILE, help="Profile json")
def profile(
    flight_csv: str,
    site_json: str,
    azimuth_pattern: Optional[str],
    elevation_pattern: Optional[str],
    model_jsons: Tuple[str, ...],
    bin_deg: float,
    window_s: float,
    device: Optional[str],
    column_map: Optional[str],
    output: str,
) -> None:
    """Elevation profile, main-lobe coverage and handover statistics per device."""
    manifest = RunManifest(command="profile")
    site = _load_site(site_json, manifest)
    pattern = _load_pattern(azimuth_pattern, elevation_pattern, manifest)
    models: Dict[str, TrainedModel] = {}
    for index, path in enumerate(model_jsons):
        manifest.add_input(f"model_{index}", path)
        models[Path(path).stem] = load_model(path)
    logs = _select_devices(_load_log(flight_csv, column_map, manifest), device)

    devices = {
        name: _device_profile(device_log, site, pattern, models, bin_deg, window_s)
        for name, device_log in logs.items()
    }
    _write_json(output, {"bin_deg": bin_deg, "window_s": window_s, "devices": devices})
    manifest.add_output(output)
    for name, summary in devices.items():
        share = summary["poor_rsrq_before_handover"]
        click.echo(
            f"{name}: {len(summary['elevation_profile'])} elevation bins, "
            f"{len(summary['handovers'])} handovers"
            + ("" if share is None else f", {100 * share:.0f}% after poor rsrq")
        )
    write_manifest(manifest, output)


def main() -> None:
    """
    Console script entry point

    Args:
        N/A

    Returns:
        N/A  # noqa: DAR202

    Raises:
        N/A

    """
    cli()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    main()
