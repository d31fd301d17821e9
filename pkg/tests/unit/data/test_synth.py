import io

import numpy as np
import pytest

from aerial_kpi.data.flightlog import flight_log_from_positions
from aerial_kpi.data.synth import (
    REFERENCE_RANK_PLANE,
    RankPlane,
    SynthConfig,
    load_synth_config,
    synthesize_measurements,
)
from aerial_kpi.data.trajectory import TrajectorySpec, generate_trajectory
from aerial_kpi.exceptions import ConfigError, DomainError
from aerial_kpi.linkbudget import predict_trajectory

SAWTOOTH = TrajectorySpec(pattern="sawtooth", altitude_m=30.0, speed_mps=5.0, sample_period_s=1.0)


@pytest.fixture
def positions(site):
    return generate_trajectory(SAWTOOTH, site, device="S21")


def test_synthesize_without_noise(site, pattern, positions):
    log = synthesize_measurements(positions, site, pattern, SynthConfig())
    expected = [p.rsrp_dbm for p in predict_trajectory(site, pattern, positions).predictions]

    np.testing.assert_allclose(log.kpi_values("rsrp_dbm"), expected)
    assert not log.has_kpi("rank")
    assert log.metadata == positions.metadata
    assert log.positions().tolist() == positions.positions().tolist()


def test_synthesize_is_seeded(site, pattern, positions):
    cfg = SynthConfig(noise_std_db=4.0, seed=11)
    first = synthesize_measurements(positions, site, pattern, cfg).kpi_values("rsrp_dbm")
    second = synthesize_measurements(positions, site, pattern, cfg).kpi_values("rsrp_dbm")
    other = synthesize_measurements(
        positions, site, pattern, SynthConfig(noise_std_db=4.0, seed=12)
    ).kpi_values("rsrp_dbm")

    assert first.tolist() == second.tolist()
    assert first.tolist() != other.tolist()


def test_synthesize_noise_level(site, pattern, positions):
    clean = synthesize_measurements(positions, site, pattern, SynthConfig()).kpi_values("rsrp_dbm")
    noisy = synthesize_measurements(
        positions, site, pattern, SynthConfig(noise_std_db=5.0, seed=3)
    ).kpi_values("rsrp_dbm")
    residual = noisy - clean

    assert residual.size > 300
    assert np.std(residual, ddof=1) == pytest.approx(5.0, rel=0.15)
    assert abs(np.mean(residual)) < 1.0


def test_synthesize_rank_plane(site, isotropic, positions):
    plane = RankPlane(w_d=1.0, w_phi=0.0, w_theta=0.0, bias=-300.0)
    log = synthesize_measurements(positions, site, isotropic, SynthConfig(rank_plane=plane))
    prediction = predict_trajectory(site, isotropic, positions)

    for record, predicted in zip(log, prediction.predictions):
        assert record.rank == (1 if predicted.geometry.d_uav_m >= 300.0 else 4)
    assert set(log.kpi_values("rank").tolist()) == {1.0, 4.0}


def test_synthesize_keeps_co_located_rows_empty(site, isotropic):
    p = site.position
    positions = flight_log_from_positions(
        [0.0, 1.0],
        np.array(
            [
                (p.latitude_deg, p.longitude_deg, p.altitude_m),
                (p.latitude_deg, p.longitude_deg + 0.01, 150.0),
            ]
        ),
        device="S21",
    )
    log = synthesize_measurements(positions, site, isotropic, SynthConfig(noise_std_db=1.0))
    assert log.records[0].rsrp_dbm is None
    assert log.records[1].rsrp_dbm is not None


def test_synth_config_from_dict():
    cfg = SynthConfig.from_dict({"noise_std_db": 5, "seed": 1, "rank_plane": True})
    assert cfg.noise_std_db == 5.0
    assert cfg.rank_plane == RankPlane(*REFERENCE_RANK_PLANE)
    assert SynthConfig.from_dict({"rank_plane": False}).rank_plane is None
    assert SynthConfig.from_dict({"rank_plane": {"w_d": 1, "w_phi": 0, "w_theta": 0, "bias": 2}})


def test_synth_config_errors():
    with pytest.raises(DomainError):
        SynthConfig(noise_std_db=-1.0)
    with pytest.raises(ConfigError):
        SynthConfig.from_dict({"rank_plane": 5})
    with pytest.raises(ConfigError):
        load_synth_config(io.StringIO('{"seed": "many"}'))
    with pytest.raises(ConfigError):
        load_synth_config(io.StringIO("[]"))
