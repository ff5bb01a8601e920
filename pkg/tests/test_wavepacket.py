import io
import math

import numpy as np
import pytest

from photon_router_lab import SystemParams
from photon_router_lab._core import BACKEND
from photon_router_lab.errors import ConfigError, NormDriftExceeded, WallContamination
from photon_router_lab.wavepacket import (WavepacketConfig, carrier_split, compare_stationary,
                                          evolve, initial_state, stationary_split)

SMALL = WavepacketConfig(half_length=200, sigma=15)


def test_initial_state_width():
    cfg = WavepacketConfig().resolved(SystemParams())
    psi = initial_state(SystemParams(), cfg)
    prob = np.abs(psi[:1201]) ** 2
    j = np.arange(-600, 601)
    mean = (j * prob).sum()
    assert np.linalg.norm(psi) == pytest.approx(1, abs=1e-14)
    assert mean == pytest.approx(-300, abs=1e-9)
    assert math.sqrt(((j - mean) ** 2 * prob).sum()) == pytest.approx(30, rel=1e-9)


def test_ballistic():
    p = SystemParams(g_a=0, g_b=0)
    cfg = WavepacketConfig()
    record = evolve(p, cfg)
    assert record.final_split[1] == pytest.approx(1, abs=1e-8)
    assert compare_stationary(record, p, cfg) < 1e-8
    assert record.norm_drift < 1e-8


def test_matched_bands_at_pole(matched):
    cfg = WavepacketConfig()
    record = evolve(matched, cfg)
    assert record.norm_drift < 1e-8
    assert compare_stationary(record, matched, cfg) < 0.02
    # the averaged reference is matched far more closely than the tolerance
    assert compare_stationary(record, matched, cfg) < 1e-5
    assert sum(record.final_split) + record.p_atom[-1] == pytest.approx(1, abs=1e-8)


@pytest.mark.xfail(strict=True, reason="at sigma=30 the spectral average of T_a sits 0.027 "
                   "above its plane-wave value at the carrier")
def test_matched_bands_against_carrier_values(matched):
    record = evolve(matched, WavepacketConfig())
    p_r, p_t, p_b = record.final_split
    assert abs(p_t - 0.249) < 0.02 and abs(p_b - 0.497) < 0.02 and abs(p_r - 0.254) < 0.02


def test_carrier_values(matched):
    cfg = WavepacketConfig()
    assert carrier_split(matched, cfg) == pytest.approx((0.2539, 0.2487, 0.4974), abs=1e-4)
    r, t, b = stationary_split(matched, cfg)
    assert r + t + b == pytest.approx(1, abs=1e-12)


def test_off_pole_carrier(matched):
    cfg = WavepacketConfig(carrier_k=math.acos(-0.25))
    record = evolve(matched, cfg)
    assert compare_stationary(record, matched, cfg) < 0.02


def test_resonant_reflection_without_drive():
    p = SystemParams(omega=0.0)
    cfg = WavepacketConfig(half_length=1000, sigma=80, carrier_k=math.pi / 2)
    record = evolve(p, cfg)
    assert record.final_split[1] < 0.02
    assert record.final_split[2] < 1e-8
    assert np.all(record.p_b_left + record.p_b_right < 1e-10)


def test_agreement_improves_with_width(matched):
    k = math.acos(-0.25)
    deviations = []
    for sigma in (10, 20, 40):
        cfg = WavepacketConfig(sigma=sigma, carrier_k=k)
        deviations.append(compare_stationary(evolve(matched, cfg), matched, cfg, averaged=False))
    assert deviations[0] > deviations[1] > deviations[2]


@pytest.mark.parametrize("backend", ["python", BACKEND])
def test_backend_reported(backend):
    assert evolve(SystemParams(), SMALL, backend=backend).backend == backend


def test_csv(matched):
    record = evolve(matched, SMALL)
    buf = io.StringIO()
    record.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,p_a_left,p_a_right,p_b_left,p_b_right,p_atom"
    assert len(lines) == len(record.times) + 1
    assert "P_R=" in record.summary()


def test_config_errors(matched):
    for cfg in (WavepacketConfig(carrier_k=0.0), WavepacketConfig(carrier_k=math.pi),
                WavepacketConfig(sigma=100),
                WavepacketConfig(center=10),
                WavepacketConfig(sigma=5, carrier_k=0.1)):
        with pytest.raises(ConfigError):
            evolve(matched, cfg)


def test_norm_drift_guard(matched):
    with pytest.raises(NormDriftExceeded):
        evolve(matched, WavepacketConfig(half_length=200, sigma=15, dt=1.0))


def test_wall_guard(matched):
    with pytest.raises(WallContamination):
        evolve(matched, WavepacketConfig(half_length=200, sigma=15, t_end=150))
