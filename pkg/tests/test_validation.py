import io

import pytest

from photon_router_lab import SystemParams
from photon_router_lab.validation import (is_safe_energy, param_hash, random_samples,
                                          validate)


def test_seeded_samples_are_safe():
    samples = random_samples(11, 50)
    assert samples == random_samples(11, 50)
    assert all(is_safe_energy(p, e) for p, e in samples)
    assert len({param_hash(p) for p, _ in samples}) == 50


def test_reference_run_passes():
    report = validate(seed=42, samples=200)
    assert report.passed, report.summary()
    names = [s.name for s in report.suites]
    assert names == ["oracle_equivalence", "reduction_residual", "conservation",
                     "zero_correspondence"]
    assert report.suites[-1].checked > 0


def test_trivial_run():
    report = validate(seed=0, samples=1, params=SystemParams(g_a=0.0, g_b=0.0))
    assert report.passed and len(report.samples) == 1


def test_report_is_deterministic():
    out = []
    for _ in range(2):
        buf = io.StringIO()
        validate(seed=5, samples=10).write_csv(buf)
        out.append(buf.getvalue())
    assert out[0] == out[1]
    assert out[0].splitlines()[0] == "E,param_hash,max_amp_diff,reduction_residual,conservation_err"


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        validate(samples=0)
