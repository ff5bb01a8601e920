"""Randomized cross-checks of the closed form against the lattice oracle."""
from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .boundstates import zero_correspondence
from .model import Channel, SystemParams
from .oracle import solve_lattice, verify_reduction
from .scattering import coefficients, fmt, scatter

AMPLITUDE_TOL = 1e-10
REDUCTION_TOL = 1e-10
CONSERVATION_TOL = 1e-10
ZERO_TOL = 1e-8
MARGIN = 1e-3

AMPLITUDES = ("t_a", "r_a", "t_b", "u_e", "u_f")


def param_hash(params: SystemParams) -> str:
    return hashlib.sha256(params.to_text().encode()).hexdigest()[:12]


def random_params(rng: np.random.Generator) -> SystemParams:
    return SystemParams(
        xi_a=1.0,
        xi_b=float(rng.uniform(0.5, 1.5)),
        delta_a=float(rng.uniform(-1.0, 1.0)),
        delta_b=float(rng.uniform(-4.0, 4.0)),
        g_a=float(rng.uniform(0.05, 1.0)),
        g_b=float(rng.uniform(0.05, 1.0)),
        omega=float(rng.uniform(0.0, 2.0)),
    )


def is_safe_energy(params: SystemParams, energy: float, margin: float = MARGIN) -> bool:
    """Inside band a, at least ``margin`` from every band edge and pole."""
    lo_a, hi_a = params.band(Channel.A)
    if not lo_a + margin < energy < hi_a - margin:
        return False
    if min(abs(energy - e) for e in params.band(Channel.B)) < margin:
        return False
    return abs(energy * energy - params.omega ** 2) >= margin


def random_energy(rng: np.random.Generator, params: SystemParams) -> float:
    lo, hi = params.band(Channel.A)
    while True:
        energy = float(rng.uniform(lo, hi))
        if is_safe_energy(params, energy):
            return energy


def random_samples(seed: int, samples: int, params: SystemParams | None = None):
    """``samples`` pairs ``(params, E)``; ``params`` fixes the parameters."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        p = params if params is not None else random_params(rng)
        out.append((p, random_energy(rng, p)))
    return out


@dataclass(frozen=True)
class SampleResult:
    energy: float
    param_hash: str
    max_amp_diff: float
    reduction_residual: float
    conservation_err: float


@dataclass(frozen=True)
class SuiteResult:
    name: str
    worst: float
    tolerance: float
    checked: int

    @property
    def passed(self) -> bool:
        return self.worst < self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.name:<20} {status}  worst={self.worst:.3e}  "
                f"tol={self.tolerance:.0e}  checked={self.checked}")


@dataclass
class ValidationReport:
    seed: int
    samples: list[SampleResult] = field(default_factory=list)
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def write_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("E", "param_hash", "max_amp_diff", "reduction_residual",
                         "conservation_err"))
        for s in self.samples:
            writer.writerow((fmt(s.energy), s.param_hash, fmt(s.max_amp_diff),
                             fmt(s.reduction_residual), fmt(s.conservation_err)))

    def summary(self) -> str:
        return "\n".join(s.line() for s in self.suites)


def validate(seed: int = 0, samples: int = 200, params: SystemParams | None = None,
             n_half: int = 8) -> ValidationReport:
    """Run the oracle-equivalence, reduction, conservation and
    zero-correspondence suites on seeded random samples."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    report = ValidationReport(seed)
    zero_worst, zero_checked = 0.0, 0
    for p, energy in random_samples(seed, samples, params):
        closed = scatter(p, energy)
        lattice = solve_lattice(p, energy, n_half)
        diff = max(abs(getattr(closed, f) - getattr(lattice, f)) for f in AMPLITUDES)
        residual = verify_reduction(p, energy, n_half)
        total, _ = coefficients(closed, p)
        report.samples.append(SampleResult(energy, param_hash(p), diff, residual,
                                           abs(total - 1)))
        if p.g_a > 0 and p.omega > 0:
            for _, t_a in zero_correspondence(p):
                zero_worst = max(zero_worst, t_a)
                zero_checked += 1

    rows = report.samples
    report.suites = [
        SuiteResult("oracle_equivalence", max(r.max_amp_diff for r in rows), AMPLITUDE_TOL, len(rows)),
        SuiteResult("reduction_residual", max(r.reduction_residual for r in rows), REDUCTION_TOL, len(rows)),
        SuiteResult("conservation", max(r.conservation_err for r in rows), CONSERVATION_TOL, len(rows)),
        SuiteResult("zero_correspondence", zero_worst, ZERO_TOL, zero_checked),
    ]
    return report
