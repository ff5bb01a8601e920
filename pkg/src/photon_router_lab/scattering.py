"""Closed-form single-photon scattering amplitudes and flux coefficients.

A photon enters from the left of waveguide a. Eliminating the atomic
amplitudes leaves energy-dependent delta potentials at site 0,

    V_d(E) = E g_d^2 / (E^2 - Omega^2),   G(E) = Omega g_a g_b / (E^2 - Omega^2),

and the two matching conditions at the junction give ``t_a`` and ``t_b``.
Both amplitudes are evaluated here with numerator and denominator multiplied
by ``(E^2 - Omega^2)^2``, which is algebraically identical away from the
dressed-state poles ``|E| = Omega`` and reduces to their finite limit on them.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (BandEdgeDegenerate, ConfigError, EmptyGrid,
                     IncidentChannelClosed, PoleAtDressedState, RouterError)
from .model import (EDGE_TOL, POLE_TOL, Channel, ModeKind, ModeResolution,
                    SystemParams, resolve_mode)

SWEEP_HEADER = ("E", "T_a", "R_a", "T_b", "two_T_b", "conservation", "regime", "flags")
GRID_OFFSET = 1e-6
MAX_SHIFT = 1e-3


@dataclass(frozen=True)
class EffectiveCouplings:
    v_a: float
    v_b: float
    g_eff: float


class Regime(enum.Enum):
    BOTH_OPEN = "BothOpen"
    B_ONLY_CLOSED = "BOnlyClosed"
    A_CLOSED = "AClosed"


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes of the scattering eigenstate at one energy.

    ``t_b`` is the common amplitude of the left- and right-going waves in
    channel b. When channel b is evanescent, ``T_b`` is the squared
    amplitude of the localized mode, not a flux, and may exceed one.
    """

    energy: float
    t_a: complex
    r_a: complex
    t_b: complex
    u_e: complex
    u_f: complex
    mode_a: ModeResolution
    mode_b: ModeResolution

    @property
    def T_a(self) -> float:
        return abs(self.t_a) ** 2

    @property
    def R_a(self) -> float:
        return abs(self.r_a) ** 2

    @property
    def T_b(self) -> float:
        return abs(self.t_b) ** 2

    @property
    def regime(self) -> Regime:
        if not self.mode_a.is_propagating:
            return Regime.A_CLOSED
        if self.mode_b.is_propagating:
            return Regime.BOTH_OPEN
        return Regime.B_ONLY_CLOSED

    @property
    def transfer_probability(self) -> float:
        """Probability flux sent into channel b (both directions)."""
        if self.regime is not Regime.BOTH_OPEN:
            return 0.0
        return 2 * self.mode_b.group_velocity / self.mode_a.group_velocity * self.T_b


def effective_potentials(params: SystemParams, energy: float,
                         pole_tol: float = POLE_TOL) -> EffectiveCouplings:
    """Site-0 potentials ``V_a``, ``V_b`` and the cross coupling ``G``."""
    eps = energy * energy - params.omega ** 2
    if abs(eps) <= pole_tol:
        raise PoleAtDressedState(f"|E^2 - Omega^2| = {abs(eps):.3g} at E={energy!r}")
    return EffectiveCouplings(
        v_a=energy * params.g_a ** 2 / eps,
        v_b=energy * params.g_b ** 2 / eps,
        g_eff=params.omega * params.g_a * params.g_b / eps,
    )


def amplitudes_from_potentials(params: SystemParams, energy: float,
                               edge_tol: float = EDGE_TOL,
                               pole_tol: float = POLE_TOL) -> tuple[complex, complex]:
    """``(t_a, t_b)`` straight from the effective potentials, without
    clearing denominators. Raises on the poles; kept as a cross-check of the
    regularized evaluation in :func:`scatter`."""
    mode_a, mode_b = _modes(params, energy, edge_tol)
    c = effective_potentials(params, energy, pole_tol)
    alpha_a = 2j * params.xi_a * mode_a.sin_k
    alpha_b = 2j * params.xi_b * mode_b.sin_k
    det = (alpha_a - c.v_a) * (alpha_b - c.v_b) - c.g_eff ** 2
    return alpha_a * (alpha_b - c.v_b) / det, alpha_a * c.g_eff / det


def _modes(params, energy, edge_tol):
    mode_a = resolve_mode(Channel.A, energy, params, edge_tol)
    mode_b = resolve_mode(Channel.B, energy, params, edge_tol)
    for name, mode in (("a", mode_a), ("b", mode_b)):
        if mode.kind is ModeKind.BAND_EDGE:
            raise BandEdgeDegenerate(f"E={energy!r} is on a band edge of channel {name}")
    if not mode_a.is_propagating:
        raise IncidentChannelClosed(energy)
    return mode_a, mode_b


def scatter(params: SystemParams, energy: float, edge_tol: float = EDGE_TOL,
            pole_tol: float = POLE_TOL) -> ScatteringSolution:
    """Scattering amplitudes for a photon incident from the left in channel a.

    Raises
    ------
    IncidentChannelClosed
        ``energy`` lies outside band a.
    BandEdgeDegenerate
        ``energy`` is within ``edge_tol`` of a band edge of either channel.
    """
    mode_a, mode_b = _modes(params, energy, edge_tol)
    E, omega = energy, params.omega
    g_a, g_b = params.g_a, params.g_b
    alpha_a = 2j * params.xi_a * mode_a.sin_k
    alpha_b = 2j * params.xi_b * mode_b.sin_k
    eps = E * E - omega * omega

    if g_a == 0:
        t_a, t_b = 1 + 0j, 0j
    elif omega == 0:
        # channel b decouples; two-level scatterer in channel a
        t_a, t_b = alpha_a * E / (alpha_a * E - g_a ** 2), 0j
    else:
        den = (alpha_a * alpha_b * eps - E * (alpha_a * g_b ** 2 + alpha_b * g_a ** 2)
               + g_a ** 2 * g_b ** 2)
        if den == 0:
            raise RouterError(f"vanishing scattering denominator at E={energy!r}")
        t_a = alpha_a * (alpha_b * eps - E * g_b ** 2) / den
        t_b = alpha_a * omega * g_a * g_b / den
    r_a = t_a - 1

    if abs(eps) > pole_tol:
        u_e = (E * g_a * t_a + omega * g_b * t_b) / eps
        u_f = (E * g_b * t_b + omega * g_a * t_a) / eps
    else:
        # atomic rows are singular here; read U off the site-0 photon rows
        u_e = alpha_a * r_a / g_a if g_a else 0j
        if g_b:
            u_f = alpha_b * t_b / g_b
        elif omega:
            u_f = (E * u_e - g_a * t_a) / omega
        else:
            u_f = 0j
    return ScatteringSolution(E, complex(t_a), complex(r_a), complex(t_b),
                              complex(u_e), complex(u_f), mode_a, mode_b)


def coefficients(sol: ScatteringSolution, params: SystemParams) -> tuple[float, Regime]:
    """Total outgoing probability flux and the channel regime.

    With both channels open the channel-b flux is weighted by the ratio of
    group velocities; with b closed only channel a carries flux.
    """
    regime = sol.regime
    if regime is Regime.BOTH_OPEN:
        return sol.T_a + sol.R_a + sol.transfer_probability, regime
    if regime is Regime.B_ONLY_CLOSED:
        return sol.T_a + sol.R_a, regime
    return math.nan, regime


@dataclass(frozen=True)
class SweepRow:
    E: float
    T_a: float
    R_a: float
    T_b: float
    two_T_b: float
    conservation: float
    regime: Regime
    flags: tuple[str, ...] = ()


@dataclass
class SweepTable:
    params: SystemParams
    rows: list[SweepRow] = field(default_factory=list)

    def column(self, name: str) -> list:
        return [getattr(row, name) for row in self.rows]

    def write_csv(self, stream, extra: dict | None = None) -> None:
        """Write rows with 17 significant digits. ``extra`` prepends constant
        columns (e.g. a series label)."""
        extra = extra or {}
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow((*extra, *SWEEP_HEADER))
        for row in self.rows:
            writer.writerow((*extra.values(), *format_row(row)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def fmt(x: float) -> str:
    return f"{x:.17g}"


def format_row(row: SweepRow) -> tuple[str, ...]:
    return (fmt(row.E), fmt(row.T_a), fmt(row.R_a), fmt(row.T_b), fmt(row.two_T_b),
            fmt(row.conservation), row.regime.value, "|".join(row.flags))


def _problems(params, energy, edge_tol, pole_tol):
    found = []
    modes = [resolve_mode(ch, energy, params, edge_tol) for ch in Channel]
    if any(m.kind is ModeKind.BAND_EDGE for m in modes):
        found.append("edge")
    if abs(energy * energy - params.omega ** 2) <= pole_tol:
        found.append("pole")
    return found, modes[0]


def _admissible_energy(params, energy, edge_tol, pole_tol, offset):
    """Nearest energy ``energy +/- offset * 2**m`` (at most ``MAX_SHIFT``
    away) that is neither on a band edge nor on a pole, preferring the
    upward shift."""
    step = offset
    while step <= MAX_SHIFT:
        for candidate in (energy + step, energy - step):
            problems, mode_a = _problems(params, candidate, edge_tol, pole_tol)
            if not problems and mode_a.is_propagating:
                return candidate
        step *= 2
    return None


def sweep(params: SystemParams, grid: Sequence[float] | Iterable[float],
          edge_tol: float = EDGE_TOL, pole_tol: float = POLE_TOL,
          offset: float = GRID_OFFSET) -> SweepTable:
    """Evaluate the coefficients on an energy grid.

    Points on a band edge or on a dressed-state pole are moved by the
    smallest admissible offset and flagged ``edge`` / ``pole``. Points
    outside band a yield NaN coefficients and the flag ``a_closed``.
    """
    grid = [float(e) for e in grid]
    if not grid:
        raise EmptyGrid("sweep grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("sweep grid must be strictly increasing")
    table = SweepTable(params)
    for energy in grid:
        flags, mode_a = _problems(params, energy, edge_tol, pole_tol)
        evaluated = energy
        if mode_a.kind is ModeKind.EVANESCENT:
            evaluated = None
        elif flags:
            evaluated = _admissible_energy(params, energy, edge_tol, pole_tol, offset)
        if evaluated is None:
            nan = math.nan
            table.rows.append(SweepRow(energy, nan, nan, nan, nan, nan, Regime.A_CLOSED,
                                       (*flags, "a_closed")))
            continue
        sol = scatter(params, evaluated, edge_tol, pole_tol)
        total, regime = coefficients(sol, params)
        table.rows.append(SweepRow(evaluated, sol.T_a, sol.R_a, sol.T_b, 2 * sol.T_b,
                                   total, regime, tuple(flags)))
    return table
