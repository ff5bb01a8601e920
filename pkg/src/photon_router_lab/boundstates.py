"""Bound states of waveguide b dressed by the driven atom (``g_a = 0``).

A state ``B_j = C (-1)^(n j) exp(-kappa |j|)`` is an eigenstate when

    (-1)^n (E^2 - Omega^2) sqrt((E - delta_b)^2 - 4 xi_b^2) + E g_b^2 = 0,

with ``n = 0`` below band b and ``n = 1`` above it. Roots are bracketed on a
uniform scan and refined by bisection down to adjacent doubles.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InsideBand
from .model import EDGE_TOL, Channel, ModeKind, SystemParams, resolve_mode
from .scattering import scatter

DEDUP_TOL = 1e-10


@dataclass(frozen=True)
class BoundState:
    energy: float
    parity: int
    kappa: float
    amplitude_c: float
    u_e: float
    u_f: float
    residual: float

    def norm(self) -> float:
        """Total single-excitation norm; photon part sums to ``C^2 coth(kappa)``."""
        return self.amplitude_c ** 2 / math.tanh(self.kappa) + self.u_e ** 2 + self.u_f ** 2


def bound_state_residual(params: SystemParams, energy: float, n_b: int) -> float:
    """Left-hand side of the bound-state condition; zero at a bound state."""
    if n_b not in (0, 1):
        raise ConfigError("n_b must be 0 or 1")
    gap = (energy - params.delta_b) ** 2 - 4 * params.xi_b ** 2
    if gap < 0:
        raise InsideBand(f"E={energy!r} lies inside band b")
    return ((-1) ** n_b * (energy ** 2 - params.omega ** 2) * math.sqrt(gap)
            + energy * params.g_b ** 2)


def _residual_grid(params, energies, n_b):
    gap = np.maximum((energies - params.delta_b) ** 2 - 4 * params.xi_b ** 2, 0.0)
    return ((-1) ** n_b * (energies ** 2 - params.omega ** 2) * np.sqrt(gap)
            + energies * params.g_b ** 2)


def _bisect(f, lo, hi, f_lo):
    """Shrink ``[lo, hi]`` around a sign change until no double lies
    strictly inside, then keep the endpoint with the smaller residual. Near a
    band edge the residual is steep, so stopping at a fixed width would leave
    a visible residual."""
    f_hi = f(hi)
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo) <= abs(f_hi) else hi


def bracket_roots(params: SystemParams, n_b: int, start: float, stop: float,
                  grid_step: float) -> list[float]:
    """Roots of the residual on ``[start, stop]`` located by sign changes on
    a uniform grid. An exact zero at a band edge (``kappa = 0``, not
    normalizable) is not a root."""
    count = max(int(math.ceil((stop - start) / grid_step)), 1) + 1
    grid = np.linspace(start, stop, count)
    values = _residual_grid(params, grid, n_b)
    roots = []
    f = lambda e: float(_residual_grid(params, np.array([e]), n_b)[0])
    edge = (0, count - 1)
    for i in range(count):
        if values[i] == 0 and i not in edge:
            roots.append(float(grid[i]))
        elif (i + 1 < count and values[i] != 0 and values[i + 1] != 0
              and (values[i] < 0) != (values[i + 1] < 0)):
            roots.append(_bisect(f, float(grid[i]), float(grid[i + 1]), float(values[i])))
    return roots


def _make_state(params, energy, n_b, edge_tol):
    mode = resolve_mode(Channel.B, energy, params, edge_tol)
    eps = energy ** 2 - params.omega ** 2
    if eps == 0:
        # decoupled dressed atom (g_b = 0): no photon component
        c, u_e = 0.0, 1 / math.sqrt(2)
        u_f = u_e * energy / params.omega
    else:
        ue_per_c = params.omega * params.g_b / eps
        uf_per_c = energy * params.g_b / eps
        c = 1 / math.sqrt(1 / math.tanh(mode.kappa) + ue_per_c ** 2 + uf_per_c ** 2)
        u_e, u_f = ue_per_c * c, uf_per_c * c
    return BoundState(energy, n_b, mode.kappa, c, u_e, u_f,
                      bound_state_residual(params, energy, n_b))


def find_bound_states(params: SystemParams, search_span: float | None = None,
                      grid_step: float = 1e-3, edge_tol: float = EDGE_TOL) -> list[BoundState]:
    """All bound states within ``search_span`` of band b, sorted by energy.

    Roots closer than ``edge_tol`` to a band edge are dropped with a warning.
    """
    if search_span is None:
        search_span = 10 * max(params.xi_b, params.omega, abs(params.delta_b))
    if search_span <= 0 or grid_step <= 0:
        raise ConfigError("search_span and grid_step must be positive")
    lower, upper = params.band(Channel.B)
    candidates = [(e, 0) for e in bracket_roots(params, 0, lower - search_span, lower, grid_step)]
    candidates += [(e, 1) for e in bracket_roots(params, 1, upper, upper + search_span, grid_step)]

    states = []
    for energy, n_b in sorted(candidates):
        if resolve_mode(Channel.B, energy, params, edge_tol).kind is not ModeKind.EVANESCENT:
            warnings.warn(f"discarding marginal bound state at band edge E={energy!r}",
                          stacklevel=2)
            continue
        if states and abs(states[-1].energy - energy) < DEDUP_TOL:
            continue
        states.append(_make_state(params, energy, n_b, edge_tol))
    return states


def bound_wavefunction(params: SystemParams, bs: BoundState, j_max: int) -> list[tuple[int, float]]:
    """Photon amplitudes ``(j, B_j)`` for ``|j| <= j_max``."""
    if j_max < 1:
        raise ConfigError("j_max must be at least 1")
    return [(j, bs.amplitude_c * (-1) ** (bs.parity * abs(j)) * math.exp(-bs.kappa * abs(j)))
            for j in range(-j_max, j_max + 1)]


def zero_correspondence(params: SystemParams, **search) -> list[tuple[float, float]]:
    """``(E*, T_a(E*))`` for every bound state inside band a.

    The bound-state energies of waveguide b are exactly the transmission
    zeros of channel a, so each ``T_a`` should vanish. With ``g_b = 0`` the
    bound states are the bare dressed states ``E = +/-Omega``, which are
    included even when they lie inside band b.
    """
    if params.g_a <= 0 or params.omega <= 0:
        raise ConfigError("zero correspondence needs g_a > 0 and omega > 0")
    energies = [bs.energy for bs in find_bound_states(params, **search)]
    if params.g_b == 0:
        energies = sorted(set(energies) | {-params.omega, params.omega})
    out = []
    for energy in energies:
        mode_a = resolve_mode(Channel.A, energy, params)
        mode_b = resolve_mode(Channel.B, energy, params)
        if mode_a.is_propagating and mode_b.kind is not ModeKind.BAND_EDGE:
            out.append((energy, scatter(params, energy).T_a))
    return out
