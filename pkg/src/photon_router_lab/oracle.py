"""Brute-force lattice solver for the scattering eigenstate.

The full single-excitation Schrodinger equation (both chains, both atomic
amplitudes) is written on a finite window ``j = -N..N`` and closed by
matching the asymptotic plane waves at the two outermost sites of each end.
Nothing from the reduced site-0 potentials is used, so agreement with
:func:`photon_router_lab.scattering.scatter` is a genuine check.

Unknown layout::

    A_{-N..N} | B_{-N..N} | U_e | U_f | r_a | t_a | t_bl | t_br
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BandEdgeDegenerate, ConfigError, IncidentChannelClosed, SingularSystem
from .model import EDGE_TOL, POLE_TOL, Channel, ModeKind, SystemParams, resolve_mode
from .scattering import ScatteringSolution, effective_potentials


@dataclass(frozen=True)
class LatticeSystem:
    """Assembled linear system ``matrix @ x = rhs`` on ``2N+1`` sites per chain."""

    n_half: int
    matrix: np.ndarray
    rhs: np.ndarray

    @property
    def n_sites(self) -> int:
        return 2 * self.n_half + 1

    def index_a(self, j: int) -> int:
        return j + self.n_half

    def index_b(self, j: int) -> int:
        return self.n_sites + j + self.n_half

    @property
    def index_atom(self) -> int:
        """Index of ``U_e``; ``U_f`` and the four amplitudes follow it."""
        return 2 * self.n_sites


@dataclass(frozen=True)
class LatticeState:
    params: SystemParams
    energy: float
    n_half: int
    a: np.ndarray
    b: np.ndarray
    t_bl: complex
    solution: ScatteringSolution

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.n_half, self.n_half + 1)


def _modes(params, energy, edge_tol):
    mode_a = resolve_mode(Channel.A, energy, params, edge_tol)
    mode_b = resolve_mode(Channel.B, energy, params, edge_tol)
    if mode_a.kind is ModeKind.BAND_EDGE or mode_b.kind is ModeKind.BAND_EDGE:
        raise BandEdgeDegenerate(f"E={energy!r} is on a band edge")
    if not mode_a.is_propagating:
        raise IncidentChannelClosed(energy)
    return mode_a, mode_b


def build_system(params: SystemParams, energy: float, n_half: int,
                 edge_tol: float = EDGE_TOL) -> LatticeSystem:
    if n_half < 2:
        raise ConfigError("n_half must be at least 2")
    mode_a, mode_b = _modes(params, energy, edge_tol)
    N = n_half
    dim = 2 * (2 * N + 1) + 6
    m = np.zeros((dim, dim), dtype=complex)
    rhs = np.zeros(dim, dtype=complex)
    system = LatticeSystem(N, m, rhs)
    ia, ib = system.index_a, system.index_b
    ue = system.index_atom
    uf, r_a, t_a, t_bl, t_br = ue + 1, ue + 2, ue + 3, ue + 4, ue + 5

    row = 0
    chains = ((ia, params.xi_a, params.delta_a, params.g_a, ue),
              (ib, params.xi_b, params.delta_b, params.g_b, uf))
    for index, xi, delta, g, atom in chains:
        for j in range(-N + 1, N):
            m[row, index(j)] = delta - energy
            m[row, index(j + 1)] = -xi
            m[row, index(j - 1)] = -xi
            if j == 0:
                m[row, atom] = g
            row += 1

    # atomic rows: E U_e = g_a A_0 + Omega U_f,  E U_f = g_b B_0 + Omega U_e
    m[row, ue], m[row, uf], m[row, ia(0)] = -energy, params.omega, params.g_a
    row += 1
    m[row, uf], m[row, ue], m[row, ib(0)] = -energy, params.omega, params.g_b
    row += 1

    # asymptotic closure at |j| = N and N-1
    for dist in (N, N - 1):
        w = mode_a.wave(dist)
        m[row, ia(-dist)], m[row, r_a] = 1, -w
        rhs[row] = w.conjugate()
        row += 1
        m[row, ia(dist)], m[row, t_a] = 1, -w
        row += 1
        w = mode_b.wave(dist)
        m[row, ib(-dist)], m[row, t_bl] = 1, -w
        row += 1
        m[row, ib(dist)], m[row, t_br] = 1, -w
        row += 1
    assert row == dim
    return system


def solve_lattice_state(params: SystemParams, energy: float, n_half: int = 8,
                        edge_tol: float = EDGE_TOL) -> LatticeState:
    """Solve the lattice system and keep the full site amplitudes."""
    system = build_system(params, energy, n_half, edge_tol)
    mode_a, mode_b = _modes(params, energy, edge_tol)
    # equilibrate: evanescent B_j span exp(-kappa N)..1, which would
    # otherwise swamp the pivoting on long windows
    col = np.ones(len(system.rhs))
    if mode_b.kind is ModeKind.EVANESCENT:
        for j in range(-n_half, n_half + 1):
            col[system.index_b(j)] = np.exp(-mode_b.kappa * abs(j))
    scaled = system.matrix * col
    row = 1 / np.abs(scaled).max(axis=1)
    scaled *= row[:, None]
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            x = col * scipy.linalg.solve(scaled, row * system.rhs)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
            raise SingularSystem(f"lattice solve failed at E={energy!r}: {exc}",
                                 np.linalg.cond(scaled)) from None
    if not np.all(np.isfinite(x)):
        raise SingularSystem(f"non-finite lattice solution at E={energy!r}",
                             np.linalg.cond(system.matrix))
    n = system.n_sites
    u_e, u_f, r_a, t_a, t_bl, t_br = x[2 * n:]
    sol = ScatteringSolution(energy, complex(t_a), complex(r_a), complex(t_br),
                             complex(u_e), complex(u_f), mode_a, mode_b)
    return LatticeState(params, energy, n_half, x[:n].copy(), x[n:2 * n].copy(),
                        complex(t_bl), sol)


def solve_lattice(params: SystemParams, energy: float, n_half: int = 8,
                  edge_tol: float = EDGE_TOL) -> ScatteringSolution:
    """Scattering amplitudes from a direct solve of the lattice equations.

    The only inhomogeneity sits at site 0, so the plane-wave closure is exact
    for every ``n_half >= 2`` and the result does not depend on ``n_half``.
    """
    return solve_lattice_state(params, energy, n_half, edge_tol).solution


def verify_reduction(params: SystemParams, energy: float, n_half: int = 8,
                     edge_tol: float = EDGE_TOL, pole_tol: float = POLE_TOL) -> float:
    """Largest residual of the reduced photon-only equations evaluated on
    the lattice solution, over the interior sites of both chains."""
    couplings = effective_potentials(params, energy, pole_tol)
    state = solve_lattice_state(params, energy, n_half, edge_tol)
    worst = 0.0
    chains = ((state.a, state.b, params.xi_a, params.delta_a, couplings.v_a),
              (state.b, state.a, params.xi_b, params.delta_b, couplings.v_b))
    N = n_half
    for d, other, xi, delta, v in chains:
        for j in range(-N + 1, N):
            i = j + N
            res = (energy - delta) * d[i] + xi * (d[i + 1] + d[i - 1])
            if j == 0:
                res -= v * d[i] + couplings.g_eff * other[i]
            worst = max(worst, abs(res))
    return worst


def extrapolate_pole(params: SystemParams, energy: float, delta: float = 1e-6,
                     n_half: int = 8) -> ScatteringSolution:
    """Lattice amplitudes at a dressed-state pole, taken as the mean of the
    solves at ``energy +/- delta`` (the lattice rows themselves are regular
    there, but this keeps the check two-sided)."""
    lo = solve_lattice(params, energy - delta, n_half)
    hi = solve_lattice(params, energy + delta, n_half)
    mid = resolve_mode(Channel.A, energy, params), resolve_mode(Channel.B, energy, params)
    avg = [(getattr(lo, f) + getattr(hi, f)) / 2 for f in ("t_a", "r_a", "t_b", "u_e", "u_f")]
    return ScatteringSolution(energy, *avg, *mid)
