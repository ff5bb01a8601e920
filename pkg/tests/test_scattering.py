import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from photon_router_lab import (BandEdgeDegenerate, EmptyGrid, IncidentChannelClosed,
                               PoleAtDressedState, Regime, SystemParams, coefficients,
                               effective_potentials, scatter, sweep)
from photon_router_lab.errors import ConfigError
from photon_router_lab.model import Channel
from photon_router_lab.oracle import solve_lattice
from photon_router_lab.scattering import amplitudes_from_potentials
from photon_router_lab.validation import is_safe_energy

AMPS = ("t_a", "r_a", "t_b", "u_e", "u_f")


@st.composite
def scattering_case(draw, open_b=None):
    p = SystemParams(
        xi_a=1.0,
        xi_b=draw(st.floats(0.3, 2.0)),
        delta_a=draw(st.floats(-1, 1)),
        delta_b=draw(st.floats(-5, 5)),
        g_a=draw(st.floats(0, 1.5)),
        g_b=draw(st.floats(0, 1.5)),
        omega=draw(st.floats(0, 2.5)),
    )
    lo, hi = p.band(Channel.A)
    energy = draw(st.floats(lo, hi))
    assume(is_safe_energy(p, energy, 1e-3))
    if open_b is not None:
        lo_b, hi_b = p.band(Channel.B)
        assume((lo_b < energy < hi_b) == open_b)
    return p, energy


class TestEffectivePotentials:

    def test_examples(self):
        c = effective_potentials(SystemParams(omega=1, g_a=0.5, g_b=0.5), 0.0)
        assert (c.v_a, c.v_b) == (0.0, 0.0)
        assert c.g_eff == pytest.approx(-0.25, abs=1e-15)
        c = effective_potentials(SystemParams(omega=0, g_a=0.5, g_b=0), 0.5)
        assert (c.v_a, c.v_b, c.g_eff) == pytest.approx((0.5, 0.0, 0.0), abs=1e-15)

    @pytest.mark.parametrize("energy", [1.0, -1.0, 1 + 1e-9])
    def test_pole(self, energy):
        with pytest.raises(PoleAtDressedState):
            effective_potentials(SystemParams(omega=1), energy)

    @given(st.floats(-5, 5), st.floats(0, 3), st.floats(0, 2), st.floats(0, 2))
    def test_defining_identities(self, energy, omega, g_a, g_b):
        eps = energy ** 2 - omega ** 2
        assume(abs(eps) > 1e-6)
        c = effective_potentials(SystemParams(omega=omega, g_a=g_a, g_b=g_b), energy)
        assert c.v_a * eps == pytest.approx(energy * g_a ** 2, rel=1e-12, abs=1e-300)
        assert c.v_b * eps == pytest.approx(energy * g_b ** 2, rel=1e-12, abs=1e-300)
        assert c.g_eff * eps == pytest.approx(omega * g_a * g_b, rel=1e-12, abs=1e-300)


class TestScatterExamples:

    @pytest.mark.parametrize("energy", [-1.5, 0.2, 1.7])
    def test_free_propagation(self, energy):
        for p in (SystemParams(g_a=0, g_b=0), SystemParams(g_a=0, g_b=0.7, omega=0.3)):
            sol = scatter(p, energy)
            assert (sol.t_a, sol.r_a, sol.t_b) == (1, 0, 0)

    def test_two_level_resonance_reflects(self):
        p = SystemParams(omega=0, g_a=0.5, g_b=0.3)
        for energy in (1e-7, -1e-7, 0.0):
            sol = scatter(p, energy)
            assert sol.T_a < 1e-12
            assert abs(sol.r_a + 1) < 1e-6

    @pytest.mark.parametrize("energy", [1.0, -1.0])
    def test_autler_townes_zeros(self, energy):
        sol = scatter(SystemParams(omega=1, g_a=0.5, g_b=0), energy)
        assert sol.t_a == 0

    def test_pole_value_matched_bands(self, matched):
        sol = scatter(matched, 1.0)
        # s_a = s_b = sqrt(3)/2 in the limit formula
        s = math.sqrt(3) / 2
        d1 = 0.5 ** 4 - 2j * (s * 0.25 + s * 0.25)
        assert sol.t_a == pytest.approx(-2j * s * 0.25 / d1, abs=1e-15)
        assert sol.t_b == pytest.approx(2j * s * 0.25 / d1, abs=1e-15)
        assert sol.t_a == pytest.approx(0.4974 - 0.0359j, abs=5e-5)
        assert sol.T_a == pytest.approx(0.2487, abs=1e-4)
        assert sol.T_b == pytest.approx(0.2487, abs=1e-4)
        assert sol.R_a == pytest.approx(0.2539, abs=1e-4)
        lattice = solve_lattice(matched, 1.0)
        for f in AMPS:
            assert abs(getattr(sol, f) - getattr(lattice, f)) < 1e-10

    def test_zero_energy_matched_bands(self, matched):
        sol = scatter(matched, 0.0)
        # V_a = V_b = 0, G = -1/4, sin k = 1: t_a = (2i)(2i) / ((2i)(2i) - G^2)
        expected = -4 / (-4 - 0.0625)
        assert sol.t_a == pytest.approx(expected, abs=1e-15)
        assert sol.t_a == pytest.approx(0.98462, abs=1e-5)
        assert sol.T_a == pytest.approx(0.96947, abs=1e-5)

    def test_errors(self, matched):
        with pytest.raises(IncidentChannelClosed, match="incident channel closed"):
            scatter(matched, 3.0)
        with pytest.raises(BandEdgeDegenerate):
            scatter(matched, 2.0)
        with pytest.raises(BandEdgeDegenerate):
            scatter(SystemParams(delta_b=3.0), 1.0)

    @pytest.mark.parametrize("params", [
        SystemParams(), SystemParams(delta_b=4.5), SystemParams(delta_b=2, g_a=0.3, g_b=0.9),
        SystemParams(omega=0.4, g_b=0), SystemParams(omega=1.3, g_a=0.2, xi_b=0.7),
    ])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_limit_matches_generic_path(self, params, sign):
        pole = sign * params.omega
        sol = scatter(params, pole)
        lo = amplitudes_from_potentials(params, pole - 1e-6)
        hi = amplitudes_from_potentials(params, pole + 1e-6)
        assert abs((lo[0] + hi[0]) / 2 - sol.t_a) < 1e-8
        assert abs((lo[1] + hi[1]) / 2 - sol.t_b) < 1e-8
        # atomic amplitudes are continuous across the switch at pole_tol
        near = scatter(params, pole + 1e-5)
        assert abs(near.u_e - sol.u_e) < 1e-3 and abs(near.u_f - sol.u_f) < 1e-3


class TestScatterProperties:

    @settings(max_examples=300)
    @given(scattering_case())
    def test_continuity(self, case):
        sol = scatter(*case)
        assert sol.r_a == sol.t_a - 1

    @settings(max_examples=300)
    @given(scattering_case(open_b=True))
    def test_velocity_weighted_conservation(self, case):
        p, energy = case
        sol = scatter(p, energy)
        total, regime = coefficients(sol, p)
        assert regime is Regime.BOTH_OPEN
        assert abs(total - 1) < 1e-10

    @settings(max_examples=300)
    @given(scattering_case(open_b=False))
    def test_closed_channel_conservation(self, case):
        p, energy = case
        sol = scatter(p, energy)
        total, regime = coefficients(sol, p)
        assert regime is Regime.B_ONLY_CLOSED
        assert abs(sol.T_a + sol.R_a - 1) < 1e-10
        assert total == sol.T_a + sol.R_a

    @given(scattering_case())
    def test_no_transfer_without_drive(self, case):
        p, energy = case
        assert scatter(p.with_(omega=0.0), energy).t_b == 0

    @given(scattering_case())
    def test_generic_path_agrees(self, case):
        p, energy = case
        sol = scatter(p, energy)
        t_a, t_b = amplitudes_from_potentials(p, energy)
        assert abs(t_a - sol.t_a) < 1e-9 and abs(t_b - sol.t_b) < 1e-9

    @given(st.floats(0.2, 1.9), st.floats(0.05, 1.5), st.floats(-3, 3), st.floats(0.5, 1.5),
           st.sampled_from([1, -1]))
    def test_symmetric_coupling_equality_at_pole(self, omega, g, delta_b, xi_b, sign):
        p = SystemParams(omega=omega, g_a=g, g_b=g, delta_b=delta_b, xi_b=xi_b)
        assume(min(abs(sign * omega - e) for e in p.band(Channel.B)) > 1e-6)
        sol = scatter(p, sign * omega)
        assert abs(abs(sol.t_a) - abs(sol.t_b)) < 1e-12

    @given(st.floats(0.2, 1.9), st.floats(0.05, 1.5), st.floats(0.05, 1.5))
    def test_pole_ratio(self, omega, g_a, g_b):
        sol = scatter(SystemParams(omega=omega, g_a=g_a, g_b=g_b), omega)
        assert abs(sol.t_a) / abs(sol.t_b) == pytest.approx(g_b / g_a, rel=1e-12)

    def test_evanescent_t_b_is_raw_and_may_exceed_one(self):
        p = SystemParams(delta_b=4.01, g_a=1.5, g_b=1.5, omega=0.5)
        sol = scatter(p, -0.63)
        assert sol.regime is Regime.B_ONLY_CLOSED
        assert sol.T_b == abs(sol.t_b) ** 2 > 1
        assert sol.transfer_probability == 0


class TestSweep:

    def test_columns_and_regime(self, matched):
        table = sweep(matched, [-1.5, 0.0, 0.5])
        row = table.rows[1]
        assert row.regime is Regime.BOTH_OPEN
        assert row.two_T_b == 2 * row.T_b
        assert row.conservation == pytest.approx(1, abs=1e-12)
        header = table.to_csv().splitlines()[0]
        assert header == "E,T_a,R_a,T_b,two_T_b,conservation,regime,flags"

    def test_flags_pole_and_edges(self, matched):
        table = sweep(matched, np.linspace(-2, 2, 5))
        flags = [r.flags for r in table.rows]
        assert flags == [("edge",), ("pole",), (), ("pole",), ("edge",)]
        table = sweep(matched, [-1.0, 1.0])
        assert [r.flags for r in table.rows] == [("pole",), ("pole",)]
        assert table.rows[1].E == pytest.approx(1 + 1e-6, abs=1e-15)
        for r in table.rows:
            assert abs(r.conservation - 1) < 1e-10

    def test_flag_pole_at_zero_without_drive(self):
        table = sweep(SystemParams(omega=0, g_a=0.5), [0.0])
        assert table.rows[0].flags == ("pole",)
        assert abs(table.rows[0].E) ** 2 > 1e-8

    def test_outside_band_a(self, matched):
        row = sweep(matched, [2.5]).rows[0]
        assert row.flags == ("a_closed",) and math.isnan(row.T_a)

    def test_errors(self, matched):
        with pytest.raises(EmptyGrid):
            sweep(matched, [])
        with pytest.raises(ConfigError):
            sweep(matched, [0.1, 0.1])

    def test_two_peaks_near_drive(self):
        p = SystemParams(omega=1.2, g_a=0.5, g_b=0.5)
        grid = np.linspace(-2, 2, 1001)
        two_t_b = np.array(sweep(p, grid).column("two_T_b"))
        # stay clear of the band edges, where every coefficient has a cusp
        peaks = [i for i in range(50, len(grid) - 50)
                 if two_t_b[i] > two_t_b[i - 1] and two_t_b[i] >= two_t_b[i + 1]]
        assert len(peaks) == 2
        step = grid[1] - grid[0]
        # exact maxima sit slightly inside +/-omega (bounded scalar maximization)
        assert abs(grid[peaks[0]] + 1.18988) <= step
        assert abs(grid[peaks[1]] - 1.18988) <= step
        assert 2 * scatter(p, 1.18988).T_b == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("g", [0.1, 0.5, 0.9])
    def test_equal_couplings_equal_coefficients_at_drive(self, g):
        p = SystemParams(omega=1.2, g_a=g, g_b=g)
        for energy in (1.2, -1.2):
            sol = scatter(p, energy)
            assert abs(sol.T_b - sol.T_a) < 1e-12

    def test_csv_precision_round_trips(self, matched):
        table = sweep(matched, [0.123456789])
        fields = table.to_csv().splitlines()[1].split(",")
        assert float(fields[1]) == table.rows[0].T_a
