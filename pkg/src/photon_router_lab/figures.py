"""Parameter sets of the reproduced figures and the data each one emits."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .boundstates import bound_wavefunction, find_bound_states
from .model import Channel, SystemParams
from .scattering import SWEEP_HEADER, fmt, format_row, scatter, sweep

GRID_POINTS = 1001
WAVEFUNCTION_J_MAX = 15

# xi_a = xi_b = 1, delta_a = 0, omega = 1, g_a = g_b = 0.5; delta_b varies
_FIG2 = SystemParams(xi_a=1.0, xi_b=1.0, delta_a=0.0, delta_b=0.0, g_a=0.5, g_b=0.5, omega=1.0)
# matched bands for every panel of the routing figure
_FIG3 = SystemParams(xi_a=1.0, xi_b=1.0, delta_a=0.0, delta_b=0.0, g_a=0.5, g_b=0.5, omega=1.2)


@dataclass(frozen=True)
class Figure:
    key: str
    kind: str  # "sweep", "map" or "wavefunction"
    series: tuple[tuple[str, SystemParams], ...]
    description: str


FIGURES: dict[str, Figure] = {
    "fig2a": Figure("fig2a", "sweep", (("delta_b=4.5", _FIG2.with_(delta_b=4.5)),),
                    "separated bands: channel b closed across band a"),
    "fig2b": Figure("fig2b", "sweep", (("delta_b=0", _FIG2.with_(delta_b=0.0)),),
                    "fully overlapping bands"),
    "fig2c": Figure("fig2c", "sweep", (("delta_b=2", _FIG2.with_(delta_b=2.0)),),
                    "partially overlapping bands"),
    "fig3a": Figure("fig3a", "sweep",
                    (("omega=0", _FIG3.with_(omega=0.0)),
                     ("g_b=0,omega=1", _FIG3.with_(g_b=0.0, omega=1.0))),
                    "two-level resonance and its Autler-Townes doublet"),
    "fig3b": Figure("fig3b", "sweep",
                    (("g_b=0.5", _FIG3), ("g_b=0.8", _FIG3.with_(g_b=0.8))),
                    "routing peaks at E=+/-omega, stronger g_b"),
    "fig3c": Figure("fig3c", "sweep",
                    (("g_b=0.5", _FIG3), ("g_b=0.2", _FIG3.with_(g_b=0.2))),
                    "routing peaks at E=+/-omega, weaker g_b"),
    "fig3d": Figure("fig3d", "map", (("", _FIG3),),
                    "T_b - T_a at E=omega over (g_a, g_b)"),
    "fig4b": Figure("fig4b", "wavefunction", (("", _FIG2.with_(delta_b=4.5)),),
                    "lowest n_b=0 bound state of waveguide b"),
}


def band_grid(params: SystemParams, points: int = GRID_POINTS) -> np.ndarray:
    lo, hi = params.band(Channel.A)
    return np.linspace(lo, hi, points)


def coupling_grid() -> np.ndarray:
    return np.round(np.linspace(0.05, 1.0, 20), 12)


def write_figure(key: str, stream) -> list[dict]:
    """Write the CSV for figure ``key`` and return its rows as plot series.

    Sweep figures carry a leading ``series`` column. ``fig3d`` writes
    ``g_a,g_b,E,T_a,T_b,diff`` and ``fig4b`` writes ``j,B_j``.
    """
    fig = FIGURES[key]
    writer = csv.writer(stream, lineterminator="\n")
    plotted = []
    if fig.kind == "sweep":
        writer.writerow(("series", *SWEEP_HEADER))
        for label, params in fig.series:
            table = sweep(params, band_grid(params))
            for row in table.rows:
                writer.writerow((label, *format_row(row)))
            plotted.append({"label": label, "x": table.column("E"),
                            "curves": {name: table.column(name)
                                       for name in ("T_a", "R_a", "two_T_b")}})
    elif fig.kind == "map":
        params = fig.series[0][1]
        writer.writerow(("g_a", "g_b", "E", "T_a", "T_b", "diff"))
        gs = coupling_grid()
        for g_a in gs:
            diffs = []
            for g_b in gs:
                p = params.with_(g_a=float(g_a), g_b=float(g_b))
                sol = scatter(p, p.omega)
                diffs.append(sol.T_b - sol.T_a)
                writer.writerow((fmt(g_a), fmt(g_b), fmt(p.omega), fmt(sol.T_a),
                                 fmt(sol.T_b), fmt(sol.T_b - sol.T_a)))
            plotted.append({"label": f"g_a={g_a:g}", "x": list(gs), "curves": {"diff": diffs}})
    else:
        params = fig.series[0][1]
        lowest = next(bs for bs in find_bound_states(params) if bs.parity == 0)
        pairs = bound_wavefunction(params, lowest, WAVEFUNCTION_J_MAX)
        writer.writerow(("j", "B_j"))
        for j, amp in pairs:
            writer.writerow((j, fmt(amp)))
        plotted.append({"label": f"E={lowest.energy:.6f}", "x": [j for j, _ in pairs],
                        "curves": {"B_j": [amp for _, amp in pairs]}})
    return plotted
