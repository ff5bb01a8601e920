"""Command-line front end: ``photon-router-lab <command> [options]``.

Exit codes: 0 success, 1 domain error (band edge, closed incident channel,
failed validation), 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
from pathlib import Path

from . import __version__
from .boundstates import bound_wavefunction, find_bound_states
from .errors import ConfigError, RouterError
from .figures import FIGURES, write_figure
from .model import PARAM_KEYS, Channel, SystemParams, resolve_mode
from .scattering import coefficients, fmt, scatter, sweep
from .validation import validate
from .wavepacket import WavepacketConfig, compare_stationary, evolve


def parse_grid(text: str) -> list[float]:
    """``min:max:count`` -> evenly spaced energies including both ends."""
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"grid must look like min:max:count, got {text!r}") from None
    if count < 2 or not lo < hi:
        raise ConfigError("grid needs count >= 2 and min < max")
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="flat 'key = value' parameter file")
    for key in PARAM_KEYS:
        common.add_argument("--" + key.replace("_", "-"), dest=key, type=float)
    common.add_argument("-o", "--output", type=Path, help="output path (default: stdout)")
    common.add_argument("--svg", action="store_true", help="also write an SVG next to the CSV")

    parser = argparse.ArgumentParser(
        prog="photon-router-lab",
        description="Single-photon routing through two coupled-resonator waveguides.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", parents=[common], help="classify an energy in both channels")
    p.add_argument("--energy", type=float, required=True)

    p = sub.add_parser("scatter", parents=[common], help="amplitudes at one energy")
    p.add_argument("--energy", type=float, required=True)

    p = sub.add_parser("sweep", parents=[common], help="coefficients over an energy grid")
    p.add_argument("--grid", required=True, metavar="MIN:MAX:COUNT")

    p = sub.add_parser("bound-states", parents=[common], help="bound states of waveguide b")
    p.add_argument("--span", type=float, help="search span beyond each band edge")
    p.add_argument("--step", type=float, default=1e-3, help="scan step")
    p.add_argument("--wavefunction", type=Path, metavar="PATH",
                   help="write j,B_j of one state to PATH")
    p.add_argument("--state", type=int, default=0, help="index of the state for --wavefunction")
    p.add_argument("--j-max", type=int, default=15)

    p = sub.add_parser("wavepacket", parents=[common], help="time-domain packet scattering")
    p.add_argument("--energy", type=float, help="carrier energy (alternative to --carrier-k)")
    p.add_argument("--carrier-k", type=float)
    p.add_argument("--sigma", type=float, default=30.0)
    p.add_argument("--half-length", type=int, default=600)
    p.add_argument("--center", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--stride", type=int, default=50)
    p.add_argument("--backend", choices=("compiled", "python"))

    p = sub.add_parser("reproduce", parents=[common], help="data behind one figure")
    p.add_argument("figure_id", nargs="?", choices=sorted(FIGURES))
    p.add_argument("--figure", choices=sorted(FIGURES))

    p = sub.add_parser("validate", parents=[common], help="randomized oracle cross-checks")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    return parser


def load_params(args) -> tuple[SystemParams, bool]:
    """Defaults <- config file <- flags. Also reports whether anything was set."""
    params = SystemParams()
    explicit = False
    if args.config is not None:
        params = SystemParams.from_file(args.config, params)
        explicit = True
    overrides = {k: getattr(args, k) for k in PARAM_KEYS if getattr(args, k) is not None}
    if overrides:
        params = params.with_(**overrides)
        explicit = True
    return params, explicit


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _svg(args, series, title):
    if args.svg and args.output is not None:
        from .plotting import write_svg

        write_svg(args.output.with_suffix(".svg"), series, title)


def cmd_modes(args, params):
    with _output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("channel", "kind", "k", "n", "kappa", "group_velocity",
                         "wavenumber_re", "wavenumber_im"))
        for ch in Channel:
            m = resolve_mode(ch, args.energy, params)
            writer.writerow((ch.value, m.kind.value, "" if m.k is None else fmt(m.k),
                             "" if m.n is None else m.n,
                             "" if m.kappa is None else fmt(m.kappa),
                             fmt(m.group_velocity), fmt(m.complex_wavenumber.real),
                             fmt(m.complex_wavenumber.imag)))


def cmd_scatter(args, params):
    sol = scatter(params, args.energy)
    total, regime = coefficients(sol, params)
    with _output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("quantity", "real", "imag"))
        for name in ("t_a", "r_a", "t_b", "u_e", "u_f"):
            z = getattr(sol, name)
            writer.writerow((name, fmt(z.real), fmt(z.imag)))
        for name in ("T_a", "R_a", "T_b"):
            writer.writerow((name, fmt(getattr(sol, name)), ""))
        writer.writerow(("conservation", fmt(total), ""))
        writer.writerow(("regime", regime.value, ""))


def cmd_sweep(args, params):
    table = sweep(params, parse_grid(args.grid))
    with _output(args.output) as out:
        table.write_csv(out)
    _svg(args, [{"label": "", "x": table.column("E"),
                 "curves": {n: table.column(n) for n in ("T_a", "R_a", "two_T_b")}}], "sweep")


def cmd_bound_states(args, params):
    states = find_bound_states(params, args.span, args.step)
    with _output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("n_b", "E", "kappa", "C", "u_e", "u_f", "residual"))
        for bs in states:
            writer.writerow((bs.parity, fmt(bs.energy), fmt(bs.kappa), fmt(bs.amplitude_c),
                             fmt(bs.u_e), fmt(bs.u_f), fmt(bs.residual)))
    if args.wavefunction is not None:
        if not 0 <= args.state < len(states):
            raise ConfigError(f"--state {args.state} out of range ({len(states)} states found)")
        with open(args.wavefunction, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("j", "B_j"))
            for j, amp in bound_wavefunction(params, states[args.state], args.j_max):
                writer.writerow((j, fmt(amp)))


def cmd_wavepacket(args, params):
    if args.carrier_k is not None and args.energy is not None:
        raise ConfigError("give either --energy or --carrier-k, not both")
    carrier_k = 2 * math.pi / 3
    if args.carrier_k is not None:
        carrier_k = args.carrier_k
    elif args.energy is not None:
        mode = resolve_mode(Channel.A, args.energy, params)
        if not mode.is_propagating:
            raise ConfigError(f"carrier energy {args.energy} is not inside band a")
        carrier_k = mode.k
    cfg = WavepacketConfig(half_length=args.half_length, sigma=args.sigma, carrier_k=carrier_k,
                           center=args.center, dt=args.dt, t_end=args.t_end,
                           snapshot_stride=args.stride)
    record = evolve(params, cfg, backend=args.backend)
    with _output(args.output) as out:
        record.write_csv(out)
    deviation = compare_stationary(record, params, cfg)
    summary = f"{record.summary()} stationary_deviation={deviation:.3e}"
    print(summary, file=sys.stdout if args.output is not None else sys.stderr)
    _svg(args, [{"label": "", "x": list(record.times),
                 "curves": {n: list(getattr(record, n)) for n in
                            ("p_a_left", "p_a_right", "p_b_left", "p_b_right", "p_atom")}}],
         "wavepacket populations")


def cmd_reproduce(args, params):
    key = args.figure_id or args.figure
    if key is None:
        raise ConfigError("reproduce needs a figure id")
    if args.figure_id and args.figure and args.figure_id != args.figure:
        raise ConfigError("conflicting figure ids")
    with _output(args.output) as out:
        series = write_figure(key, out)
    _svg(args, series, FIGURES[key].description)


def cmd_validate(args, params):
    # random parameter sets unless the user pinned some
    report = validate(args.seed, args.samples, params if args.params_explicit else None)
    with _output(args.output) as out:
        report.write_csv(out)
    print(report.summary(), file=sys.stdout if args.output is not None else sys.stderr)
    return 0 if report.passed else 1


HANDLERS = {
    "modes": cmd_modes,
    "scatter": cmd_scatter,
    "sweep": cmd_sweep,
    "bound-states": cmd_bound_states,
    "wavepacket": cmd_wavepacket,
    "reproduce": cmd_reproduce,
    "validate": cmd_validate,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params, args.params_explicit = load_params(args)
        code = HANDLERS[args.command](args, params)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except RouterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
