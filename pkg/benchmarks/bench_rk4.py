"""Time the RK4 kernels on the default wavepacket lattice.

    python3 benchmarks/bench_rk4.py [--half-length 600] [--steps 200] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from photon_router_lab import SystemParams
from photon_router_lab._core import BACKENDS
from photon_router_lab.wavepacket import WavepacketConfig, initial_state


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--half-length", type=int, default=600)
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    params = SystemParams()
    cfg = WavepacketConfig(half_length=args.half_length,
                           sigma=min(30.0, args.half_length / 10)).resolved(params)
    psi0 = initial_state(params, cfg)
    kargs = (cfg.half_length, params.delta_a, params.delta_b, params.xi_a, params.xi_b,
             params.g_a, params.g_b, params.omega, 1.0, cfg.dt, args.steps)

    print(f"sites per chain: {2 * args.half_length + 1}, steps per run: {args.steps}")
    results, finals = {}, {}
    for name, kernel in sorted(BACKENDS.items()):
        def once():
            psi = psi0.copy()
            kernel.rk4_steps(psi, *kargs)
            finals[name] = psi
        best = min(timeit.repeat(once, number=1, repeat=args.repeat))
        results[name] = best
        print(f"{name:>9}: {best * 1e3:9.2f} ms  ({best / args.steps * 1e6:8.2f} us/step)")
    if len(results) == 2:
        gap = np.max(np.abs(finals["compiled"] - finals["python"]))
        print(f"speedup compiled/python: {results['python'] / results['compiled']:.1f}x, "
              f"max state difference {gap:.1e}")
    else:
        print("compiled kernel not built; only the NumPy fallback was timed")


if __name__ == "__main__":
    main()
