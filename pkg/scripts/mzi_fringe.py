#!/usr/bin/env python3
"""Mach-Zehnder fringe scan through the netlist simulator.

Sweeps the arm phase and prints detector probabilities against cos^2(phi/2),
optionally with seeded counting statistics.
"""

import argparse

import numpy as np

from photonflux import (
    KGrid1D,
    mach_zehnder_netlist,
    make_gaussian_state,
    run_circuit,
    sample_outcomes,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=13)
    parser.add_argument("--samples", type=int, default=0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    grid = KGrid1D(n=256, dk=1.0)
    src = make_gaussian_state(60.0, 6.0, grid)

    header = f"{'phi':>8} {'bright':>12} {'dark':>12} {'cos^2':>12}"
    if args.samples:
        header += f" {'bright counts':>14}"
    print(header)
    for phi in np.linspace(0.0, 2.0 * np.pi, args.points):
        pulse, _ = run_circuit(mach_zehnder_netlist(src, phi))
        row = (
            f"{phi:8.4f} {pulse.probability('d_bright'):12.8f} "
            f"{pulse.probability('d_dark'):12.8f} {np.cos(phi / 2.0) ** 2:12.8f}"
        )
        if args.samples:
            counts = sample_outcomes(pulse, args.seed, args.samples)
            row += f" {counts.get('d_bright', 0):14d}"
        print(row)


if __name__ == "__main__":
    main()
