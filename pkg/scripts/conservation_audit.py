#!/usr/bin/env python3
"""Continuity-equation audit: residual vs time step for Gaussian pulses.

Halving the centered-difference step must quarter the residual; the table
makes the second-order signature visible and flags any deviation.
"""

import argparse

import numpy as np

from photonflux import KGrid1D, continuity_residual, make_gaussian_state


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4096)
    parser.add_argument("--k0-frac", type=float, default=0.3)
    parser.add_argument("--sigma-bins", type=float, default=5.0)
    parser.add_argument("--levels", type=int, default=6)
    args = parser.parse_args()

    grid = KGrid1D(n=args.n, dk=1.0)
    state = make_gaussian_state(args.k0_frac * grid.k_max, args.sigma_bins * grid.dk, grid)

    print(f"grid N={grid.n} dk={grid.dk} dx={grid.dx:.3e}")
    print(f"{'dt':>14} {'residual':>14} {'ratio':>8}")
    dt = grid.dx / 8.0
    previous = None
    for _ in range(args.levels):
        res = continuity_residual(state, 0.0, dt)
        ratio = f"{previous / res:8.3f}" if previous else "      --"
        print(f"{dt:14.6e} {res:14.6e} {ratio}")
        previous = res
        dt /= 2.0


if __name__ == "__main__":
    main()
