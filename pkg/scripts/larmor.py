"""Larmor precession of a spin-1/2 coherent state in a field along z."""

import argparse

import numpy as np

from sunspin import dynamics
from sunspin.coherent import CoherentParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--field", type=float, default=1.0)
    ap.add_argument("--t-max", type=float, default=10.0)
    ap.add_argument("--dt", type=float, default=1e-3)
    args = ap.parse_args()

    h = dynamics.field_hamiltonian("SU2", (0, 0, args.field))
    steps = int(round(args.t_max / args.dt))
    tr = dynamics.integrate("SU2", h, CoherentParams("SU2", (args.theta, 0.0)), args.dt, steps)
    freq = tr.points[-1, 0, 1] / tr.times[-1]
    drift = np.max(np.abs(tr.energies - tr.energies[0])) / abs(tr.energies[0])
    print(f"phi(t)/t = {freq:.15f}  expected {args.field:.15f}")
    print(f"theta range [{tr.points[:, 0, 0].min():.15f}, {tr.points[:, 0, 0].max():.15f}]")
    print(f"relative energy drift {drift:.2e}")


if __name__ == "__main__":
    main()
