"""Flagged runs under dt refinement: a genuine chart fold stays flagged at
roughly the same time however small the step."""

import argparse

import numpy as np

from sunspin import dynamics, quantum
from sunspin.coherent import Group
from sunspin.dynamics import HamiltonianSpec, SingularPoint
from sunspin.observables import sample_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="SU4")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--runs", type=int, default=5)
    args = ap.parse_args()

    g = Group[args.group]
    rng = np.random.default_rng(args.seed)
    shown = 0
    while shown < args.runs:
        h = HamiltonianSpec.single(g, quantum.random_hermitian(g.dim, rng))
        p = sample_params(g, rng)
        try:
            tr = dynamics.integrate(g, h, p, 1e-3, 1000)
        except SingularPoint:
            continue
        if not tr.aborted:
            continue
        shown += 1
        row = []
        for dt in (1e-3, 1e-4, 1e-5):
            tr = dynamics.integrate(g, h, p, dt, int(round(1.0 / dt)))
            row.append(f"dt={dt:.0e}: stop t={tr.times[-1]:.5f}")
        print(" | ".join(row) + f" | {tr.reason}")


if __name__ == "__main__":
    main()
