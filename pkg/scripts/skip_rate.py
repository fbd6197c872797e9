"""Classical vs quantum sweep: fraction of random runs flagged at chart folds
and the worst spin deviation on the runs that were not flagged."""

import argparse
from collections import Counter

import numpy as np

from sunspin import quantum
from sunspin.coherent import Group
from sunspin.dynamics import HamiltonianSpec, SingularPoint
from sunspin.observables import sample_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--dt", type=float, default=1e-4)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    for g in Group:
        worst, reasons = 0.0, Counter()
        for _ in range(args.runs):
            h = HamiltonianSpec.single(g, quantum.random_hermitian(g.dim, rng))
            p = sample_params(g, rng)
            try:
                c = quantum.compare(h, p, args.t_max, args.dt)
            except SingularPoint:
                reasons["singular start"] += 1
                continue
            if c.aborted:
                reasons[c.reason.split(":")[0]] += 1
                continue
            worst = max(worst, c.max_deviation)
        flagged = sum(reasons.values())
        print(f"{g.name}: flagged {flagged}/{args.runs}  max |dS| {worst:.2e}  {dict(reasons)}")


if __name__ == "__main__":
    main()
