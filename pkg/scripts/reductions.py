"""Group reduction diagnostic: restricted larger-group flow vs the smaller
group's own flow, with the singular values of the restricted symplectic form."""

import argparse

import numpy as np

from sunspin import dynamics
from sunspin.observables import sample_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=50)
    ap.add_argument("--seed", type=int, default=9)
    args = ap.parse_args()

    for big, small in (("SU3", "SU2"), ("SU4", "SU3"), ("SU5", "SU4")):
        rep = dynamics.reduce_check(big, small, args.points, seed=args.seed)
        print(f"{big}->{small}: max deviation {rep.max_deviation:.2e}, "
              f"restricted form singular at {rep.n_larger_singular}/{rep.n_points} points")

    # the SU5 embedding sets g = m = 0, which makes the gamma and beta factors
    # adjacent rotations about z, so their tangents coincide
    rng = np.random.default_rng(args.seed)
    p4 = sample_params("SU4", rng)
    p5 = dynamics.embed("SU5", "SU4", p4)
    omega = dynamics.symplectic_form("SU5", p5)
    sv = np.linalg.svd(omega, compute_uv=False)
    print("SU5 embedded point", np.round(p5.values, 4))
    print("singular values of the SU5 form:", " ".join(f"{s:.2e}" for s in sv))


if __name__ == "__main__":
    main()
