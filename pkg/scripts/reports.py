"""Write the closed-form compatibility report for every group as CSV."""

import argparse
from pathlib import Path

from sunspin import observables
from sunspin.coherent import Group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for g in Group:
        rep = observables.compatibility_report(g, n_samples=args.samples, seed=args.seed)
        path = args.out / f"{g.name.lower()}.csv"
        path.write_text(rep.to_csv_text())
        print(f"{g.name}: {len(rep.entries)} rows -> {path}")


if __name__ == "__main__":
    main()
