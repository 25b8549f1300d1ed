"""Fixed-space histograms of torus elements of order 2, 3 and 7.

    python3 scripts/torus_bounds.py F4 E6 E7 E8
"""

import argparse
import time

from hurwitz.rootsys import MINIMAL_HIGHEST_WEIGHT, build_root_system, torus_fixed_dims, weight_set


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("labels", nargs="*", default=["F4", "E6", "E7", "E8"])
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 3, 7])
    args = ap.parse_args()
    for label in args.labels:
        rs = build_root_system(label)
        ws = weight_set(rs, "M") if label in MINIMAL_HIGHEST_WEIGHT else None
        for m in args.orders:
            t0 = time.monotonic()
            h = torus_fixed_dims(rs, ws, m)
            print(h.report())
            print(f"# {time.monotonic() - t0:.2f} s\n")


if __name__ == "__main__":
    main()
