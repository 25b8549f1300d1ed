"""Repeated hunts over a range of seeds, reporting time to a certified witness.

Examples (the last three are long jobs):

    python3 scripts/hunt_batch.py F4 3 --type 2A,~A2+A1,7N --seeds 0 8
    python3 scripts/hunt_batch.py E6 3 --type 2A,2A2+A1,7N --seeds 0 1
    python3 scripts/hunt_batch.py F4 5 --type 2A,3C,7N --seeds 0 1 --time-limit 36000
    python3 scripts/hunt_batch.py F4 8 --type A1+~A1,3C,7O --seeds 0 1 --time-limit 36000
    python3 scripts/hunt_batch.py E7 2 --type 4A1,A2A5,s(8/19) --seeds 0 1 --time-limit 86400
"""

import argparse
import time
from pathlib import Path

from hurwitz.chevgrp import default_cache_dir, group_for
from hurwitz.cli import default_kind
from hurwitz.search import SearchLimits, certificate_spec, certify_generation, hunt, make_target, verify_witness


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("family")
    ap.add_argument("q", type=int)
    ap.add_argument("--type", required=True)
    ap.add_argument("--kind")
    ap.add_argument("--seeds", type=int, nargs=2, default=[0, 4], metavar=("FIRST", "STOP"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--batch", type=int, default=384)
    ap.add_argument("--time-limit", type=float, default=3600)
    ap.add_argument("--out", default="witnesses")
    args = ap.parse_args()
    kind = args.kind or default_kind(args.family, args.q)
    ctx = group_for(args.family, args.q, kind, cache_dir=default_cache_dir())
    target = make_target(args.family, args.q, kind, args.type.split(","))
    limits = SearchLimits(batch=args.batch, time_limit=args.time_limit)
    for seed in range(*args.seeds):
        t0 = time.monotonic()
        out = hunt(ctx, target, seed=seed, limits=limits, workers=args.workers)
        if out.witness is None:
            print(f"seed {seed}: none after {out.elapsed:.0f} s, {out.pairs} pairs", flush=True)
            continue
        w = certify_generation(ctx.field, out.witness, certificate_spec(args.family, args.q))
        ok = verify_witness(w, ctx).ok
        path = Path(args.out) / f"{args.family}_{args.q}_seed{seed}.txt"
        w.write(path)
        print(f"seed {seed}: {w.status}, verify {'ok' if ok else 'FAILED'}, {time.monotonic() - t0:.0f} s, "
              f"{out.pairs} pairs -> {path}", flush=True)


if __name__ == "__main__":
    main()
