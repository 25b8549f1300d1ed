"""Command-line interface.

Exit codes: 0 success (certified witness), 10 candidate only, 20 timeout,
2 usage error, 3 refused (target not admissible), 1 failed verification.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3
EXIT_CANDIDATE = 10
EXIT_TIMEOUT = 20


@dataclass
class RunConfig:
    command: str
    family: str = ""
    q: int = 0
    kind: str = ""
    seed: int = 0
    workers: int = 1
    batch: int = 256
    rounds: int = 100_000
    time_limit: Optional[float] = None
    cert_tries: int = 3000
    cache: Optional[str] = None
    out: Optional[str] = None


def default_kind(family: str, q: int) -> str:
    from .classdata import prime_power

    p, _ = prime_power(q)
    return {
        "F4": "M'" if p == 3 else "M",
        "E6": "M",
        "SE6": "M",
        "E7": "M",
        "E8": "L",
        "A1": "L",
        "GL3": "natural",
    }.get(family, "M")


def _parse_type(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    labels = [t.strip() for t in text.split(",")]
    if len(labels) != 3 or not all(labels):
        raise argparse.ArgumentTypeError("--type takes three comma-separated class labels")
    return labels


# ----------------------------------------------------------------- commands
def cmd_tables(args) -> int:
    from .scott import render_table

    print(render_table(args.families, policy=args.policy, computed=args.computed, lines=args.lines))
    return EXIT_OK


def cmd_admissible(args) -> int:
    from .scott import verdict

    v = verdict(args.family, args.q, policy=args.policy, computed=args.computed)
    if args.lines and v.status == "possible":
        for t in v.triples:
            print(f"{t.family}|{t.q}|{t.x}|{t.y}|{t.z}")
    else:
        print(v.report())
    return EXIT_OK


def cmd_torus_bounds(args) -> int:
    from .rootsys import build_root_system, torus_fixed_dims, weight_set, MINIMAL_HIGHEST_WEIGHT

    label = {"SE6": "E6", "SE7": "E7", "2E6": "E6"}.get(args.family, args.family)
    rs = build_root_system(label)
    ws = weight_set(rs, "M") if label in MINIMAL_HIGHEST_WEIGHT else None
    t0 = time.monotonic()
    hist = torus_fixed_dims(rs, ws, args.order)
    print(hist.report())
    print(f"# {args.order}^{rs.rank} vectors in {time.monotonic() - t0:.1f} s")
    return EXIT_OK


def cmd_build(args) -> int:
    from .chevgrp import default_cache_dir, group_for

    cache = Path(args.cache) if args.cache else default_cache_dir()
    kind = args.kind or default_kind(args.family, args.q)
    t0 = time.monotonic()
    ctx = group_for(args.family, args.q, kind, cache_dir=cache, seed=args.seed)
    print(f"{ctx.family}({ctx.q}) on {ctx.kind}: dimension {ctx.dim}, {len(ctx.gens)} generators, "
          f"{time.monotonic() - t0:.1f} s")
    for k, v in sorted(ctx.provenance.items()):
        print(f"  {k}: {v}")
    return EXIT_OK


def cmd_hunt(args) -> int:
    from .chevgrp import default_cache_dir, group_for
    from .classdata import UnsupportedQuery
    from .search import (
        BudgetExhausted,
        NotAdmissible,
        SearchLimits,
        certificate_spec,
        certify_generation,
        hunt,
        make_target,
        verify_witness,
    )

    cfg = RunConfig("hunt", args.family, args.q, args.kind or default_kind(args.family, args.q), args.seed,
                    args.workers, args.batch, args.rounds, args.time_limit, args.cert_tries, args.cache, args.out)
    try:
        target = make_target(cfg.family, cfg.q, cfg.kind, args.type)
    except (NotAdmissible, UnsupportedQuery) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    cache = Path(cfg.cache) if cfg.cache else default_cache_dir()
    ctx = group_for(cfg.family, cfg.q, cfg.kind, cache_dir=cache)
    limits = SearchLimits(rounds=cfg.rounds, batch=cfg.batch, time_limit=cfg.time_limit, cert_tries=cfg.cert_tries)
    print(f"hunting {cfg.family}({cfg.q}) on {cfg.kind} (dim {ctx.dim}), type "
          f"{','.join(target.labels) if target.labels else 'any'}, seed {cfg.seed}, {cfg.workers} worker(s)")
    try:
        out = hunt(ctx, target, seed=cfg.seed, limits=limits, workers=cfg.workers)
    except BudgetExhausted as exc:
        print(f"timeout: {exc}")
        return EXIT_TIMEOUT
    print(f"screened {out.pairs} pairs in {out.elapsed:.1f} s ({out.screened_hits} screen hits)")
    if out.witness is None:
        why = "time limit" if out.timed_out else "round limit"
        print(f"timeout: no triple found before the {why} (this is not a disproof)")
        return EXIT_TIMEOUT
    w = certify_generation(ctx.field, out.witness, certificate_spec(cfg.family, cfg.q), tries=cfg.cert_tries)
    report = verify_witness(w, ctx)
    if not report.ok:
        print(report.render(), file=sys.stderr)
        print("internal error: produced witness fails verification; nothing written", file=sys.stderr)
        return EXIT_FAILED
    path = Path(cfg.out) if cfg.out else Path(f"witness_{cfg.family}_{cfg.q}_seed{cfg.seed}.txt")
    w.write(path)
    print(f"{w.status} witness (worker {w.worker}, round {w.round}) written to {path}")
    if w.certificates:
        print("certificates: " + ", ".join(str(k) for k, _ in w.certificates))
    return EXIT_OK if w.status == "certified" else EXIT_CANDIDATE


def cmd_verify(args) -> int:
    from .search import WitnessFormatError, load_witness, verify_witness

    path = Path(args.path)
    if not path.exists():
        print(f"no such file: {path}", file=sys.stderr)
        return EXIT_USAGE
    try:
        w = load_witness(path.read_text())
    except WitnessFormatError as exc:
        print(f"FAIL  parse witness file: {exc}")
        return EXIT_FAILED
    ctx = None
    if args.check_group:
        from .chevgrp import default_cache_dir, group_for

        cache = Path(args.cache) if args.cache else default_cache_dir()
        ctx = group_for(w.family, w.q, w.kind, cache_dir=cache)
    report = verify_witness(w, ctx)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_FAILED


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hurwitz", description="Hurwitz generation of exceptional groups")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="render the table of admissible triples")
    p.add_argument("--families", nargs="+", default=["F4", "E6", "SE6"])
    p.add_argument("--policy", choices=["standard", "strict"], default="standard")
    p.add_argument("--computed", action="store_true", help="use computed reduced-module values")
    p.add_argument("--lines", action="store_true", help="machine-readable family|q|x|y|z lines")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("admissible", help="admissible triples or verdict for one group")
    p.add_argument("--family", required=True, choices=["F4", "E6", "SE6", "2E6", "E7", "SE7", "E8"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--policy", choices=["standard", "strict"], default="standard")
    p.add_argument("--computed", action="store_true")
    p.add_argument("--lines", action="store_true")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("torus-bounds", help="fixed-space histogram over torus elements")
    p.add_argument("--family", required=True, choices=["G2", "F4", "E6", "SE6", "E7", "SE7", "E8"])
    p.add_argument("--order", type=int, required=True, choices=[2, 3, 7])
    p.set_defaults(func=cmd_torus_bounds)

    p = sub.add_parser("build", help="construct (and cache) a group on a module")
    p.add_argument("--family", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--kind")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("hunt", help="search for a Hurwitz generating triple")
    p.add_argument("--family", required=True, choices=["F4", "E6", "SE6", "E7", "E8", "A1", "GL3"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--kind")
    p.add_argument("--type", type=_parse_type, help="x,y,z class labels, e.g. 2A,~A2+A1,7N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--batch", type=int, default=256, help="conjugates per side per round")
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--time-limit", type=float, help="seconds per worker")
    p.add_argument("--cert-tries", type=int, default=3000)
    p.add_argument("--cache", help="group cache directory (default: $HURWITZ_CACHE)")
    p.add_argument("--out", help="witness output path")
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("verify", help="recheck a witness file")
    p.add_argument("path")
    p.add_argument("--check-group", action="store_true", help="also rebuild the group and compare its hash")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    from .classdata import UnsupportedQuery

    try:
        return args.func(args)
    except UnsupportedQuery as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
