"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line (printed, and repeated in the terminal
summary) before asserting.  Long budgets are configurable:

    HURWITZ_F43_BUDGET   seconds for the F4(3) hunt (default 1800)
    HURWITZ_F43_SEED     seed for the F4(3) hunt (default 1)
    HURWITZ_STRETCH=1    enable the E6(3) hunt (criterion 8)
"""

import os
import time
from pathlib import Path

import pytest

from conftest import report
from hurwitz.chevgrp import chevalley_group, group_for, load_group, module_of
from hurwitz.classdata import load_classes
from hurwitz.meataxe import ModuleAction, is_irreducible
from hurwitz.rootsys import build_root_system, torus_fixed_dims, weight_set
from hurwitz.scott import render_table, verdict
from hurwitz.search import (
    SearchLimits,
    certificate_spec,
    certify_generation,
    group_hash,
    hunt,
    load_witness,
    make_target,
    verify_witness,
)

GOLDEN = Path(__file__).parent / "golden" / "table1.txt"


def _hunt_certified(family, q, kind, labels, seed, limits, workers=1, cache=None):
    ctx = group_for(family, q, kind, cache_dir=cache)
    target = make_target(family, q, kind, labels)
    out = hunt(ctx, target, seed=seed, limits=limits, workers=workers)
    if out.witness is None:
        return ctx, out, None
    w = certify_generation(ctx.field, out.witness, certificate_spec(family, q), tries=limits.cert_tries)
    return ctx, out, w


# ------------------------------------------------------------------ 1
def test_c01_table_reproduction():
    t0 = time.monotonic()
    got = render_table(("F4", "E6", "SE6"), lines=True).strip().splitlines()
    want = GOLDEN.read_text().strip().splitlines()
    dt = time.monotonic() - t0
    ok = got == want and dt < 1.0
    report(1, "admissible-triple table matches the golden file", ok, f"{len(got)} rows, {dt:.2f} s")
    assert got == want
    assert dt < 1.0


# ------------------------------------------------------------------ 2
def test_c02_negative_verdicts():
    t0 = time.monotonic()
    cases = {
        ("F4", 2): ("no 7O class", "3 | n"),
        ("F4", 4): ("no 7O class", "3 | n"),
        ("SE6", 7): ("d_z^M >= 4",),
        ("2E6", 7): ("d_z^M >= 4",),
    }
    bad = []
    for (fam, q), needles in cases.items():
        v = verdict(fam, q)
        if v.status != "impossible" or not all(s in v.reason for s in needles):
            bad.append(f"{fam}({q}): {v.status} {v.reason!r}")
    dt = time.monotonic() - t0
    ok = not bad and dt < 1.0
    report(2, "F4(2), F4(4), SE6(7), 2E6(7) impossible with reasons", ok, "; ".join(bad) or f"{dt:.2f} s")
    assert not bad
    assert dt < 1.0


# ------------------------------------------------------------------ 3
def test_c03_torus_minima():
    res = {}
    for label, want, limit in (("E7", 19, 10.0), ("E8", 36, 300.0)):
        t0 = time.monotonic()
        h = torus_fixed_dims(build_root_system(label), None, 7)
        res[label] = (h.min_dL, want, time.monotonic() - t0, limit)
    ok = all(got == want and dt < lim for got, want, dt, lim in res.values())
    detail = ", ".join(f"{k}: min d^L={g} in {dt:.1f} s" for k, (g, _, dt, _) in res.items())
    report(3, "order-7 torus minima of d^L are 19 (E7) and 36 (E8)", ok, detail)
    assert ok


# ------------------------------------------------------------------ 4
def test_c04_semisimple_cross_check():
    t0 = time.monotonic()
    hist = {}
    for label in ("F4", "E6"):
        rs = build_root_system(label)
        ws = weight_set(rs, "M")
        for m in (2, 3, 7):
            hist[(label, m)] = torus_fixed_dims(rs, ws, m)
    missing, checked = [], 0
    for r in load_classes():
        if r.family in ("F4", "E6") and not r.unipotent and r.dM is not None and r.dL is not None:
            checked += 1
            if not hist[(r.family, r.order)].attains(r.dM, r.dL):
                missing.append(f"{r.family} {r.label} ({r.dM},{r.dL})")
    named = {("F4", 2): (14, 24), ("F4", 2, "B"): (10, 36), ("F4", 3): (8, 16), ("F4", 7): (2, 10),
             ("E6", 2): (15, 38), ("E6", 3): (9, 24), ("E6", 7): (3, 12)}
    for key, pair in named.items():
        if not hist[key[:2]].attains(*pair):
            missing.append(f"{key} {pair}")
    dt = time.monotonic() - t0
    ok = not missing and dt < 60
    report(4, "every semisimple F4/E6 record is attained by a torus vector", ok,
           f"{checked} records, {dt:.1f} s" + (f"; missing {missing}" if missing else ""))
    assert not missing
    assert dt < 60


# ------------------------------------------------------------------ 5
def test_c05_module_splitting():
    out, ok = [], True
    for fam, q, kind, want in (("F4", 3, "M", {1, 25}), ("F4", 2, "L", {26}), ("E6", 3, "L", {1, 77})):
        t0 = time.monotonic()
        sub = module_of(chevalley_group(fam, q, kind), kind + "'")
        a, b = sub.provenance["reduction"].split(" of ")[1].split("+")
        dims = {int(a), int(b)}
        good = dims == want and int(a) + int(b) == {"M": 26, "L": 52 if fam == "F4" else 78}[kind]
        good = good and time.monotonic() - t0 < 60
        ok &= good
        out.append(f"{fam}({q}) {kind}: {a}+{b}")
    mp = load_group("F4", 3, "M'")
    irr = is_irreducible(ModuleAction(mp.field, [g.a for g in mp.gens]))
    ok &= irr.irreducible and mp.dim == 25
    out.append(f"F4(3) M' dim {mp.dim} {irr.status}")
    report(5, "module splittings and irreducible 25-dim quotient", ok, "; ".join(out))
    assert ok


# ------------------------------------------------------------------ 6
def test_c06_smoke_search():
    t0 = time.monotonic()
    lim = SearchLimits(rounds=200, batch=16)
    notes, ok = [], True
    for fam, q, kind in (("GL3", 2, "natural"), ("A1", 7, "L")):
        ctx, out, w = _hunt_certified(fam, q, kind, None, seed=3, limits=lim)
        _, _, w2 = _hunt_certified(fam, q, kind, None, seed=3, limits=lim)
        good = (w is not None and w.status == "certified" and w.closure == 168
                and verify_witness(w, ctx).ok and w2 is not None and w.dumps() == w2.dumps())
        ok &= good
        notes.append(f"{fam}({q}) {'certified |<x,z>|=%s' % (w.closure if w else None)}")
    dt = time.monotonic() - t0
    ok &= dt < 5
    report(6, "smoke hunt on L2(7) finds a certified witness of closure 168", ok, "; ".join(notes) + f", {dt:.1f} s")
    assert ok


# ------------------------------------------------------------------ 7
def test_c07_f4_3_witness(cache_dir):
    budget = float(os.environ.get("HURWITZ_F43_BUDGET", "1800"))
    seed = int(os.environ.get("HURWITZ_F43_SEED", "1"))
    lim = SearchLimits(batch=384, time_limit=budget)
    ctx, out, w = _hunt_certified("F4", 3, "M'", ["2A", "~A2+A1", "7N"], seed, lim, cache=cache_dir)
    if w is None:
        report(7, "F4(3) witness (2A, ~A2+A1, 7N) with orders 40, 82, 73", False,
               f"no triple in {out.elapsed:.0f} s ({out.pairs} pairs), seed {seed}")
        pytest.fail("no witness within budget")
    rep = verify_witness(w, ctx)
    orders = [k for k, _ in w.certificates]
    ok = rep.ok and w.status == "certified" and orders == [40, 82, 73]
    report(7, "F4(3) witness (2A, ~A2+A1, 7N) with orders 40, 82, 73", ok,
           f"seed {seed}, {out.elapsed:.0f} s, {out.pairs} pairs, certificates {orders}, "
           f"{len(rep.failures())} verify failures")
    assert ok, rep.render()


# ------------------------------------------------------------------ 8
@pytest.mark.stretch
def test_c08_e6_3_witness(cache_dir):
    if os.environ.get("HURWITZ_STRETCH") != "1":
        # not attained here; recorded as failing rather than silently absent
        report(8, "E6(3) witness (2A, 2A2+A1, 7N)", False, "not run; set HURWITZ_STRETCH=1")
        pytest.skip("stretch run; set HURWITZ_STRETCH=1")
    budget = float(os.environ.get("HURWITZ_E63_BUDGET", "3600"))
    lim = SearchLimits(batch=256, time_limit=budget)
    ctx, out, w = _hunt_certified("E6", 3, "M", ["2A", "2A2+A1", "7N"], 0, lim, cache=cache_dir)
    if w is None:
        report(8, "E6(3) witness (2A, 2A2+A1, 7N)", False, f"no triple in {out.elapsed:.0f} s")
        pytest.fail("no witness within budget")
    rep = verify_witness(w, ctx)
    ok = rep.ok and w.status == "certified"
    report(8, "E6(3) witness (2A, 2A2+A1, 7N)", ok, f"certificates {[k for k, _ in w.certificates]}")
    assert ok, rep.render()


# ------------------------------------------------------------------ 9
def test_c09_scott_inside_verify():
    lim = SearchLimits(rounds=200, batch=16)
    bad, n = [], 0
    witnesses = []
    for seed in range(4):
        for fam, q, kind in (("GL3", 2, "natural"), ("A1", 7, "L")):
            ctx, _, w = _hunt_certified(fam, q, kind, None, seed, lim)
            witnesses.append((w, ctx))
    stored = Path(__file__).resolve().parents[1] / "witnesses"
    for path in sorted(stored.glob("*.txt")):
        witnesses.append((load_witness(path.read_text()), None))
    for w, ctx in witnesses:
        n += 1
        rep = verify_witness(w, ctx)
        scott = [c for c in rep.checks if c.name.startswith("Scott inequality")]
        if len(scott) != 1 or not scott[0].ok or not rep.ok:
            bad.append(f"{w.family}({w.q}) seed {w.seed}")
    report(9, "Scott inequality holds and is checked for every witness", not bad, f"{n} witnesses" + (f"; {bad}" if bad else ""))
    assert not bad


# ------------------------------------------------------------------ 10
def test_c10_replay_determinism(cache_dir):
    lim = SearchLimits(rounds=200, batch=16)
    same = []
    for fam, q, kind in (("GL3", 2, "natural"), ("A1", 7, "L")):
        for workers in (1, 2):
            runs = [_hunt_certified(fam, q, kind, None, 11, lim, workers=workers, cache=cache_dir)[2] for _ in range(2)]
            same.append(all(r is not None for r in runs) and runs[0].dumps() == runs[1].dumps())
    ok = all(same)
    report(10, "identical seed and limits give byte-identical witnesses", ok, f"{sum(same)}/{len(same)} pairs identical")
    assert ok
