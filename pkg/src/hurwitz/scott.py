"""Admissibility of (2,3,7) class triples via Scott's inequality.

For a generating triple (x, y, z) with xyz = 1 and a module V with trivial
fixed space, d_x^V + d_y^V + d_z^V <= dim V.  This module enumerates the
class triples passing that inequality on the modules in scope, renders the
resulting table, and gives verdicts for E7 and E8 from lower bounds on d^L.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .classdata import (
    ClassRecord,
    UnsupportedQuery,
    condition_holds,
    describe_condition_in_n,
    load_lemmas,
    lookup,
    pretty_condition,
    prime_power,
    root_type,
)

log = logging.getLogger(__name__)

Module = Tuple[str, int]  # (kind, dim)

FULL_TABLE_FAMILIES = ("F4", "E6", "SE6", "2E6")
BOUND_FAMILIES = ("E7", "SE7", "E8")


class FamilyMismatch(ValueError):
    pass


# ---------------------------------------------------------------- modules
def modules_for(family: str, q: int, policy: str = "standard") -> List[Module]:
    """Modules on which Scott's inequality is applied.

    The adjoint module is used at full dimension in every characteristic.
    Under the ``standard`` policy the minimal module of E6 is used only in
    characteristic 3, for SE6 in odd characteristic, and for 2E6 when the
    twisted group has trivial centre.  The ``strict`` policy uses the minimal
    module whenever it is a representation of the group: E6 when 3 does not
    divide q - 1, SE6 always, 2E6 when 3 does not divide q + 1.
    """
    p, _ = prime_power(q)
    if family == "F4":
        return [("M'", 25) if p == 3 else ("M", 26), ("L", 52)]
    if family in ("E6", "SE6", "2E6"):
        if policy == "strict":
            use_m = {"E6": (q - 1) % 3 != 0, "SE6": True, "2E6": (q + 1) % 3 != 0}[family]
        elif policy == "standard":
            use_m = {"E6": p == 3, "SE6": p != 2, "2E6": (q + 1) % 3 != 0}[family]
        else:
            raise ValueError(f"unknown policy {policy!r}")
        return ([("M", 27)] if use_m else []) + [("L", 78)]
    if family in ("E7", "SE7"):
        return ([("M", 56)] if family == "SE7" or p == 2 else []) + [("L", 133)]
    if family == "E8":
        return [("L", 248)]
    raise UnsupportedQuery(f"unsupported family {family!r}")


# ------------------------------------------------------------------ check
_WARNED: set = set()


def _warn_skip(kind: str, labels: Tuple[str, ...]) -> None:
    for lab in labels:
        if (kind, lab) not in _WARNED:
            _WARNED.add((kind, lab))
            log.info("class %s has no value on %s; that module is skipped for it", lab, kind)


def scott_check(
    x: ClassRecord,
    y: ClassRecord,
    z: ClassRecord,
    modules: Sequence[Module],
    computed: bool = False,
) -> bool:
    """True iff d_x + d_y + d_z <= dim V on every module with all three values."""
    fams = {root_type(r.family) if r.family != "SE7" else "E7" for r in (x, y, z)}
    if len(fams) != 1:
        raise FamilyMismatch(f"records from different families: {sorted(fams)}")
    for kind, dim in modules:
        ds = [r.dim_on(kind, computed) for r in (x, y, z)]
        if any(d is None for d in ds):
            _warn_skip(kind, tuple(r.label for r, d in zip((x, y, z), ds) if d is None))
            continue
        if sum(ds) > dim:
            return False
    return True


@dataclass(frozen=True)
class TripleType:
    family: str
    q: int
    x: str
    y: str
    z: str
    sums: Tuple[Tuple[str, int, int], ...] = field(default=())  # (kind, sum, dim)

    @property
    def labels(self) -> Tuple[str, str, str]:
        return (self.x, self.y, self.z)


def _sums(x, y, z, modules, computed) -> Tuple[Tuple[str, int, int], ...]:
    out = []
    for kind, dim in modules:
        ds = [r.dim_on(kind, computed) for r in (x, y, z)]
        if all(d is not None for d in ds):
            out.append((kind, sum(ds), dim))
    return tuple(out)


def _candidates(family: str, q: int, check_existence: bool = True):
    return [lookup(family, q, o, check_existence) for o in (2, 3, 7)]


def enumerate_admissible(
    family: str,
    q: int,
    policy: str = "standard",
    computed: bool = False,
    modules: Optional[Sequence[Module]] = None,
    check_existence: bool = True,
) -> List[TripleType]:
    """All label triples existing at q that pass Scott's inequality."""
    if family not in FULL_TABLE_FAMILIES:
        raise UnsupportedQuery(f"{family} lacks complete class tables; use verdict()")
    mods = list(modules) if modules is not None else modules_for(family, q, policy)
    xs, ys, zs = _candidates(family, q, check_existence)
    out = []
    for x, y, z in itertools.product(xs, ys, zs):
        if scott_check(x, y, z, mods, computed):
            out.append(TripleType(family, q, x.label, y.label, z.label, _sums(x, y, z, mods, computed)))
    return out


# ---------------------------------------------------------------- verdict
@dataclass
class Verdict:
    family: str
    q: int
    status: str  # "possible", "impossible", "constrained"
    triples: List[TripleType] = field(default_factory=list)
    reason: str = ""
    constraints: Dict[str, object] = field(default_factory=dict)

    @property
    def possible(self) -> bool:
        return self.status != "impossible"

    def report(self) -> str:
        head = f"{self.family}({self.q}): {self.status}"
        if self.status == "impossible":
            return f"{head}\n{self.reason}"
        if self.status == "possible":
            rows = [f"  ({t.x}, {t.y}, {t.z})  " + ", ".join(f"{k}: {s} <= {d}" for k, s, d in t.sums)
                    for t in self.triples]
            return "\n".join([head] + rows)
        lines = [head]
        for k, v in self.constraints.items():
            lines.append(f"  {k}: {v}")
        if self.reason:
            lines.append(f"  {self.reason}")
        return "\n".join(lines)


def _impossibility_reason(family: str, q: int, policy: str, computed: bool) -> str:
    p, _ = prime_power(q)
    twisted = family == "2E6"
    mods = modules_for(family, q, policy)
    # triples blocked only by class existence
    unconditional = enumerate_admissible(family, q, policy, computed, check_existence=False)
    if unconditional:
        missing = []
        for t in unconditional:
            for order, label in zip((2, 3, 7), t.labels):
                rec = next(r for r in lookup(family, q, order, False) if r.label == label)
                if not condition_holds(rec.cond, q, twisted) and rec not in missing:
                    missing.append(rec)
        names = ", ".join(r.label for r in missing)
        why = "; ".join(
            f"{r.label} requires {pretty_condition(r.cond)} ({describe_condition_in_n(r.cond, p)})" for r in missing
        )
        return f"not a Hurwitz group (no {names} class): {why}"
    # one module rules out every z that passes the others
    xs, ys, zs = _candidates(family, q)
    for kind, dim in mods:
        others = [m for m in mods if m[0] != kind]
        bound = None
        cands = []
        for x, y in itertools.product(xs, ys):
            passing = [z for z in zs if scott_check(x, y, z, others, computed)]
            dx, dy = x.dim_on(kind, computed), y.dim_on(kind, computed)
            if passing and dx is not None and dy is not None:
                b = dim - dx - dy
                bound = b if bound is None else max(bound, b)
                cands.extend(passing)
        if bound is not None and cands and all((z.dim_on(kind, computed) or 0) > bound for z in cands):
            return (f"not a Hurwitz group: requires d_z^{kind} <= {bound}, "
                    f"but d_z^{kind} >= {bound + 1} for every candidate z")
    return "not a Hurwitz group: no class triple satisfies the inequality"


def _lemma_bounds(family: str, p: int) -> Dict[str, int]:
    fam = "E7" if family == "SE7" else family
    for lem in load_lemmas():
        if lem.family == fam and lem.applies(p):
            return {k: int(lem.get(k)) for k in ("x", "y", "z")}
    raise UnsupportedQuery(f"no lower bounds recorded for {family} in characteristic {p}")


def upper_bounds(family: str, q: int) -> Dict[str, int]:
    """Upper bounds on d^L for x, y, z from the lower bounds on the other two."""
    p, _ = prime_power(q)
    lo = _lemma_bounds(family, p)
    dim = dict(modules_for(family, q))["L"]
    return {
        "x": dim - lo["y"] - lo["z"],
        "y": dim - lo["x"] - lo["z"],
        "z": dim - lo["x"] - lo["y"],
    }


@lru_cache(maxsize=None)
def _torus_pairs(label: str, m: int, with_m: bool) -> Tuple[Tuple[int, int], ...]:
    from .rootsys import build_root_system, torus_fixed_dims, weight_set

    rs = build_root_system(label)
    hist = torus_fixed_dims(rs, weight_set(rs, "M") if with_m else None, m)
    ident = hist.identity
    return tuple(k for k in sorted(hist.counts) if k != ident)


@dataclass(frozen=True)
class _Cls:
    """A class value for the bound engine: a table record or a torus pair."""
    label: str
    dM: Optional[int]
    dL: int


def _classes(family: str, q: int, order: int, use_m: bool) -> List[_Cls]:
    p, _ = prime_power(q)
    recs = lookup(family, q, order)
    out = [_Cls(r.label, r.dM, r.dL) for r in recs]
    if family == "SE7" and order == 2:
        out = [c for c in out if c.label.startswith("A1D6/")]
    if p != order and order == 7:
        # semisimple elements of order 7 are not tabulated: use torus values
        label = "E7" if family in ("E7", "SE7") else family
        for dm, dl in _torus_pairs(label, 7, use_m):
            out.append(_Cls(f"s({dm}/{dl})" if use_m else f"s({dl})", dm if use_m else None, dl))
    return out


def _bound_verdict(family: str, q: int) -> Verdict:
    p, _ = prime_power(q)
    if family == "SE7" and p == 2:
        raise UnsupportedQuery("SE7 coincides with E7 in characteristic 2")
    mods = modules_for(family, q)
    use_m = any(k == "M" for k, _ in mods)
    ub = upper_bounds(family, q)
    cls = {o: _classes(family, q, o, use_m) for o in (2, 3, 7)}
    filt = {
        "x": [c for c in cls[2] if c.dL <= ub["x"]],
        "y": [c for c in cls[3] if c.dL <= ub["y"]],
        "z": [c for c in cls[7] if c.dL <= ub["z"]],
    }
    cons: Dict[str, object] = {"bounds": f"d_x^L <= {ub['x']}, d_y^L <= {ub['y']}, d_z^L <= {ub['z']}"}
    reason = ""
    if use_m or family == "SE7":
        # joint check on all modules in scope
        triples = []
        for x, y, z in itertools.product(filt["x"], filt["y"], filt["z"]):
            ok = True
            for kind, dim in mods:
                ds = [getattr(c, "d" + kind) for c in (x, y, z)]
                if None not in ds and sum(ds) > dim:
                    ok = False
            if ok:
                triples.append((x, y, z))
        for key, k in (("x", 0), ("y", 1), ("z", 2)):
            filt[key] = [c for c in filt[key] if any(t[k] == c for t in triples)]
        cons["triples"] = [f"({x.label}, {y.label}, {z.label})" for x, y, z in triples]
        reason = "joint check on " + ", ".join(f"{k} ({d})" for k, d in mods)
        if not triples:
            return Verdict(family, q, "impossible", reason="not a Hurwitz group: no triple passes " + reason[12:])
    for key in ("x", "y", "z"):
        cons[key] = [c.label for c in filt[key]]
    return Verdict(family, q, "constrained", reason=reason, constraints=cons)


def verdict(family: str, q: int, policy: str = "standard", computed: bool = False) -> Verdict:
    if family in BOUND_FAMILIES:
        return _bound_verdict(family, q)
    triples = enumerate_admissible(family, q, policy, computed)
    if triples:
        return Verdict(family, q, "possible", triples)
    return Verdict(family, q, "impossible", reason=_impossibility_reason(family, q, policy, computed))


# -------------------------------------------------------------- rendering
@dataclass(frozen=True)
class TableRow:
    family: str
    qcond: str  # e.g. "2^{3n}", "3^n", "p^n"
    x: str
    y: str
    z: Tuple[str, ...]

    def line(self) -> str:
        return f"{self.family}|{self.qcond}|{self.x}|{self.y}|{','.join(self.z)}"


def _period(p: int) -> int:
    per = 1
    for k in (3, 7):
        if p % k:
            per = math.lcm(per, int(sympy.n_order(p, k)))
    return per


def _generic_primes() -> List[int]:
    """Primes p >= 5, p != 7, one per unit residue class mod 21."""
    need = {r for r in range(21) if math.gcd(r, 21) == 1}
    out = []
    p = 5
    while need:
        if p != 7 and p % 21 in need:
            need.discard(p % 21)
            out.append(p)
        p = int(sympy.nextprime(p))
    return out


def _n_label(p: str, ns: Sequence[int], period: int) -> str:
    ns = sorted(set(ns))
    if len(ns) == period:
        return f"{p}^n"
    d = ns[0]
    if ns == list(range(d, period + 1, d)) and period % d == 0:
        return f"{p}^{{{d}n}}"
    return f"{p}^n, n mod {period} in {{{','.join(map(str, ns))}}}"


def _order_key(family: str) -> Dict[Tuple[int, str], int]:
    from .classdata import load_classes

    fams = ("E6",) if family in ("SE6", "2E6") else (family,)
    recs = [r for r in load_classes() if r.family in fams]
    return {(r.order, r.label): k for k, r in enumerate(recs)}


def table_rows(family: str, policy: str = "standard", computed: bool = False) -> List[TableRow]:
    """Rows of the admissible-triple table for one family, all q."""
    key = _order_key(family)
    rows: List[TableRow] = []
    # the simply connected cover coincides with E6 in characteristic 3
    chars: List[object] = [2, 3, 7, "p"] if family != "SE6" else [2, 7, "p"]
    for ch in chars:
        groups: Dict[Tuple[str, str], set] = {}
        ns: Dict[Tuple[str, str], set] = {}
        if ch == "p":
            qs = [(p, 1) for p in _generic_primes()]
            period = 1
        else:
            period = _period(ch)
            qs = [(ch**n, n) for n in range(1, period + 1)]
        for q, n in qs:
            for t in enumerate_admissible(family, q, policy, computed):
                groups.setdefault((t.x, t.y), set()).add(t.z)
                ns.setdefault((t.x, t.y), set()).add(n)
        for (x, y), zs in sorted(groups.items(), key=lambda kv: (key[(2, kv[0][0])], key[(3, kv[0][1])])):
            qcond = "p^n" if ch == "p" else _n_label(str(ch), ns[(x, y)], period)
            zsorted = tuple(sorted(zs, key=lambda z: key[(7, z)]))
            rows.append(TableRow(family, qcond, x, y, zsorted))
    return rows


def render_table(families: Sequence[str] = ("F4", "E6", "SE6"), policy: str = "standard",
                 computed: bool = False, lines: bool = False) -> str:
    rows = [r for f in families for r in table_rows(f, policy, computed)]
    if lines:
        return "\n".join(r.line() for r in rows)
    head = ("G", "x", "y", "z")
    cells = [(f"{r.family}({r.qcond})", r.x, r.y, ", ".join(r.z)) for r in rows]
    w = [max(len(c[i]) for c in cells + [head]) for i in range(4)]
    out = ["  ".join(h.ljust(w[i]) for i, h in enumerate(head)), "  ".join("-" * k for k in w)]
    out += ["  ".join(c[i].ljust(w[i]) for i in range(4)) for c in cells]
    return "\n".join(out)
