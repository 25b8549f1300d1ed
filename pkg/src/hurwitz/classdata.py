"""Class tables: fixed-space dimensions of elements of orders 2, 3 and 7.

The data file ``classes.dat`` carries a sha256 footer over everything above
it; the loader refuses a file whose checksum does not match.
"""

from __future__ import annotations

import hashlib
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

log = logging.getLogger(__name__)

#: families accepted by lookup and the table rows they read
FAMILY_ROWS = {
    "F4": ("F4",),
    "E6": ("E6",),
    "SE6": ("E6",),
    "2E6": ("E6",),
    "E7": ("E7",),
    "SE7": ("E7", "SE7"),
    "E8": ("E8",),
}

#: dimensions of the modules, including the reduced ones
MODULE_DIMS = {
    ("F4", "M"): 26, ("F4", "M'"): 25, ("F4", "L"): 52, ("F4", "L'"): 26,
    ("E6", "M"): 27, ("E6", "L"): 78, ("E6", "L'"): 77,
    ("E7", "M"): 56, ("E7", "L"): 133, ("E7", "L'"): 132,
    ("E8", "L"): 248,
}

#: Levi subsystems (1-based simple roots) whose regular unipotent represents a class
LEVI_REPS = {
    ("F4", "A1+~A1", 2): (1, 3),
    ("F4", "A2+~A1", 3): (1, 2, 4),
    ("F4", "~A2+A1", 3): (3, 4, 1),
    ("E6", "3A1", 2): (1, 4, 6),
    ("E6", "2A2+A1", 3): (1, 3, 5, 6, 2),
    ("E7", "4A1", 2): (2, 3, 5, 7),
}


class ClassDataError(ValueError):
    pass


class UnsupportedQuery(ValueError):
    pass


def root_type(family: str) -> str:
    return FAMILY_ROWS[family][0] if family in FAMILY_ROWS else family


def module_dim(family: str, kind: str) -> int:
    return MODULE_DIMS[(root_type(family), kind)]


# ------------------------------------------------------------------ format
def checksum(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()


def format_partition(parts: Sequence[int]) -> str:
    c = Counter(parts)
    return " ".join(f"{k}^{c[k]}" if c[k] > 1 else str(k) for k in sorted(c, reverse=True))


def parse_partition(text: str) -> List[int]:
    out: List[int] = []
    for tok in text.split():
        k, _, e = tok.partition("^")
        out.extend([int(k)] * int(e or 1))
    return out


@dataclass(frozen=True)
class ClassRecord:
    family: str
    label: str
    order: int
    unipotent: bool
    dM: Optional[int]
    dL: Optional[int]
    cond: str
    chiM: Optional[int] = None
    chiL: Optional[int] = None
    flags: Tuple[Tuple[str, str], ...] = ()
    partitions: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()

    def flag(self, key: str) -> Optional[str]:
        return dict(self.flags).get(key)

    def dim_on(self, kind: str, computed: bool = False) -> Optional[int]:
        """Fixed-space dimension on module ``kind`` (M, M', L).

        With ``computed`` the M' value is the computed one where the stored
        rule and the computation disagree.
        """
        if kind == "M":
            return self.dM
        if kind == "L":
            return self.dL
        if kind == "M'":
            v = (self.flag("Mpc") if computed else None) or self.flag("Mp")
            return int(v) if v is not None else None
        return None

    def partition_on(self, kind: str) -> Optional[Tuple[int, ...]]:
        key = {"M'": "Mp"}.get(kind, kind)
        return dict(self.partitions).get(key)

    @property
    def kind_letter(self) -> str:
        return "u" if self.unipotent else "s"


def _opt_int(tok: str) -> Optional[int]:
    tok = tok.strip()
    return None if tok in ("", "-") else int(tok)


def _parse_line(line: str) -> ClassRecord:
    parts = line.split("|")
    if len(parts) != 11:
        raise ClassDataError(f"expected 11 fields: {line!r}")
    fam, label, order, us, dm, dl, cond, chim, chil, flags, partitions = parts
    if us not in ("u", "s"):
        raise ClassDataError(f"bad u/s field: {line!r}")
    if not re.fullmatch(r"all|q=(1|-1|\+-1)\(\d+\)", cond):
        raise ClassDataError(f"bad condition {cond!r}")
    fl = tuple(tuple(f.split("=", 1)) for f in flags.split(";") if f)
    parts_ = []
    for chunk in partitions.split(";"):
        if chunk:
            k, _, text = chunk.partition(":")
            parts_.append((k, tuple(parse_partition(text))))
    return ClassRecord(fam, label, int(order), us == "u", _opt_int(dm), _opt_int(dl), cond,
                       _opt_int(chim), _opt_int(chil), fl, tuple(parts_))


def parse_classes(text: str) -> List[ClassRecord]:
    lines = text.splitlines(keepends=True)
    if not lines or not lines[-1].startswith("# checksum sha256 "):
        raise ClassDataError("missing checksum footer")
    body = "".join(lines[:-1])
    if checksum(body) != lines[-1].split()[-1]:
        raise ClassDataError("checksum mismatch: class table was edited without regenerating")
    records = []
    for line in body.splitlines():
        if line.strip() and not line.startswith("#"):
            records.append(_parse_line(line.rstrip("\n")))
    _validate(records)
    return records


def _validate(records: Sequence[ClassRecord]) -> None:
    seen = set()
    for r in records:
        key = (r.family, r.label, r.order)
        if key in seen:
            raise ClassDataError(f"duplicate record {key}")
        seen.add(key)
        rt = root_type(r.family) if r.family != "SE7" else "E7"
        for kind in ("M", "L", "M'"):
            d = r.dim_on(kind)
            if d is not None and d > MODULE_DIMS[(rt, kind)]:
                raise ClassDataError(f"{key}: d on {kind} exceeds the module dimension")
        for kind, parts in r.partitions:
            d = r.dim_on({"Mp": "M'"}.get(kind, kind), computed=True)
            if d is not None and len(parts) != d:
                raise ClassDataError(f"{key}: partition on {kind} has {len(parts)} parts, expected {d}")
    # identical dimension vectors must be declared
    groups: Dict[tuple, List[ClassRecord]] = {}
    for r in records:
        groups.setdefault((r.family, r.order, r.unipotent, r.dM, r.dL, r.flag("Mp")), []).append(r)
    for recs in groups.values():
        if len(recs) > 1:
            for r in recs:
                others = {o.label for o in recs if o is not r}
                if not others <= set((r.flag("same") or "").split(",")):
                    raise ClassDataError(f"undeclared fingerprint collision: {[o.label for o in recs]}")


@lru_cache(maxsize=None)
def load_classes() -> Tuple[ClassRecord, ...]:
    text = resources.files("hurwitz.data").joinpath("classes.dat").read_text()
    return tuple(parse_classes(text))


# -------------------------------------------------------------- conditions
def prime_power(q: int) -> Tuple[int, int]:
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise UnsupportedQuery(f"{q} is not a prime power")
    ((p, n),) = fac.items()
    return int(p), int(n)


def condition_holds(cond: str, q: int, twisted: bool = False) -> bool:
    if cond == "all":
        return True
    m = re.fullmatch(r"q=(1|-1|\+-1)\((\d+)\)", cond)
    if not m:
        raise ClassDataError(f"bad condition {cond!r}")
    k = int(m.group(2))
    r = q % k
    if twisted:
        # the twisted group: q replaced by -q
        r = (-q) % k
    if m.group(1) == "1":
        return r == 1
    if m.group(1) == "-1":
        return r == k - 1
    return r in (1, k - 1)


def describe_condition_in_n(cond: str, p: int) -> str:
    """The condition on n for q = p^n, e.g. '3 | n'."""
    m = re.fullmatch(r"q=(1|-1|\+-1)\((\d+)\)", cond)
    if not m:
        return "always" if cond == "all" else cond
    k = int(m.group(2))
    period = sympy.n_order(p, k) if p % k else 1
    good = [n for n in range(1, period + 1) if condition_holds(cond, p**n)]
    if not good:
        return "never"
    if len(good) == period:
        return "always"
    step = good[0]
    if good == list(range(step, period + 1, step)) and period % step == 0:
        return f"{step} | n"
    if len(good) == 1:
        return f"n = {step} mod {period}"
    return "n mod %d in {%s}" % (period, ", ".join(map(str, good)))


def pretty_condition(cond: str) -> str:
    m = re.fullmatch(r"q=(1|-1|\+-1)\((\d+)\)", cond)
    if not m:
        return "all q"
    sign = {"1": "1", "-1": "-1", "+-1": "±1"}[m.group(1)]
    return f"q ≡ {sign} mod {m.group(2)}"


# ------------------------------------------------------------------ lookup
SUPPORTED_ORDERS = (2, 3, 7)


def lookup(family: str, q: int, order: int, check_existence: bool = True) -> List[ClassRecord]:
    """Class records of the given order existing in ``family`` over GF(q)."""
    if family not in FAMILY_ROWS:
        raise UnsupportedQuery(f"unsupported family {family!r}")
    if order not in SUPPORTED_ORDERS:
        raise UnsupportedQuery(f"unsupported order {order}")
    p, _ = prime_power(q)
    unipotent = p == order
    twisted = family == "2E6"
    out = []
    for r in load_classes():
        if r.family not in FAMILY_ROWS[family] or r.order != order or r.unipotent != unipotent:
            continue
        if family == "SE7" and r.family == "E7" and r.label == "A1D6":
            continue  # replaced by the two classes of the cover
        if check_existence and not condition_holds(r.cond, q, twisted):
            continue
        out.append(r)
    return out


def record(family: str, label: str, order: int) -> ClassRecord:
    for r in load_classes():
        if r.family in FAMILY_ROWS.get(family, (family,)) and r.label == label and r.order == order:
            return r
    raise KeyError((family, label, order))


# ------------------------------------------------------------- fingerprint
@dataclass(frozen=True)
class Fingerprint:
    order: int
    dims: Tuple[Tuple[str, int], ...]  # (module kind, fixed-space dim)
    partitions: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()

    @classmethod
    def make(cls, order: int, dims: Dict[str, int], partitions: Optional[Dict[str, Sequence[int]]] = None):
        parts = tuple(sorted((k, tuple(v)) for k, v in (partitions or {}).items()))
        return cls(order, tuple(sorted(dims.items())), parts)

    def dim(self, kind: str) -> Optional[int]:
        return dict(self.dims).get(kind)

    def __str__(self) -> str:
        d = ", ".join(f"d^{k}={v}" for k, v in self.dims)
        return f"order {self.order}: {d}"


def classify(fp: Fingerprint, family: str, q: int, computed: bool = True) -> List[str]:
    """Labels of all records consistent with the fingerprint.

    A record matches only if it has a value on every measured module and all
    values agree; the reduced-module values come from the stored M' flags.
    Existence conditions on q are not applied: a measured element exists.
    """
    out = []
    for r in lookup(family, q, fp.order, check_existence=False):
        ok = True
        for kind, d in fp.dims:
            if r.dim_on(kind, computed) != d:
                ok = False
                break
        if ok:
            for kind, parts in fp.partitions:
                stored = r.partition_on(kind)
                if stored is not None and tuple(stored) != tuple(parts):
                    ok = False
                    break
        if ok:
            out.append(r.label)
    return out


# ------------------------------------------------------------------ lemmas
@dataclass(frozen=True)
class LemmaFact:
    family: str
    char: str  # e.g. "p=3", "p>=5"
    values: Tuple[Tuple[str, str], ...] = field(default=())

    def get(self, key: str) -> Optional[str]:
        return dict(self.values).get(key)

    def applies(self, p: int) -> bool:
        m = re.fullmatch(r"p(=|>=|!=)(\d+)", self.char)
        if not m:
            raise ClassDataError(f"bad characteristic condition {self.char!r}")
        op, v = m.group(1), int(m.group(2))
        return {"=": p == v, ">=": p >= v, "!=": p != v}[op]


@lru_cache(maxsize=None)
def load_lemmas() -> Tuple[LemmaFact, ...]:
    text = resources.files("hurwitz.data").joinpath("lemmas.dat").read_text()
    lines = text.splitlines(keepends=True)
    body = "".join(lines[:-1])
    if not lines[-1].startswith("# checksum sha256 ") or checksum(body) != lines[-1].split()[-1]:
        raise ClassDataError("lemma data checksum mismatch")
    out = []
    for line in body.splitlines():
        if line.strip() and not line.startswith("#"):
            fam, char, *kv = line.strip().split("|")
            out.append(LemmaFact(fam, char, tuple(tuple(x.split("=", 1)) for x in kv)))
    return tuple(out)
