"""Randomized search for (2,3,7) generating triples and their certification.

Pipeline: pick x and z of the target classes by sampling elements of order 2
and 7 and matching fixed-space fingerprints; then screen many conjugate
pairs (x^r, z^s) for o(xz) = 3 in batches, accept a pair when the subgroup
<x, z> is irreducible and y = x^-1 z^-1 lands in the target class.  A
candidate is certified by finding elements of prescribed orders in <x, z>.
"""

from __future__ import annotations

import hashlib
import logging
import multiprocessing as mp
import re
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import classdata
from .chevgrp import GroupCtx
from .classdata import Fingerprint, format_partition, parse_partition
from .ffla import FieldCtx, MatrixGF, element_order, fixed_space_dim, jordan_partition
from .ffla.matrix import NotUnipotentError, raw_identity, raw_inverse, raw_matmul
from .meataxe import ModuleAction, is_irreducible

log = logging.getLogger(__name__)


class BudgetExhausted(RuntimeError):
    pass


class NotAdmissible(ValueError):
    pass


class WitnessFormatError(ValueError):
    pass


@dataclass
class SearchLimits:
    rounds: int = 100_000
    batch: int = 96  # conjugates per side per round; batch**2 pairs screened
    time_limit: Optional[float] = None  # seconds, per worker
    class_retries: int = 5000
    cert_tries: int = 3000


# ------------------------------------------------------- random elements
class ProductReplacement:
    """Product-replacement walk with an accumulator.

    Each step picks slots i != j and a side, replaces slot i by s_i s_j (or
    s_j s_i) and multiplies the accumulator by the new slot.  Steps are
    recorded so that an element can be replayed from the generators alone.
    With ``inverses`` the inverse of every slot and of the accumulator is
    maintained alongside.
    """

    SLOTS = 10
    BURN_IN = 50

    def __init__(self, field: FieldCtx, gens: Sequence[np.ndarray], rng: np.random.Generator,
                 inverses: bool = False, burn_in: Optional[int] = None):
        self.F = field
        self.rng = rng
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        n = max(self.SLOTS, len(gens))
        self.slots = [gens[k % len(gens)] for k in range(n)]
        self.acc = raw_identity(gens[0].shape[0])
        self.inverses = inverses
        if inverses:
            ginv = [raw_inverse(field, g) for g in gens]
            self.inv = [ginv[k % len(gens)] for k in range(n)]
            self.acc_inv = self.acc.copy()
        self.steps: List[Tuple[int, int, bool]] = []
        for _ in range(self.BURN_IN if burn_in is None else burn_in):
            self.step()

    def step(self) -> np.ndarray:
        i, j = (int(t) for t in self.rng.choice(len(self.slots), size=2, replace=False))
        left = bool(self.rng.integers(2))
        self._apply(i, j, left)
        self.steps.append((i, j, left))
        return self.acc

    def _apply(self, i: int, j: int, left: bool) -> None:
        F = self.F
        s = self.slots
        s[i] = raw_matmul(F, s[j], s[i]) if left else raw_matmul(F, s[i], s[j])
        self.acc = raw_matmul(F, self.acc, s[i])
        if self.inverses:
            v = self.inv
            v[i] = raw_matmul(F, v[i], v[j]) if left else raw_matmul(F, v[j], v[i])
            self.acc_inv = raw_matmul(F, v[i], self.acc_inv)

    def next(self) -> np.ndarray:
        return self.step()

    def next_with_inverse(self) -> Tuple[np.ndarray, np.ndarray]:
        if not self.inverses:
            raise RuntimeError("walk was created without inverses")
        self.step()
        return self.acc, self.acc_inv

    def word(self) -> str:
        """The current accumulator as a replayable step string."""
        return encode_steps(len(self.slots), self.steps)


def encode_steps(nslots: int, steps: Sequence[Tuple[int, int, bool]]) -> str:
    body = "".join(f"{i:x}{j:x}{'l' if left else 'r'}" for i, j, left in steps)
    return f"pr{nslots:x}:{body}"


def decode_steps(word: str) -> Tuple[int, List[Tuple[int, int, bool]]]:
    if not word.startswith("pr") or ":" not in word:
        raise WitnessFormatError(f"bad word {word[:20]!r}")
    head, body = word.split(":", 1)
    nslots = int(head[2:], 16)
    if len(body) % 3:
        raise WitnessFormatError("truncated word")
    steps = []
    for k in range(0, len(body), 3):
        i, j, side = int(body[k], 16), int(body[k + 1], 16), body[k + 2]
        if side not in "lr" or i == j or max(i, j) >= nslots:
            raise WitnessFormatError("bad step in word")
        steps.append((i, j, side == "l"))
    return nslots, steps


def replay_word(F: FieldCtx, gens: Sequence[np.ndarray], word: str) -> np.ndarray:
    nslots, steps = decode_steps(word)
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    walk = ProductReplacement.__new__(ProductReplacement)
    walk.F = F
    walk.slots = [gens[k % len(gens)] for k in range(nslots)]
    walk.acc = raw_identity(gens[0].shape[0])
    walk.inverses = False
    for i, j, left in steps:
        walk._apply(i, j, left)
    return walk.acc


def random_element(ctx: GroupCtx, rng: np.random.Generator,
                   walk: Optional[ProductReplacement] = None) -> MatrixGF:
    """A pseudo-random element of the group (product replacement)."""
    if walk is None:
        walk = ProductReplacement(ctx.field, [g.a for g in ctx.gens], rng)
    return MatrixGF(ctx.field, walk.next(), check=False)


def random_element_of_order(ctx: GroupCtx, k: int, rng: np.random.Generator, retries: int = 2000,
                            walk: Optional[ProductReplacement] = None) -> MatrixGF:
    """An element of order exactly k: a power g^(o(g)/k) of a random g with k | o(g)."""
    if k < 1:
        raise ValueError("order must be positive")
    if k == 1:
        return MatrixGF.identity(ctx.field, ctx.dim)
    if walk is None:
        walk = ProductReplacement(ctx.field, [g.a for g in ctx.gens], rng)
    for _ in range(retries):
        g = MatrixGF(ctx.field, walk.next(), check=False)
        o = element_order(g)
        if o % k == 0:
            return g ** (o // k)
    raise BudgetExhausted(f"no element of order {k} found in {retries} samples")


# ------------------------------------------------------------ fingerprints
def measure(ctx: GroupCtx, g: MatrixGF, order: int) -> Fingerprint:
    """Fixed-space dimension (and Jordan partition when unipotent) on ctx's module."""
    dims = {ctx.kind: fixed_space_dim(g)}
    parts = {ctx.kind: jordan_partition(g)} if order == ctx.p else {}
    return Fingerprint.make(order, dims, parts)


def fingerprint_matches(fp: Fingerprint, target: Fingerprint) -> bool:
    if fp.order != target.order:
        return False
    mine = dict(fp.dims)
    for kind, d in target.dims:
        if mine.get(kind) != d:
            return False
    got = dict(fp.partitions)
    for kind, parts in target.partitions:
        if kind in got and tuple(got[kind]) != tuple(parts):
            return False
    return True


def target_fingerprint(family: str, q: int, kind: str, label: str, order: int) -> Fingerprint:
    """The fingerprint of a tabulated class on module ``kind``.

    Untabulated semisimple classes are written s(dM/dL) or s(dL), as in the
    bound verdicts.
    """
    m = re.fullmatch(r"s\((?:(\d+)/)?(\d+)\)", label)
    if m:
        d = {"M": m.group(1), "L": m.group(2)}.get(kind)
        if d is None:
            raise NotAdmissible(f"class {label} has no value on {kind}")
        return Fingerprint.make(order, {kind: int(d)})
    rec = next((r for r in classdata.lookup(family, q, order, check_existence=False) if r.label == label), None)
    if rec is None:
        raise NotAdmissible(f"no class {label} of order {order} in {family}({q})")
    d = rec.dim_on(kind, computed=True)
    if d is None:
        raise NotAdmissible(f"class {label} has no tabulated value on {kind}")
    parts = rec.partition_on(kind)
    return Fingerprint.make(order, {kind: d}, {kind: parts} if parts else None)


def random_class_element(ctx: GroupCtx, order: int, target: Optional[Fingerprint], rng: np.random.Generator,
                         retries: int = 5000, walk: Optional[ProductReplacement] = None) -> MatrixGF:
    """An element of the given order whose fingerprint matches ``target``."""
    if walk is None:
        walk = ProductReplacement(ctx.field, [g.a for g in ctx.gens], rng)
    for _ in range(retries):
        g = random_element_of_order(ctx, order, rng, retries, walk)
        if target is None or fingerprint_matches(measure(ctx, g, order), target):
            return g
    raise BudgetExhausted(f"no element of order {order} with fingerprint {target} in {retries} samples")


# ------------------------------------------------------------ certificates
@dataclass(frozen=True)
class CertificateSpec:
    family: str
    q: int
    orders: Tuple[int, ...]
    provenance: str


@lru_cache(maxsize=None)
def certificate_specs() -> Dict[Tuple[str, int], CertificateSpec]:
    text = resources.files("hurwitz.data").joinpath("certificates.dat").read_text()
    out = {}
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            fam, q, orders, note = line.split("|", 3)
            out[(fam, int(q))] = CertificateSpec(fam, int(q), tuple(int(o) for o in orders.split(",")), note)
    return out


def certificate_spec(family: str, q: int) -> Optional[CertificateSpec]:
    fam = "E6" if family == "SE6" else family
    return certificate_specs().get((fam, q))


CLOSURE_LIMIT = 100_000


def group_closure_size(F: FieldCtx, gens: Sequence[np.ndarray], limit: int = CLOSURE_LIMIT) -> Optional[int]:
    """|<gens>| by orbit enumeration, or None beyond ``limit`` elements."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    d = gens[0].shape[0]
    ident = raw_identity(d)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for g in gens:
            imgs = raw_matmul(F, batch, g)
            for h in imgs:
                key = h.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(h)
                    if len(seen) > limit:
                        return None
    return len(seen)


# ----------------------------------------------------------------- witness
@dataclass
class HurwitzWitness:
    family: str
    q: int
    kind: str
    modulus: str
    group_hash: str
    seed: int
    worker: int
    round: int
    x: MatrixGF
    y: MatrixGF
    z: MatrixGF
    fingerprints: Dict[str, Fingerprint]
    labels: Optional[Tuple[str, str, str]]
    irreducibility: str
    certificates: List[Tuple[int, str]] = field(default_factory=list)
    closure: Optional[int] = None
    status: str = "candidate"

    # -- serialisation
    def dumps(self) -> str:
        w = len(format(self.q - 1, "x"))
        out = [
            "hurwitz-witness 1",
            f"family {self.family}",
            f"q {self.q}",
            f"kind {self.kind}",
            f"modulus {self.modulus}",
            f"group {self.group_hash}",
            f"seed {self.seed}",
            f"worker {self.worker}",
            f"round {self.round}",
            f"status {self.status}",
            "type " + (" ".join(self.labels) if self.labels else "-"),
        ]
        for name in ("x", "y", "z"):
            fp = self.fingerprints[name]
            line = f"fp {name} order={fp.order} " + " ".join(f"dim[{k}]={v}" for k, v in fp.dims)
            for k, parts in fp.partitions:
                line += f" partition[{k}]={format_partition(parts).replace(' ', ',')}"
            out.append(line)
        out.append(f"irreducible {self.irreducibility}")
        for order, word in self.certificates:
            out.append(f"cert {order} {word}")
        if self.closure is not None:
            out.append(f"closure {self.closure}")
        for name in ("x", "y", "z"):
            m = getattr(self, name)
            out.append(f"matrix {name} {m.dim}")
            for row in m.a:
                out.append("".join(format(int(v), f"0{w}x") for v in row))
        out.append("end")
        return "\n".join(out) + "\n"

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps())
        return path


def _parse_fp(tokens: Sequence[str]) -> Tuple[str, Fingerprint]:
    name = tokens[0]
    order = None
    dims: Dict[str, int] = {}
    parts: Dict[str, List[int]] = {}
    for tok in tokens[1:]:
        key, _, val = tok.partition("=")
        if key == "order":
            order = int(val)
        elif key.startswith("dim[") and key.endswith("]"):
            dims[key[4:-1]] = int(val)
        elif key.startswith("partition[") and key.endswith("]"):
            parts[key[10:-1]] = parse_partition(val.replace(",", " "))
        else:
            raise WitnessFormatError(f"bad fingerprint token {tok!r}")
    if order is None:
        raise WitnessFormatError("fingerprint without order")
    return name, Fingerprint.make(order, dims, parts)


def load_witness(text: str) -> HurwitzWitness:
    from .ffla import field_for_q

    lines = text.splitlines()
    if not lines or lines[0] != "hurwitz-witness 1":
        raise WitnessFormatError("not a witness file")
    if lines[-1] != "end":
        raise WitnessFormatError("truncated witness file")
    head: Dict[str, str] = {}
    fps: Dict[str, Fingerprint] = {}
    certs: List[Tuple[int, str]] = []
    mats: Dict[str, np.ndarray] = {}
    k = 1
    try:
        while k < len(lines) - 1:
            line = lines[k]
            key, _, rest = line.partition(" ")
            if key == "fp":
                name, fp = _parse_fp(rest.split())
                fps[name] = fp
            elif key == "cert":
                o, word = rest.split(" ", 1)
                certs.append((int(o), word))
            elif key == "matrix":
                name, d = rest.split()
                d = int(d)
                rows = lines[k + 1: k + 1 + d]
                w = len(rows[0]) // d
                mats[name] = np.array([[int(r[c * w:(c + 1) * w], 16) for c in range(d)] for r in rows],
                                      dtype=np.int64)
                k += d
            else:
                head[key] = rest
            k += 1
        q = int(head["q"])
        F = field_for_q(q)
        if head["modulus"] != F.modulus_line():
            raise WitnessFormatError("field modulus differs from this installation's")
        for name, m in mats.items():
            if m.shape[0] != m.shape[1] or (m >= q).any():
                raise WitnessFormatError(f"matrix {name} is malformed")
        labels = None if head["type"] == "-" else tuple(head["type"].split())
        return HurwitzWitness(
            family=head["family"], q=q, kind=head["kind"], modulus=head["modulus"], group_hash=head["group"],
            seed=int(head["seed"]), worker=int(head["worker"]), round=int(head["round"]),
            x=MatrixGF(F, mats["x"], check=False), y=MatrixGF(F, mats["y"], check=False),
            z=MatrixGF(F, mats["z"], check=False), fingerprints=fps, labels=labels,
            irreducibility=head.get("irreducible", ""), certificates=certs,
            closure=int(head["closure"]) if "closure" in head else None, status=head["status"],
        )
    except (KeyError, ValueError, IndexError) as exc:
        if isinstance(exc, WitnessFormatError):
            raise
        raise WitnessFormatError(f"cannot parse witness: {exc}") from exc


def group_hash(ctx: GroupCtx) -> str:
    h = hashlib.sha256()
    h.update(f"{ctx.family}|{ctx.q}|{ctx.kind}|{ctx.field.modulus_line()}".encode())
    for g in ctx.gens:
        h.update(np.ascontiguousarray(g.a, dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


# -------------------------------------------------------------- screening
def _screen(F: FieldCtx, A: np.ndarray, Z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Pairs (i, j) with v (A_i Z_j)^3 = v, for stacks A (n,d,d), Z (m,d,d)."""
    n, d, _ = A.shape
    m = Z.shape[0]
    W = raw_matmul(F, v[None, :], A.transpose(1, 0, 2).reshape(d, n * d)).reshape(n, d)  # v A_i
    Zcat = Z.transpose(1, 0, 2).reshape(d, m * d)
    for step in range(3):
        if step == 0:
            W = raw_matmul(F, W, Zcat).reshape(n, m, d)  # (v A_i) Z_j
        else:
            W = raw_matmul(F, W.transpose(1, 0, 2), Z).transpose(1, 0, 2)  # rows grouped by j
        if step < 2:
            W = raw_matmul(F, W, A)  # rows grouped by i
    return np.argwhere((W == v[None, None, :]).all(axis=2))


# --------------------------------------------------------------- hunting
@dataclass
class HuntTarget:
    family: str
    q: int
    kind: str
    labels: Optional[Tuple[str, str, str]]  # None: any elements of orders 2, 3, 7
    fingerprints: Tuple[Optional[Fingerprint], Optional[Fingerprint], Optional[Fingerprint]]


def make_target(family: str, q: int, kind: str, labels: Optional[Sequence[str]]) -> HuntTarget:
    """Validate a target triple type against the admissibility engine."""
    from . import scott

    if labels is None:
        if family in classdata.FAMILY_ROWS:
            raise NotAdmissible("a class triple is required for families with class tables")
        return HuntTarget(family, q, kind, None, (None, None, None))
    labels = tuple(labels)
    if family in scott.FULL_TABLE_FAMILIES:
        adm = {t.labels for t in scott.enumerate_admissible(family, q, computed=True)}
        if labels not in adm:
            raise NotAdmissible(f"{labels} is not an admissible type for {family}({q})")
    else:
        v = scott.verdict(family, q)
        if not v.possible:
            raise NotAdmissible(v.reason)
        for key, lab in zip("xyz", labels):
            if lab not in v.constraints.get(key, []):
                raise NotAdmissible(f"{lab} is not an admissible {key}-class for {family}({q})")
    fps = tuple(target_fingerprint(family, q, kind, lab, o) for lab, o in zip(labels, (2, 3, 7)))
    return HuntTarget(family, q, kind, labels, fps)


@dataclass
class HuntOutcome:
    witness: Optional[HurwitzWitness]
    rounds: int
    pairs: int
    elapsed: float
    timed_out: bool
    screened_hits: int = 0


def _worker_rng(seed: int, wid: int, purpose: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(wid, purpose)))


def _classify_labels(family: str, q: int, fps: Sequence[Fingerprint]) -> List[List[str]]:
    if family not in classdata.FAMILY_ROWS:
        return [[] for _ in fps]
    return [classdata.classify(fp, family, q) for fp in fps]


def _hunt_worker(ctx: GroupCtx, target: HuntTarget, seed: int, wid: int, limits: SearchLimits,
                 best=None) -> HuntOutcome:
    t0 = time.monotonic()
    F = ctx.field
    rng = _worker_rng(seed, wid, 0)
    walk = ProductReplacement(F, [g.a for g in ctx.gens], rng, inverses=True)
    tx, ty, tz = target.fingerprints
    x0 = random_class_element(ctx, 2, tx, rng, limits.class_retries, walk)
    z0 = random_class_element(ctx, 7, tz, rng, limits.class_retries, walk)
    n = limits.batch
    pairs = hits = 0
    for rnd in range(1, limits.rounds + 1):
        if best is not None and best.value <= rnd * 10_000 + wid:
            return HuntOutcome(None, rnd - 1, pairs, time.monotonic() - t0, False, hits)
        if limits.time_limit is not None and time.monotonic() - t0 > limits.time_limit:
            return HuntOutcome(None, rnd - 1, pairs, time.monotonic() - t0, True, hits)
        rs = [walk.next_with_inverse() for _ in range(2 * n)]
        A = np.stack([raw_matmul(F, raw_matmul(F, ri, x0.a), r) for r, ri in rs[:n]])
        Z = np.stack([raw_matmul(F, raw_matmul(F, r, z0.a), ri) for r, ri in rs[n:]])
        v = rng.integers(0, F.q, size=ctx.dim)
        v[0] = 1
        cand = _screen(F, A, Z, v)
        pairs += n * n
        hits += len(cand)
        for i, j in cand:
            x = MatrixGF(F, A[i], check=False)
            z = MatrixGF(F, Z[j], check=False)
            xz = x @ z
            if xz.is_identity() or not (xz @ xz @ xz).is_identity():
                continue
            y = x.inverse() @ z.inverse()
            fy = measure(ctx, y, 3)
            if ty is not None and not fingerprint_matches(fy, ty):
                continue
            irr = is_irreducible(ModuleAction(F, [x.a, z.a]), rng=_worker_rng(seed, wid, 2))
            if not irr.irreducible:
                continue
            fps = {"x": measure(ctx, x, 2), "y": fy, "z": measure(ctx, z, 7)}
            w = HurwitzWitness(
                ctx.family, ctx.q, ctx.kind, F.modulus_line(), group_hash(ctx), seed, wid, rnd, x, y, z,
                fps, target.labels, irr.certificate or "",
            )
            if best is not None:
                with best.get_lock():
                    best.value = min(best.value, rnd * 10_000 + wid)
            return HuntOutcome(w, rnd, pairs, time.monotonic() - t0, False, hits)
    return HuntOutcome(None, limits.rounds, pairs, time.monotonic() - t0, False, hits)


_POOL_STATE: Dict[str, object] = {}


def _pool_init(best) -> None:
    _POOL_STATE["best"] = best


def _pool_run(args) -> HuntOutcome:
    ctx, target, seed, wid, limits = args
    return _hunt_worker(ctx, target, seed, wid, limits, _POOL_STATE["best"])


def hunt(ctx: GroupCtx, target: HuntTarget, seed: int = 0, limits: Optional[SearchLimits] = None,
         workers: int = 1) -> HuntOutcome:
    """Run ``workers`` independent searches; the success with the least (round, worker) wins."""
    limits = limits or SearchLimits()
    if workers <= 1:
        return _hunt_worker(ctx, target, seed, 0, limits)
    mpctx = mp.get_context("fork")
    best = mpctx.Value("q", 2**62)
    with mpctx.Pool(workers, initializer=_pool_init, initargs=(best,)) as pool:
        outs = pool.map(_pool_run, [(ctx, target, seed, w, limits) for w in range(workers)])
    wins = [o for o in outs if o.witness is not None]
    total = sum(o.pairs for o in outs)
    elapsed = max(o.elapsed for o in outs)
    if not wins:
        return HuntOutcome(None, max(o.rounds for o in outs), total, elapsed, any(o.timed_out for o in outs),
                           sum(o.screened_hits for o in outs))
    win = min(wins, key=lambda o: (o.rounds, o.witness.worker))
    return HuntOutcome(win.witness, win.rounds, total, elapsed, False, sum(o.screened_hits for o in outs))


def certify_generation(ctx_field: FieldCtx, w: HurwitzWitness, spec: Optional[CertificateSpec],
                       tries: int = 3000) -> HurwitzWitness:
    """Search <x, z> for elements of every order in ``spec``; mark certified on success."""
    gens = [w.x.a, w.z.a]
    if w.q ** (w.x.dim ** 2) <= 2**40 or w.family == "GL3":
        w.closure = group_closure_size(ctx_field, gens)
    if spec is None:
        return w
    rng = _worker_rng(w.seed, w.worker, 3)
    walk = ProductReplacement(ctx_field, gens, rng, burn_in=ProductReplacement.BURN_IN)
    need = {o for o in spec.orders}
    found: Dict[int, str] = {}
    for _ in range(tries):
        if not need:
            break
        g = MatrixGF(ctx_field, walk.next(), check=False)
        o = element_order(g)
        for k in sorted(need):
            if o % k == 0:
                found[k] = f"{walk.word()}^{o // k}"
        need -= set(found)
    w.certificates = [(k, found[k]) for k in spec.orders if k in found]
    if not need:
        w.status = "certified"
    return w


# ----------------------------------------------------------- verification
@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: List[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        lines.append("verdict: " + ("all checks passed" if self.ok else f"{len(self.failures())} check(s) failed"))
        return "\n".join(lines)


def _exact_order(g: MatrixGF, k: int) -> bool:
    if g.is_identity():
        return k == 1
    return (g ** k).is_identity() and all(not (g ** (k // r)).is_identity() for r in _primes(k))


def _primes(k: int) -> List[int]:
    out, r = [], 2
    while r * r <= k:
        if k % r == 0:
            out.append(r)
            while k % r == 0:
                k //= r
        r += 1
    if k > 1:
        out.append(k)
    return out


def verify_witness(w: HurwitzWitness, ctx: Optional[GroupCtx] = None) -> VerifyReport:
    """Recompute every claim of a witness from its matrices."""
    from . import scott

    F = w.x.ctx
    checks: List[Check] = []
    for name, k in (("x", 2), ("y", 3), ("z", 7)):
        checks.append(Check(f"order of {name} is {k}", _exact_order(getattr(w, name), k)))
    checks.append(Check("x y z = 1", (w.x @ w.y @ w.z).is_identity()))
    if ctx is not None:
        checks.append(Check("group hash", group_hash(ctx) == w.group_hash, w.group_hash))
    p = F.p
    measured = {}
    for name, k in (("x", 2), ("y", 3), ("z", 7)):
        g = getattr(w, name)
        dims = {w.kind: fixed_space_dim(g)}
        try:
            parts = {w.kind: jordan_partition(g)} if k == p else {}
        except NotUnipotentError:
            parts = {w.kind: []}
        measured[name] = Fingerprint.make(k, dims, parts)
        stored = w.fingerprints.get(name)
        checks.append(Check(f"fingerprint of {name}", stored == measured[name], str(measured[name])))
    irr = is_irreducible(ModuleAction(F, [w.x.a, w.z.a]), rng=_worker_rng(w.seed, w.worker, 2))
    checks.append(Check("<x, z> irreducible", irr.irreducible, irr.certificate or irr.status))
    # Scott's inequality on the measured module
    total = sum(measured[n].dim(w.kind) for n in ("x", "y", "z"))
    checks.append(Check(f"Scott inequality on {w.kind}", total <= w.x.dim, f"{total} <= {w.x.dim}"))
    # admissibility of the classified type
    if w.family in classdata.FAMILY_ROWS:
        cls = _classify_labels(w.family, w.q, [measured[n] for n in ("x", "y", "z")])
        adm = {t.labels for t in scott.enumerate_admissible(w.family, w.q, computed=True)}
        hit = [t for t in adm if all(t[k] in cls[k] for k in range(3))]
        ok = bool(hit) and (w.labels is None or tuple(w.labels) in hit)
        checks.append(Check("classified type is admissible", ok, f"classes {cls}"))
    # certificates
    for k, word in w.certificates:
        try:
            base, _, e = word.rpartition("^")
            g = MatrixGF(F, replay_word(F, [w.x.a, w.z.a], base), check=False) ** int(e)
            ok = element_order(g) == k
        except (WitnessFormatError, ValueError) as exc:
            ok, word = False, str(exc)
        checks.append(Check(f"element of order {k} in <x, z>", ok))
    if w.closure is not None:
        size = group_closure_size(F, [w.x.a, w.z.a])
        checks.append(Check("|<x, z>| by enumeration", size == w.closure, f"{size}"))
    if w.status == "certified":
        spec = certificate_spec(w.family, w.q)
        if spec is None:
            checks.append(Check("certificate orders on record", False, "no certificate list for this group"))
        else:
            have = {k for k, _ in w.certificates}
            missing = [k for k in spec.orders if k not in have]
            checks.append(Check("all required orders certified", not missing, f"missing {missing}" if missing else ""))
    return VerifyReport(checks)


def verify_witness_file(path: Path, ctx: Optional[GroupCtx] = None) -> VerifyReport:
    try:
        w = load_witness(Path(path).read_text())
    except WitnessFormatError as exc:
        return VerifyReport([Check("parse witness file", False, str(exc))])
    return verify_witness(w, ctx)
