"""Chevalley groups over GF(q) as explicit matrix groups.

Root elements e_a are integer matrices on an integral form of the module
(acting on column vectors, so commutators of matrices match Lie brackets).
The group elements x_a(t) = sum_k t^k e_a^k/k! are assembled from the exact
divided powers and only then reduced mod p.  Matrices are used as they are
by the rest of the package, i.e. as elements acting on row vectors from the
right; the fixed-space dimensions are the same either way.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._hw import DenominatorError, build_hw_module
from .ffla import FieldCtx, MatrixGF, field_for_q
from .ffla.matrix import raw_inverse, raw_matmul
from .rootsys import (
    MINIMAL_HIGHEST_WEIGHT,
    RootSystem,
    build_root_system,
    chevalley_root_operators,
    structure_constants,
)

log = logging.getLogger(__name__)

Vec = Tuple[int, ...]

#: module kinds available per root-system type
SUPPORTED_KINDS = {
    "A1": ("M", "L"),
    "A2": ("M", "L"),
    "G2": ("M", "L"),
    "F4": ("M", "L"),
    "E6": ("M", "L"),
    "E7": ("M", "L"),
    "E8": ("L",),
}

#: reductions (kind -> primes where the module has a trivial or proper piece)
REDUCTIONS = {
    ("F4", "M"): (3,),
    ("F4", "L"): (2,),
    ("E6", "L"): (3,),
    ("E7", "L"): (2,),
    ("G2", "L"): (3,),
    ("G2", "M"): (2,),
    ("A1", "L"): (2,),
    ("A2", "L"): (3,),
}


class UnsupportedGroupError(ValueError):
    pass


class ReductionNotApplicable(ValueError):
    pass


# ------------------------------------------------------------ integral data
@dataclass
class IntegralRep:
    """Integral Chevalley data for one module of one root system."""

    label: str
    kind: str
    weights: List[Vec]  # weight (Dynkin labels) of each basis vector
    nilpotent: Dict[Vec, np.ndarray] = field(repr=False)  # root -> e_root
    divided: Dict[Vec, List[np.ndarray]] = field(repr=False)  # root -> [I, e, e^2/2, ...]

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.label)

    def exp(self, root: Sequence[int]) -> np.ndarray:
        """exp(e_root) as an exact integer matrix."""
        return sum(self.divided[tuple(root)])

    def weight_order_hash(self) -> str:
        text = ";".join(",".join(map(str, w)) for w in self.weights)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _imul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)


def _divided_powers(e: np.ndarray) -> List[np.ndarray]:
    out = [np.eye(e.shape[0], dtype=np.int64)]
    power = out[0]
    k = 0
    while True:
        k += 1
        power = _imul(power, e)
        if not power.any():
            return out
        if (power % factorial(k)).any():
            raise DenominatorError(f"e^{k}/{k}! is not integral")
        out.append(power // factorial(k))


def adjoint_operators(rs: RootSystem) -> Tuple[List[Vec], Dict[Vec, np.ndarray]]:
    """ad(e_a) on the Chevalley basis, built directly from the structure constants.

    Basis: root vectors and the simple coroots h_i, sorted by weight
    (decreasing), the zero weight space ordered by i.
    """
    N = structure_constants(rs)
    basis: List[Tuple[Vec, object]] = [(rs.dynkin(a), ("e", a)) for a in rs.roots]
    basis += [(tuple([0] * rs.rank), ("h", i)) for i in range(rs.rank)]
    basis.sort(key=lambda t: (t[0], -t[1][1] if t[1][0] == "h" else 0), reverse=True)
    index = {b: k for k, (_, b) in enumerate(basis)}
    n = len(basis)
    ops: Dict[Vec, np.ndarray] = {}
    for g in rs.roots:
        m = np.zeros((n, n), dtype=np.int64)
        col_g = index[("e", g)]
        for d in rs.roots:
            s = tuple(x + y for x, y in zip(g, d))
            src = index[("e", d)]
            if (g, d) in N:
                m[index[("e", s)], src] = N[(g, d)]
            elif not any(s):
                # [e_a, e_-a] = h_a
                for i, c in enumerate(rs.coroot_coefficients(g)):
                    m[index[("h", i)], src] = c
        for i in range(rs.rank):
            # [e_a, h_i] = -<a, alpha_i^vee> e_a
            m[col_g, index[("h", i)]] = -rs.pairing(g, i)
        ops[g] = m
    return [w for w, _ in basis], ops


@lru_cache(maxsize=None)
def build_integral_rep(label: str, kind: str) -> IntegralRep:
    """Integral root elements on the minimal (M) or adjoint (L) module."""
    if label not in SUPPORTED_KINDS or kind not in SUPPORTED_KINDS[label]:
        raise UnsupportedGroupError(f"no {kind} module for {label}")
    rs = build_root_system(label)
    if kind == "L":
        weights, ops = adjoint_operators(rs)
    else:
        mod = build_hw_module(rs.cartan, MINIMAL_HIGHEST_WEIGHT[label])
        ops, _ = chevalley_root_operators(rs, mod.e, mod.f, mod.weights, structure_constants(rs))
        weights = mod.weights
    divided = {a: _divided_powers(m) for a, m in ops.items()}
    return IntegralRep(label, kind, list(weights), ops, divided)


# ---------------------------------------------------------------- the group
@dataclass
class GroupCtx:
    """A matrix group over GF(q) with its construction data."""

    family: str
    q: int
    kind: str
    field: FieldCtx
    gens: List[MatrixGF]
    gen_names: List[str]
    provenance: Dict[str, str]
    rep: Optional[IntegralRep] = field(default=None, repr=False)
    parent: Optional["GroupCtx"] = field(default=None, repr=False)
    # subquotient transport: block of P g P^-1 on rows/cols [lo, hi)
    basis_change: Optional[np.ndarray] = field(default=None, repr=False)
    block: Optional[Tuple[int, int]] = None
    _pinv: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        if self.rep is not None:
            return self.rep.dim
        return self.gens[0].dim

    @property
    def p(self) -> int:
        return self.field.p

    def transport(self, g: MatrixGF) -> MatrixGF:
        """Image on this module of an element given on the parent module."""
        if self.parent is None:
            return g
        g = self.parent.transport(g)
        P = self.basis_change
        if self._pinv is None:
            self._pinv = raw_inverse(self.field, P)
        full = raw_matmul(self.field, raw_matmul(self.field, P, g.a), self._pinv)
        lo, hi = self.block
        return MatrixGF(self.field, full[lo:hi, lo:hi], check=False)

    def root_element(self, root: Sequence[int], t: int) -> MatrixGF:
        """x_root(t), computed on the integral module and mapped to this one."""
        base = self.base()
        F = base.field
        acc = np.zeros((base.dim, base.dim), dtype=np.int64)
        tk = 1
        for dp in base.rep.divided[tuple(root)]:
            acc = F.add(acc, F.mul(tk, dp % F.p))
            tk = F.smul(tk, t)
        return self.transport(MatrixGF(F, acc, check=False))

    def base(self) -> "GroupCtx":
        g = self
        while g.parent is not None:
            g = g.parent
        return g

    def n_element(self, root: Sequence[int], t: int) -> MatrixGF:
        neg = tuple(-c for c in root)
        F = self.field
        x = self.root_element(root, t)
        return x @ self.root_element(neg, F.sneg(F.sinv(t))) @ x

    def h_element(self, root: Sequence[int], t: int) -> MatrixGF:
        """h_root(t) = n_root(t) n_root(1)^-1."""
        return self.n_element(root, t) @ self.n_element(root, 1).inverse()

    def torus_element(self, v: Sequence[int], m: int) -> MatrixGF:
        """Diagonal element acting on weight mu by zeta^(mu . v), zeta of order m."""
        base = self.base()
        F = base.field
        zeta = F.root_of_unity(m)
        ex = np.asarray(base.rep.weights, dtype=np.int64) @ np.asarray(v, dtype=np.int64)
        diag = np.array([F.spow(zeta, int(e) % m) for e in ex], dtype=np.int64)
        return self.transport(MatrixGF(F, np.diag(diag), check=False))

    def product_of_root_elements(self, roots: Sequence[Sequence[int]], t: int = 1) -> MatrixGF:
        g = MatrixGF.identity(self.field, self.dim)
        for r in roots:
            g = g @ self.root_element(r, t)
        return g


def _field_params(F: FieldCtx) -> List[int]:
    return F.basis()


def build_group(rep: IntegralRep, q: int) -> GroupCtx:
    """Generators x_{+-alpha_i}(eps_j) over GF(q), eps_j a GF(p)-basis."""
    F = field_for_q(q)
    rs = rep.rs
    base = GroupCtx(rep.label, q, rep.kind, F, [], [], {}, rep=rep)
    gens, names = [], []
    for i, a in enumerate(rs.simple):
        for sign in (1, -1):
            root = tuple(sign * c for c in a)
            for j, eps in enumerate(_field_params(F)):
                gens.append(base.root_element(root, eps))
                names.append(f"x{'+' if sign > 0 else '-'}{i + 1}(e{j})")
    base.gens = gens
    base.gen_names = names
    base.provenance = {
        "family": rep.label,
        "q": str(q),
        "kind": rep.kind,
        "modulus": F.modulus_line(),
        "weight_order": rep.weight_order_hash(),
        "generators": "x_{+-alpha_i}(eps_j), eps_j = X^j",
    }
    return base


def chevalley_group(label: str, q: int, kind: str = "M") -> GroupCtx:
    return build_group(build_integral_rep(label, kind), q)


def module_of(ctx: GroupCtx, kind: str, seed: int = 0) -> GroupCtx:
    """The irreducible nontrivial subquotient M' (of M) or L' (of L)."""
    from .meataxe import ModuleAction, is_irreducible, split

    base_kind = kind.rstrip("'")
    if not kind.endswith("'") or base_kind != ctx.kind:
        raise ReductionNotApplicable(f"cannot form {kind} from a {ctx.kind} module")
    if ctx.p not in REDUCTIONS.get((ctx.family, ctx.kind), ()):
        raise ReductionNotApplicable(f"{ctx.kind} is irreducible for {ctx.family} in characteristic {ctx.p}")
    act = ModuleAction(ctx.field, [g.a for g in ctx.gens])
    rng = np.random.default_rng(seed)
    res = is_irreducible(act, rng=rng)
    if res.status != "reducible":
        raise ReductionNotApplicable(f"meataxe did not split {ctx.family} {ctx.kind}: {res.status}")
    sp = split(act, res.subspace)
    # the nontrivial composition factor: the larger piece, ties broken toward the sub
    if sp.sub_dim >= sp.quotient_dim:
        block, which = (0, sp.sub_dim), "sub"
    else:
        block, which = (sp.sub_dim, act.dim), "quotient"
    gens = [MatrixGF(ctx.field, a, check=False) for a in (sp.sub if which == "sub" else sp.quotient)]
    prov = dict(ctx.provenance)
    prov.update({"kind": kind, "reduction": f"{which} of {sp.sub_dim}+{sp.quotient_dim}", "seed": str(seed)})
    return GroupCtx(ctx.family, ctx.q, kind, ctx.field, gens, list(ctx.gen_names), prov,
                    rep=None, parent=ctx, basis_change=sp.basis_change, block=block)


# ------------------------------------------------------------------ caching
def default_cache_dir() -> Path:
    return Path(os.environ.get("HURWITZ_CACHE", Path.home() / ".cache" / "hurwitz"))


def _cache_path(cache_dir: Path, family: str, q: int, kind: str) -> Path:
    return Path(cache_dir) / f"{family}_{q}_{kind.replace(chr(39), 'p')}.npz"


def save_group(ctx: GroupCtx, cache_dir: Path) -> Path:
    path = _cache_path(cache_dir, ctx.family, ctx.q, ctx.kind)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(ctx.provenance)
    header["gen_names"] = ctx.gen_names
    arrays = {"header": np.array(json.dumps(header, sort_keys=True)),
              "gens": np.stack([g.a for g in ctx.gens])}
    if ctx.basis_change is not None:
        arrays["basis_change"] = ctx.basis_change
        arrays["block"] = np.array(ctx.block)
    with open(path, "wb") as fh:
        np.savez_compressed(fh, **arrays)
    return path


def load_group(family: str, q: int, kind: str = "M", cache_dir: Optional[Path] = None,
               seed: int = 0) -> GroupCtx:
    """Group on module ``kind`` (M, M', L, L'), using the on-disk cache when valid."""
    base_kind = kind.rstrip("'")
    base = chevalley_group(family, q, base_kind)
    if kind == base_kind:
        return base
    if cache_dir is not None:
        path = _cache_path(Path(cache_dir), family, q, kind)
        if path.exists():
            data = np.load(path)
            header = json.loads(str(data["header"]))
            expect = {k: base.provenance[k] for k in ("family", "q", "modulus", "weight_order")}
            if all(header.get(k) == v for k, v in expect.items()) and header.get("seed") == str(seed):
                gens = [MatrixGF(base.field, a, check=False) for a in data["gens"]]
                prov = {k: v for k, v in header.items() if k != "gen_names"}
                return GroupCtx(family, q, kind, base.field, gens, header["gen_names"], prov,
                                parent=base, basis_change=data["basis_change"],
                                block=tuple(int(x) for x in data["block"]))
            log.warning("ignoring stale group cache %s", path)
    ctx = module_of(base, kind, seed=seed)
    if cache_dir is not None:
        save_group(ctx, Path(cache_dir))
    return ctx


# ----------------------------------------------- unipotent representatives
def levi_regular_unipotent(ctx: GroupCtx, simple_indices: Sequence[int]) -> MatrixGF:
    """Product of x_{alpha_i}(1) over the given simple roots (1-based indices)."""
    rs = build_root_system(ctx.family)
    return ctx.product_of_root_elements([rs.simple[i - 1] for i in simple_indices])


# ------------------------------------------------------------ smoke groups
def gl3_2() -> GroupCtx:
    """GL(3,2) = L2(7) on its natural module: a transvection and a Singer cycle."""
    F = field_for_q(2)
    t = MatrixGF(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    # companion matrix of X^3 + X + 1, order 7
    c = MatrixGF(F, [[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    prov = {"family": "GL3", "q": "2", "kind": "natural", "modulus": F.modulus_line(), "weight_order": "-"}
    return GroupCtx("GL3", 2, "natural", F, [t, c], ["t", "c"], prov)


def group_for(family: str, q: int, kind: str, cache_dir: Optional[Path] = None, seed: int = 0) -> GroupCtx:
    """Any supported group: Chevalley groups by type, plus the GL(3,2) smoke group."""
    if family == "GL3":
        if q != 2:
            raise UnsupportedGroupError("GL3 is only provided over GF(2)")
        return gl3_2()
    return load_group(family, q, kind, cache_dir, seed)
