"""Irreducibility testing and splitting of matrix modules (Norton's criterion).

Modules are row spaces with the generators acting on the right.  For a
random algebra element theta and an eigenvalue c of theta, let N = theta - c.
If some nonzero v with v N = 0 spins up to a proper subspace, that subspace
is a submodule.  If some nonzero u with u N^T = 0 spins up to a proper
subspace under the transposed generators, its annihilator is a submodule.
When both spins fill the space and so does the spin of every kernel
vector (checked line by line for small kernels), the module is irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .ffla import FieldCtx
from .ffla.matrix import (
    raw_echelon_basis,
    raw_identity,
    raw_inverse,
    raw_left_nullspace,
    raw_matmul,
    raw_rref,
    raw_right_nullspace,
    raw_sub_identity,
)
from .ffla.matrix import MatrixGF, char_poly


class IrreducibleInputError(ValueError):
    pass


@dataclass
class ModuleAction:
    field: FieldCtx
    mats: List[np.ndarray]

    def __post_init__(self) -> None:
        self.mats = [np.asarray(m, dtype=np.int64) for m in self.mats]
        if not self.mats:
            raise ValueError("a module action needs at least one matrix")
        d = self.mats[0].shape[0]
        for m in self.mats:
            if m.shape != (d, d):
                raise ValueError("all matrices must be square of the same size")

    @property
    def dim(self) -> int:
        return self.mats[0].shape[0]

    def transposed(self) -> "ModuleAction":
        return ModuleAction(self.field, [np.ascontiguousarray(m.T) for m in self.mats])

    @classmethod
    def from_matrices(cls, mats: Sequence[MatrixGF]) -> "ModuleAction":
        return cls(mats[0].ctx, [m.a for m in mats])


def _reduce(F: FieldCtx, rows: np.ndarray, basis: np.ndarray, pivots: List[int]) -> np.ndarray:
    """rows minus their projection on an RREF basis."""
    if basis.shape[0] == 0 or rows.shape[0] == 0:
        return rows
    coeff = rows[:, pivots]
    return F.sub(rows, raw_matmul(F, coeff, basis))


def spin_up(vecs: np.ndarray, act: ModuleAction) -> np.ndarray:
    """RREF basis of the smallest invariant subspace containing ``vecs``."""
    F = act.field
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, act.dim)
    basis, pivots = raw_rref(F, vecs)
    basis = basis[: len(pivots)]
    frontier = basis
    while frontier.shape[0] and basis.shape[0] < act.dim:
        imgs = np.concatenate([raw_matmul(F, frontier, g) for g in act.mats])
        res = _reduce(F, imgs, basis, pivots)
        res = res[res.any(axis=1)]
        if res.shape[0] == 0:
            break
        frontier = raw_echelon_basis(F, res)
        basis, pivots = raw_rref(F, np.concatenate([basis, frontier]))
        basis = basis[: len(pivots)]
    return basis


def is_invariant(sub: np.ndarray, act: ModuleAction) -> bool:
    F = act.field
    if sub.shape[0] == 0:
        return True
    r = sub.shape[0]
    for g in act.mats:
        both = np.concatenate([sub, raw_matmul(F, sub, g)])
        if len(raw_rref(F, both)[1]) != r:
            return False
    return True


def annihilator(F: FieldCtx, sub: np.ndarray, dim: int) -> np.ndarray:
    """RREF basis of {v : v u^T = 0 for all rows u of sub}."""
    if sub.shape[0] == 0:
        return raw_identity(dim)
    return raw_echelon_basis(F, raw_right_nullspace(F, sub))


@dataclass
class MeataxeResult:
    status: str  # "irreducible", "reducible", "inconclusive"
    subspace: Optional[np.ndarray] = field(default=None, repr=False)
    certificate: Optional[str] = None
    trials: int = 0

    @property
    def irreducible(self) -> bool:
        return self.status == "irreducible"


def _roots_in_field(F: FieldCtx, f: Sequence[int]) -> List[int]:
    xs = np.arange(F.q, dtype=np.int64)
    acc = np.zeros(F.q, dtype=np.int64)
    for c in reversed(f):
        acc = F.add(F.mul(acc, xs), c)
    return [int(x) for x in np.flatnonzero(acc == 0)]


class _Algebra:
    """Random algebra elements: short sums of scalar multiples of elements
    drawn from a product-replacement walk on the generators.  Plain short
    words are avoided because products of a few unipotent root elements
    give highly degenerate kernels."""

    SLOTS = 10
    BURN_IN = 40

    def __init__(self, act: ModuleAction, rng: np.random.Generator):
        self.act = act
        self.rng = rng
        mats = act.mats
        self.slots = [mats[k % len(mats)] for k in range(max(self.SLOTS, len(mats)))]
        for _ in range(self.BURN_IN):
            self._step()

    def _step(self) -> np.ndarray:
        i, j = (int(t) for t in self.rng.choice(len(self.slots), size=2, replace=False))
        self.slots[i] = raw_matmul(self.act.field, self.slots[i], self.slots[j])
        return self.slots[i]

    def next(self) -> Tuple[np.ndarray, str]:
        F = self.act.field
        terms = int(self.rng.integers(1, 4))
        theta = np.zeros_like(self.slots[0])
        desc = []
        for _ in range(terms):
            m = self._step()
            c = int(self.rng.integers(1, F.q))
            theta = F.add(theta, F.mul(c, m))
            desc.append(str(c))
        return theta, "sum of walk elements with coefficients " + ",".join(desc)


#: enumerate all kernel lines when there are at most this many
MAX_KERNEL_LINES = 40


def _kernel_lines(F: FieldCtx, ker: np.ndarray):
    """One representative vector per 1-dimensional subspace of the row span."""
    k = ker.shape[0]
    for lead in range(k):
        # normalised coefficient vectors: first nonzero entry at `lead` equals 1
        for tail in range(F.q ** (k - lead - 1)):
            coeffs = [0] * lead + [1]
            t = tail
            for _ in range(k - lead - 1):
                coeffs.append(t % F.q)
                t //= F.q
            yield raw_matmul(F, np.array(coeffs, dtype=np.int64)[None, :], ker)


def is_irreducible(
    act: ModuleAction, budget: int = 50, rng: Optional[np.random.Generator] = None
) -> MeataxeResult:
    """Norton's test with ``budget`` random algebra elements."""
    F = act.field
    d = act.dim
    if d == 1:
        return MeataxeResult("irreducible", certificate="dimension 1")
    rng = rng if rng is not None else np.random.default_rng(0)
    alg = _Algebra(act, rng)
    dual = act.transposed()
    for trial in range(1, budget + 1):
        theta, desc = alg.next()
        cp = char_poly(MatrixGF(F, theta, check=False))
        for c in _roots_in_field(F, cp):
            N = raw_sub_identity(F, theta, c)
            ker = raw_left_nullspace(F, N)
            if ker.shape[0] == 0:
                continue
            W = spin_up(ker[:1], act)
            if W.shape[0] < d:
                return MeataxeResult("reducible", subspace=W, trials=trial)
            cok = raw_right_nullspace(F, N)
            U = spin_up(cok[:1], dual)
            if U.shape[0] < d:
                return MeataxeResult("reducible", subspace=annihilator(F, U, d), trials=trial)
            k = ker.shape[0]
            if (F.q**k - 1) // (F.q - 1) > MAX_KERNEL_LINES:
                continue
            # every kernel vector must generate the whole module
            for v in _kernel_lines(F, ker):
                W = spin_up(v, act)
                if W.shape[0] < d:
                    return MeataxeResult("reducible", subspace=W, trials=trial)
            return MeataxeResult(
                "irreducible",
                certificate=f"trial {trial}: theta = {desc}; eigenvalue {c}; nullity {k}",
                trials=trial,
            )
    return MeataxeResult("inconclusive", trials=budget)


@dataclass
class SplitResult:
    sub: List[np.ndarray]
    quotient: List[np.ndarray]
    basis_change: np.ndarray
    sub_dim: int
    quotient_dim: int


def split(act: ModuleAction, subspace: Optional[np.ndarray] = None, **kw) -> SplitResult:
    """Actions on an invariant subspace and on the quotient.

    The rows of ``basis_change`` P are an echelon basis of the subspace
    followed by unit vectors; P g P^-1 is block lower triangular with the sub
    action top left and the quotient action bottom right.
    """
    F = act.field
    if subspace is None:
        res = is_irreducible(act, **kw)
        if res.status != "reducible":
            raise IrreducibleInputError(f"cannot split: meataxe says {res.status}")
        subspace = res.subspace
    W = raw_echelon_basis(F, np.asarray(subspace, dtype=np.int64))
    k = W.shape[0]
    if not 0 < k < act.dim:
        raise IrreducibleInputError("subspace must be proper and nonzero")
    if not is_invariant(W, act):
        raise ValueError("subspace is not invariant")
    pivots = raw_rref(F, W)[1]
    free = [c for c in range(act.dim) if c not in set(pivots)]
    comp = np.zeros((len(free), act.dim), dtype=np.int64)
    comp[np.arange(len(free)), free] = 1
    P = np.concatenate([W, comp])
    Pinv = raw_inverse(F, P)
    sub, quo = [], []
    for g in act.mats:
        h = raw_matmul(F, raw_matmul(F, P, g), Pinv)
        sub.append(np.ascontiguousarray(h[:k, :k]))
        quo.append(np.ascontiguousarray(h[k:, k:]))
    return SplitResult(sub, quo, P, k, act.dim - k)
