"""Dense matrices over GF(q).

Vectors are rows and matrices act on the right (``v -> v @ g``), the
convention of the meataxe literature.  Raw numpy helpers (``raw_*``) take
int64 arrays of field elements and are used directly by the hot loops in
``meataxe`` and ``search``; :class:`MatrixGF` wraps them as immutable values.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import poly as P
from .factor import DEFAULT_BUDGET_BITS, FactorBudgetError, factor_q_power_minus_one
from .field import FieldCtx


class DimensionError(ValueError):
    pass


class NotUnipotentError(ValueError):
    pass


class OrderComputationError(RuntimeError):
    pass


# --------------------------------------------------------------------- raw
@lru_cache(maxsize=None)
def _reduction_table(F: FieldCtx) -> np.ndarray:
    """Row s holds the coordinates of X^s mod the modulus, s < 2n - 1."""
    n, p = F.n, F.p
    rows = []
    cur = [1] + [0] * (n - 1)
    for _ in range(2 * n - 1):
        rows.append(list(cur))
        # multiply by X
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * m) % p for c, m in zip(cur, F.modulus[:n])]
    return np.array(rows, dtype=np.float64)


def _fmatmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    c = np.matmul(a.astype(np.float64), b.astype(np.float64))
    return np.fmod(c, p).astype(np.int64)


def raw_matmul(F: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix (or vector-matrix, or stacked) product over F."""
    if F.n == 1:
        return _fmatmul_mod(a, b, F.p)
    p, n = F.p, F.n
    da = F.to_digits(a).astype(np.float64)
    db = F.to_digits(b).astype(np.float64)
    red = _reduction_table(F)
    out = None
    for s in range(2 * n - 1):
        cs = None
        for i in range(max(0, s - n + 1), min(s, n - 1) + 1):
            term = np.matmul(da[i], db[s - i])
            cs = term if cs is None else cs + term
        cs = np.fmod(cs, p)
        contrib = np.multiply.outer(red[s], cs)
        out = contrib if out is None else out + contrib
    return F.from_digits(np.fmod(out, p).astype(np.int64))


def raw_identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def raw_rref(F: FieldCtx, a: np.ndarray, ncols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; pivots searched in the first ``ncols`` columns."""
    r = np.array(a, dtype=np.int64, copy=True)
    rows, cols = r.shape
    ncols = cols if ncols is None else ncols
    pivots: List[int] = []
    row = 0
    prime = F.n == 1
    p = F.p
    for col in range(ncols):
        if row >= rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        lead = int(r[row, col])
        if lead != 1:
            r[row] = F.mul(r[row], F.sinv(lead))
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            if prime:
                r[hit] = (r[hit] - np.outer(factors[hit], r[row])) % p
            else:
                r[hit] = F.sub(r[hit], F.mul(factors[hit][:, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, pivots


def raw_rank(F: FieldCtx, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(raw_rref(F, a)[1])


def raw_right_nullspace(F: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Rows v spanning {v : a @ v^T = 0}."""
    rows, cols = a.shape
    r, pivots = raw_rref(F, a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.sneg(int(r[i, f]))
    return basis


def raw_left_nullspace(F: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Rows v spanning {v : v @ a = 0}."""
    return raw_right_nullspace(F, np.ascontiguousarray(a.T))


def raw_inverse(F: FieldCtx, a: np.ndarray) -> np.ndarray:
    d = a.shape[0]
    aug = np.concatenate([a, raw_identity(d)], axis=1)
    r, pivots = raw_rref(F, aug, ncols=d)
    if len(pivots) != d:
        raise ZeroDivisionError("matrix is singular")
    return r[:, d:]


def raw_sub_identity(F: FieldCtx, a: np.ndarray, c: int = 1) -> np.ndarray:
    """a - c*I."""
    out = np.array(a, dtype=np.int64, copy=True)
    idx = np.arange(a.shape[0])
    out[idx, idx] = F.sub(out[idx, idx], c)
    return out


def raw_power(F: FieldCtx, a: np.ndarray, e: int) -> np.ndarray:
    if e < 0:
        a = raw_inverse(F, a)
        e = -e
    result = raw_identity(a.shape[0])
    base = a
    first = True
    while e:
        if e & 1:
            result = base if first else raw_matmul(F, result, base)
            first = False
        e >>= 1
        if e:
            base = raw_matmul(F, base, base)
    return result


def raw_echelon_basis(F: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """Echelonised basis of the row space."""
    if rows.shape[0] == 0:
        return rows.reshape(0, rows.shape[1])
    r, pivots = raw_rref(F, rows)
    return r[: len(pivots)]


# ------------------------------------------------------------------ matrix
class MatrixGF:
    """Immutable square matrix over a FieldCtx."""

    __slots__ = ("ctx", "a", "_hash")

    def __init__(self, ctx: FieldCtx, entries, check: bool = True):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DimensionError(f"expected a nonempty square matrix, got shape {a.shape}")
        if check and ((a < 0) | (a >= ctx.q)).any():
            raise ValueError(f"entries outside {ctx}")
        a.setflags(write=False)
        self.ctx = ctx
        self.a = a
        self._hash = None

    @classmethod
    def identity(cls, ctx: FieldCtx, dim: int) -> "MatrixGF":
        return cls(ctx, raw_identity(dim), check=False)

    @classmethod
    def zero(cls, ctx: FieldCtx, dim: int) -> "MatrixGF":
        return cls(ctx, np.zeros((dim, dim), dtype=np.int64), check=False)

    @classmethod
    def scalar(cls, ctx: FieldCtx, dim: int, c: int) -> "MatrixGF":
        return cls(ctx, raw_identity(dim) * c, check=False)

    @classmethod
    def from_integers(cls, ctx: FieldCtx, entries) -> "MatrixGF":
        """Reduce an integer matrix through Z -> GF(p) -> GF(q)."""
        return cls(ctx, np.mod(np.array(entries, dtype=object), ctx.p).astype(np.int64), check=False)

    @classmethod
    def random(cls, ctx: FieldCtx, dim: int, rng: np.random.Generator) -> "MatrixGF":
        return cls(ctx, ctx.random(rng, (dim, dim)), check=False)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def __repr__(self) -> str:
        return f"MatrixGF({self.ctx}, dim={self.dim})"

    def _check(self, other: "MatrixGF") -> None:
        if not isinstance(other, MatrixGF):
            raise TypeError(f"expected MatrixGF, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise DimensionError(f"field mismatch: {self.ctx} vs {other.ctx}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return mat_mul(self, other)

    __mul__ = __matmul__

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF(self.ctx, self.ctx.add(self.a, other.a), check=False)

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF(self.ctx, self.ctx.sub(self.a, other.a), check=False)

    def __neg__(self) -> "MatrixGF":
        return MatrixGF(self.ctx, self.ctx.neg(self.a), check=False)

    def scale(self, c: int) -> "MatrixGF":
        return MatrixGF(self.ctx, self.ctx.mul(self.a, c), check=False)

    def __pow__(self, e: int) -> "MatrixGF":
        return MatrixGF(self.ctx, raw_power(self.ctx, self.a, int(e)), check=False)

    def inverse(self) -> "MatrixGF":
        return MatrixGF(self.ctx, raw_inverse(self.ctx, self.a), check=False)

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.ctx, np.ascontiguousarray(self.a.T), check=False)

    @property
    def T(self) -> "MatrixGF":
        return self.transpose()

    def conj(self, g: "MatrixGF") -> "MatrixGF":
        """g^-1 self g."""
        return g.inverse() @ self @ g

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and other.ctx == self.ctx
            and other.a.shape == self.a.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, self.a.tobytes()))
        return self._hash

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.a, raw_identity(self.dim)))

    def is_zero(self) -> bool:
        return not self.a.any()

    def rank(self) -> int:
        return raw_rank(self.ctx, self.a)

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def trace(self) -> int:
        t = 0
        for x in np.diag(self.a):
            t = self.ctx.sadd(t, int(x))
        return t

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        """Row vectors times this matrix."""
        return raw_matmul(self.ctx, np.asarray(vecs, dtype=np.int64), self.a)

    def tolist(self) -> list:
        return self.a.tolist()


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    a._check(b)
    return MatrixGF(a.ctx, raw_matmul(a.ctx, a.a, b.a), check=False)


def kernel_dim(m: MatrixGF) -> int:
    return m.dim - m.rank()


def fixed_space_dim(g: MatrixGF) -> int:
    """Dimension of the fixed space of g (eigenvalue-1 eigenspace)."""
    return g.dim - raw_rank(g.ctx, raw_sub_identity(g.ctx, g.a))


def fixed_space(g: MatrixGF) -> np.ndarray:
    return raw_left_nullspace(g.ctx, raw_sub_identity(g.ctx, g.a))


# ------------------------------------------------------------ polynomials
def _vector_min_poly(F: FieldCtx, a: np.ndarray, v: np.ndarray) -> P.Poly:
    """Minimal polynomial of v under right multiplication by a (Krylov)."""
    d = a.shape[0]
    pivots: List[int] = []
    basis: List[np.ndarray] = []
    combos: List[np.ndarray] = []  # combos[k]: coefficients (in powers) of basis[k]
    w = np.array(v, dtype=np.int64)
    for k in range(d + 1):
        cur = w.copy()
        combo = np.zeros(d + 1, dtype=np.int64)
        combo[k] = 1
        for b, piv, c in zip(basis, pivots, combos):
            f = int(cur[piv])
            if f:
                cur = F.sub(cur, F.mul(b, f))
                combo = F.sub(combo, F.mul(c, f))
        nz = np.nonzero(cur)[0]
        if nz.size == 0:
            return P.monic(F, P.trim(int(x) for x in combo))
        piv = int(nz[0])
        inv = F.sinv(int(cur[piv]))
        basis.append(F.mul(cur, inv))
        combos.append(F.mul(combo, inv))
        pivots.append(piv)
        w = raw_matmul(F, w, a)
    raise AssertionError("Krylov sequence did not terminate")


def poly_apply_vec(F: FieldCtx, f: P.Poly, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """v @ f(a) by Horner's rule on the vector."""
    acc = np.zeros_like(np.asarray(v, dtype=np.int64))
    for c in reversed(f):
        acc = F.add(raw_matmul(F, acc, a), F.mul(v, c))
    return acc


def poly_eval_matrix(m: MatrixGF, f: P.Poly) -> MatrixGF:
    F = m.ctx
    acc = np.zeros_like(m.a)
    ident = raw_identity(m.dim)
    for c in reversed(f):
        acc = F.add(raw_matmul(F, acc, m.a), F.mul(ident, c))
    return MatrixGF(F, acc, check=False)


def min_poly(g: MatrixGF) -> P.Poly:
    """Monic minimal polynomial of g."""
    F = g.ctx
    mu: P.Poly = (1,)
    d = g.dim
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        if P.deg(mu) > 0 and not poly_apply_vec(F, mu, g.a, e).any():
            continue
        mu = P.lcm(F, mu, _vector_min_poly(F, g.a, e))
        if P.deg(mu) == d:
            break
    return mu


def char_poly(g: MatrixGF) -> P.Poly:
    """Characteristic polynomial via a Krylov decomposition into cyclic pieces."""
    F = g.ctx
    d = g.dim
    span = np.zeros((0, d), dtype=np.int64)
    chi: P.Poly = (1,)
    # quotient-space Krylov: reduce images modulo the current span
    for i in range(d):
        if span.shape[0] == d:
            break
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        if raw_rank(F, np.vstack([span, e])) == span.shape[0]:
            continue
        f, new = _relative_krylov(F, g.a, e, span)
        chi = P.mul(F, chi, f)
        span = raw_echelon_basis(F, np.vstack([span, new]))
    return chi


def _relative_krylov(F: FieldCtx, a, v, span) -> Tuple[P.Poly, np.ndarray]:
    d = a.shape[0]
    base = raw_echelon_basis(F, span) if span.shape[0] else span
    base_piv = [int(np.nonzero(r)[0][0]) for r in base]

    def reduce(vec):
        vec = vec.copy()
        for b, piv in zip(base, base_piv):
            f = int(vec[piv])
            if f:
                vec = F.sub(vec, F.mul(b, f))
        return vec

    pivots: List[int] = []
    basis: List[np.ndarray] = []
    combos: List[np.ndarray] = []
    raw_vecs = []
    w = np.array(v, dtype=np.int64)
    for k in range(d + 1):
        cur = reduce(w)
        combo = np.zeros(d + 1, dtype=np.int64)
        combo[k] = 1
        for b, piv, c in zip(basis, pivots, combos):
            f = int(cur[piv])
            if f:
                cur = F.sub(cur, F.mul(b, f))
                combo = F.sub(combo, F.mul(c, f))
        nz = np.nonzero(cur)[0]
        if nz.size == 0:
            return P.monic(F, P.trim(int(x) for x in combo)), np.array(raw_vecs).reshape(-1, d)
        piv = int(nz[0])
        inv = F.sinv(int(cur[piv]))
        basis.append(F.mul(cur, inv))
        combos.append(F.mul(combo, inv))
        pivots.append(piv)
        raw_vecs.append(w)
        w = raw_matmul(F, w, a)
    raise AssertionError("Krylov sequence did not terminate")


# ------------------------------------------------------------------ orders
def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _x_order_mod(F: FieldCtx, f: P.Poly, d: int, extra_primes: Sequence[int], budget_bits: int) -> int:
    """Multiplicative order of X modulo the squarefree f whose factors all have degree d."""
    n_total = F.q**d - 1
    try:
        primes = sorted(factor_q_power_minus_one(F.q, d, budget_bits))
    except FactorBudgetError as exc:
        usable = [r for r in extra_primes if n_total % r == 0]
        rest = n_total
        for r in usable:
            while rest % r == 0:
                rest //= r
        if rest != 1:
            raise OrderComputationError(str(exc)) from exc
        primes = usable
    m = n_total
    x: P.Poly = (0, 1)
    for r in primes:
        while m % r == 0 and P.powmod(F, x, m // r, f) == (1,):
            m //= r
    if P.powmod(F, x, m, f) != (1,):
        raise AssertionError("order computation inconsistent")
    return m


def order_from_min_poly(F: FieldCtx, mu: P.Poly, factor_hints: Sequence[int] = (), budget_bits: int = DEFAULT_BUDGET_BITS) -> int:
    if not mu or mu[0] == 0:
        raise ValueError("matrix is singular")
    order = 1
    top = 1
    for a, mult in P.squarefree_factorization(F, mu):
        top = max(top, mult)
        for g, d in P.distinct_degree_factorization(F, a):
            if g == (F.sneg(1), 1):  # X - 1
                continue
            order = _lcm(order, _x_order_mod(F, g, d, factor_hints, budget_bits))
    ppow = 1
    while ppow < top:
        ppow *= F.p
    return order * ppow


def element_order(g: MatrixGF, factor_hints: Sequence[int] = (), budget_bits: int = DEFAULT_BUDGET_BITS) -> int:
    """Exact multiplicative order of an invertible matrix."""
    return order_from_min_poly(g.ctx, min_poly(g), factor_hints, budget_bits)


def jordan_partition(g: MatrixGF, p: Optional[int] = None) -> List[int]:
    """Jordan block sizes (descending) of a unipotent matrix."""
    F = g.ctx
    if p is not None and p != F.p:
        raise ValueError(f"characteristic mismatch: {p} vs {F.p}")
    n = raw_sub_identity(F, g.a)
    ranks = [g.dim]
    cur = n
    while ranks[-1] > 0:
        r = raw_rank(F, cur)
        if r == ranks[-1]:
            raise NotUnipotentError("matrix is not unipotent")
        ranks.append(r)
        cur = raw_matmul(F, cur, n)
    # ranks[k] = rank (g-1)^k; number of blocks of size >= k is ranks[k-1]-ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts: List[int] = []
    for k in range(len(at_least)):
        exactly = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
        parts.extend([k + 1] * exactly)
    return sorted(parts, reverse=True)


def is_unipotent(g: MatrixGF) -> bool:
    n = MatrixGF(g.ctx, raw_sub_identity(g.ctx, g.a), check=False)
    return poly_eval_matrix(n, (0,) * g.dim + (1,)).is_zero()
