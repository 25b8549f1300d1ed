"""Irreducible highest-weight modules over Z from Cartan data alone.

Weight spaces are built depth by depth.  A weight space V_mu (mu below the
highest weight) is spanned by the vectors f_i b, b in V_{mu+alpha_i}; such a
vector is identified by its images e_j f_i b, since the e_j are jointly
injective on V_mu.  The Kostant lattice in V_mu is the Z-span of the divided
powers f_i^k/k! applied to the lattices above, reduced to a basis by HNF.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Dict, List, Sequence, Tuple

import numpy as np

Vec = Tuple[int, ...]
QMat = List[List[Fraction]]  # rows x cols


class DenominatorError(ArithmeticError):
    """A matrix that must be integral on the Z-form has a denominator."""


# ------------------------------------------------------------ exact helpers
def _zeros(r: int, c: int) -> QMat:
    return [[Fraction(0)] * c for _ in range(r)]


def _matmul(a: QMat, b: QMat, inner: int) -> QMat:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = _zeros(len(a), cols)
    for i, row in enumerate(a):
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                o = out[i]
                for j in range(cols):
                    if bk[j]:
                        o[j] += x * bk[j]
    return out


def _independent_rows(rows: List[List[Fraction]]) -> List[int]:
    """Indices of a maximal independent subset of rows, greedily in order."""
    basis: List[Tuple[int, List[Fraction]]] = []  # (pivot col, reduced row)
    chosen = []
    for idx, row in enumerate(rows):
        v = list(row)
        for piv, b in basis:
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is not None:
            inv = 1 / v[piv]
            v = [x * inv for x in v]
            # keep the stored rows fully reduced against each other
            basis = [(p, [x - b[piv] * y for x, y in zip(b, v)]) for p, b in basis]
            basis.append((piv, v))
            chosen.append(idx)
    return chosen


def _solve_rows(basis: List[List[Fraction]], targets: List[List[Fraction]]) -> QMat:
    """Coefficients c with c @ basis = target for each target row."""
    n = len(basis)
    if n == 0:
        return [[] for _ in targets]
    width = len(basis[0])
    # augmented system on the transpose: basis^T c^T = target^T
    aug = [[basis[i][col] for i in range(n)] + [t[col] for t in targets] for col in range(width)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, width) if aug[k][c]), None)
        if p is None:
            raise ArithmeticError("basis rows are dependent")
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for k in range(width):
            if k != r and aug[k][c]:
                f = aug[k][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[r])]
        piv_cols.append(c)
        r += 1
    for k in range(r, width):
        if any(aug[k][n:]):
            raise ArithmeticError("target not in the span")
    return [[aug[i][n + t] for i in range(n)] for t in range(len(targets))]


def _hnf_basis(vectors: List[List[Fraction]], dim: int) -> List[List[Fraction]]:
    """Z-basis (row echelon, positive pivots) of the lattice spanned by vectors."""
    den = 1
    for v in vectors:
        for x in v:
            den = lcm(den, x.denominator)
    rows = [[int(x * den) for x in v] for v in vectors]
    out: List[List[int]] = []
    col = 0
    while rows and col < dim:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = [r for r in rows if not r[col]]
            new = [piv]
            for r in nz[1:]:
                f = r[col] // piv[col]
                new.append([x - f * y for x, y in zip(r, piv)])
            rows = rest + new
            rows = [r for r in rows if any(r)]
        piv = next(r for r in rows if r[col])
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        rows = [r for r in rows if not r[col]]
        col += 1
    return [[Fraction(x, den) for x in r] for r in out]


# --------------------------------------------------------------- the module
@dataclass
class HWModule:
    """Integral highest-weight module; operators act on column vectors."""

    cartan: np.ndarray
    highest: Vec
    weights: List[Vec]  # one entry per basis vector
    e: List[np.ndarray]  # e_i as int64 (dim x dim)
    f: List[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.weights)


def build_hw_module(cartan: np.ndarray, highest: Sequence[int]) -> HWModule:
    r = cartan.shape[0]
    alpha = [tuple(int(cartan[k, j]) for k in range(r)) for j in range(r)]  # Dynkin labels of alpha_j
    lam = tuple(int(x) for x in highest)

    def plus(mu: Vec, j: int, k: int = 1) -> Vec:
        return tuple(m + k * a for m, a in zip(mu, alpha[j]))

    dims: Dict[Vec, int] = {lam: 1}
    E: Dict[Tuple[int, Vec], QMat] = {}  # (j, mu): rows = basis of V_mu, cols = coords in V_{mu+a_j}
    F: Dict[Tuple[int, Vec], QMat] = {}  # (i, nu): rows = basis of V_nu, cols = coords in V_{nu-a_i}
    layers = [[lam]]
    while True:
        frontier = layers[-1]
        cands = sorted({plus(nu, i, -1) for nu in frontier for i in range(r)}, reverse=True)
        new_layer = []
        for mu in cands:
            above = [j for j in range(r) if plus(mu, j) in dims]
            blocks = [(j, plus(mu, j)) for j in above]
            width = sum(dims[w] for _, w in blocks)
            cand_ids: List[Tuple[int, Vec, int]] = []
            images: List[List[Fraction]] = []
            for i, nu in blocks:
                for b in range(dims[nu]):
                    img: List[Fraction] = []
                    for j, w in blocks:
                        # e_j f_i b = f_i e_j b + delta_ij <nu, a_i^vee> b
                        part = [Fraction(0)] * dims[w]
                        top = plus(nu, j)
                        if top in dims:
                            ejb = E[(j, nu)][b]
                            fmat = F[(i, top)]
                            for t, c in enumerate(ejb):
                                if c:
                                    for s, y in enumerate(fmat[t]):
                                        if y:
                                            part[s] += c * y
                        if i == j:
                            part[b] += nu[i]
                        img.extend(part)
                    cand_ids.append((i, nu, b))
                    images.append(img)
            sel = _independent_rows(images)
            d = len(sel)
            if d == 0:
                for i, nu in blocks:
                    F[(i, nu)] = [[] for _ in range(dims[nu])]
                continue
            basis_rows = [images[k] for k in sel]
            coeffs = _solve_rows(basis_rows, images)
            for i, nu in blocks:
                F[(i, nu)] = [None] * dims[nu]  # type: ignore[list-item]
            for (i, nu, b), c in zip(cand_ids, coeffs):
                F[(i, nu)][b] = c
            dims[mu] = d
            off = 0
            for j, w in blocks:
                E[(j, mu)] = [row[off : off + dims[w]] for row in basis_rows]
                off += dims[w]
            for j in range(r):
                if j not in above:
                    E[(j, mu)] = [[] for _ in range(d)]
            new_layer.append(mu)
        # every weight in the frontier needs F maps to non-weights too
        for nu in frontier:
            for i in range(r):
                F.setdefault((i, nu), [[] for _ in range(dims[nu])])
        if not new_layer:
            break
        layers.append(new_layer)
    for j in range(r):
        E.setdefault((j, lam), [[]])
    width_ok = all(len(v) == dims[plus(mu, j)] if plus(mu, j) in dims else not v
                   for (j, mu), m in E.items() for v in m)
    assert width_ok

    # ---- Kostant lattice, weight by weight in construction order
    order = [mu for layer in layers for mu in layer]
    zb: Dict[Vec, QMat] = {lam: [[Fraction(1)]]}  # rows: lattice basis in Q-coords of V_mu

    def apply_f(i: int, nu: Vec, vec: List[Fraction]) -> List[Fraction]:
        fm = F[(i, nu)]
        tgt = plus(nu, i, -1)
        out = [Fraction(0)] * dims.get(tgt, 0)
        for t, c in enumerate(vec):
            if c:
                for s, y in enumerate(fm[t]):
                    out[s] += c * y
        return out

    for mu in order[1:]:
        gens: List[List[Fraction]] = []
        for i in range(r):
            k = 1
            while plus(mu, i, k) in dims:
                src = plus(mu, i, k)
                for v in zb[src]:
                    w, cur = list(v), src
                    for _ in range(k):
                        w = apply_f(i, cur, w)
                        cur = plus(cur, i, -1)
                    gens.append([x / factorial(k) for x in w])
                k += 1
        zb[mu] = _hnf_basis(gens, dims[mu])
        if len(zb[mu]) != dims[mu]:
            raise DenominatorError(f"lattice at weight {mu} has rank {len(zb[mu])} < {dims[mu]}")

    # ---- integral matrices in the lattice basis; basis sorted by weight
    weights_sorted = sorted(order, reverse=True)
    offset: Dict[Vec, int] = {}
    flat: List[Vec] = []
    for mu in weights_sorted:
        offset[mu] = len(flat)
        flat.extend([mu] * dims[mu])
    n = len(flat)

    def integral_op(maps: Dict[Tuple[int, Vec], QMat], i: int, sign: int) -> np.ndarray:
        out = np.zeros((n, n), dtype=np.int64)
        for mu in weights_sorted:
            tgt = plus(mu, i, sign)
            if tgt not in dims:
                continue
            q = maps[(i, mu)]
            images = _matmul(zb[mu], q, dims[mu])  # lattice vectors mapped, Q-coords of tgt
            coeffs = _solve_rows(zb[tgt], images)
            for b, row in enumerate(coeffs):
                for s, c in enumerate(row):
                    if c.denominator != 1:
                        raise DenominatorError(f"non-integral action at weight {mu}")
                    out[offset[tgt] + s, offset[mu] + b] = int(c)
        return out

    e_ops = [integral_op(E, i, +1) for i in range(r)]
    f_ops = [integral_op(F, i, -1) for i in range(r)]
    return HWModule(np.array(cartan), lam, flat, e_ops, f_ops)
