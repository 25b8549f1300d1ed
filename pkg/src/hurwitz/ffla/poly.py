"""Univariate polynomials over a FieldCtx.

A polynomial is a tuple of field elements in ascending degree with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .field import FieldCtx

Poly = Tuple[int, ...]


def trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def deg(f: Poly) -> int:
    return len(f) - 1


def monic(F: FieldCtx, f: Poly) -> Poly:
    if not f:
        return f
    c = F.sinv(f[-1])
    return tuple(F.smul(a, c) for a in f)


def add(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return trim(F.sadd(a, b) for a, b in zip(f, g))


def sub(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    return add(F, f, tuple(F.sneg(b) for b in g))


def mul(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    res = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    res[i + j] = F.sadd(res[i + j], F.smul(a, b))
    return trim(res)


def divmod_(F: FieldCtx, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = F.sinv(g[-1])
    if len(r) <= dg:
        return (), trim(r)
    quo = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            c = F.smul(c, inv_lead)
            quo[k - dg] = c
            for j in range(dg + 1):
                if g[j]:
                    r[k - dg + j] = F.ssub(r[k - dg + j], F.smul(c, g[j]))
    return trim(quo), trim(r[:dg])


def rem(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    return divmod_(F, f, g)[1]


def gcd(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    f, g = trim(f), trim(g)
    while g:
        f, g = g, rem(F, f, g)
    return monic(F, f)


def lcm(F: FieldCtx, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    return monic(F, divmod_(F, mul(F, f, g), gcd(F, f, g))[0])


def derivative(F: FieldCtx, f: Poly) -> Poly:
    return trim(F.smul(F.from_int(k), f[k]) for k in range(1, len(f)))


def mulmod(F: FieldCtx, f: Poly, g: Poly, m: Poly) -> Poly:
    return rem(F, mul(F, f, g), m)


def powmod(F: FieldCtx, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = rem(F, f, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return rem(F, result, m)


def evaluate(F: FieldCtx, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.sadd(F.smul(acc, x), c)
    return acc


def pth_root(F: FieldCtx, f: Poly) -> Poly:
    """g with g^p = f, for f whose exponents are all divisible by p."""
    p = F.p
    # inverse Frobenius on coefficients: a -> a^(q/p)
    e = F.q // p
    return trim(F.spow(f[k], e) for k in range(0, len(f), p))


def squarefree_factorization(F: FieldCtx, f: Poly) -> List[Tuple[Poly, int]]:
    """Pairs (a_i, i) with f = lead * prod a_i^i and each a_i squarefree."""
    f = monic(F, trim(f))
    out: List[Tuple[Poly, int]] = []
    _sqf(F, f, 1, out)
    merged: dict = {}
    for a, i in out:
        merged[i] = mul(F, merged.get(i, (1,)), a)
    return sorted(((monic(F, a), i) for i, a in merged.items() if deg(a) > 0), key=lambda t: t[1])


def _sqf(F: FieldCtx, f: Poly, mult: int, out: list) -> None:
    if deg(f) <= 0:
        return
    df = derivative(F, f)
    if not df:
        _sqf(F, pth_root(F, f), mult * F.p, out)
        return
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((z, i * mult))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if deg(c) > 0:
        _sqf(F, pth_root(F, c), mult * F.p, out)


def distinct_degree_factorization(F: FieldCtx, f: Poly) -> List[Tuple[Poly, int]]:
    """For squarefree monic f: pairs (g_d, d), g_d the product of the degree-d factors."""
    f = monic(F, f)
    out = []
    x: Poly = (0, 1)
    h = rem(F, x, f) if deg(f) > 0 else ()
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = rem(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def is_irreducible(F: FieldCtx, f: Poly) -> bool:
    f = trim(f)
    if deg(f) <= 0:
        return False
    if deg(f) == 1:
        return True
    sq = squarefree_factorization(F, f)
    if len(sq) != 1 or sq[0][1] != 1:
        return False
    ddf = distinct_degree_factorization(F, f)
    return len(ddf) == 1 and ddf[0][1] == deg(f)


def from_roots(F: FieldCtx, roots: Sequence[int]) -> Poly:
    f: Poly = (1,)
    for r in roots:
        f = mul(F, f, (F.sneg(r), 1))
    return f
