"""Prime factorisations of q^d - 1, from the bundled table or computed."""

from __future__ import annotations

import logging
from functools import lru_cache
from importlib import resources
from typing import Dict, Tuple

import sympy

log = logging.getLogger(__name__)

#: cyclotomic values above this many bits are not handed to the factoriser
DEFAULT_BUDGET_BITS = 320


class FactorBudgetError(RuntimeError):
    """A needed factorisation exceeds the configured budget."""


@lru_cache(maxsize=None)
def _factor_table() -> Dict[Tuple[int, int], Dict[int, int]]:
    table: Dict[Tuple[int, int], Dict[int, int]] = {}
    text = resources.files("hurwitz.data").joinpath("factors.dat").read_text()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        q, d, *parts = line.split()
        fac: Dict[int, int] = {}
        for part in parts:
            prime, _, e = part.partition("^")
            fac[int(prime)] = int(e or 1)
        table[(int(q), int(d))] = fac
    return table


def format_factorization(fac: Dict[int, int]) -> str:
    return " ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fac.items()))


@lru_cache(maxsize=4096)
def _factor_cyclotomic_value(q: int, k: int, budget_bits: int) -> Tuple[Tuple[int, int], ...]:
    x = sympy.Symbol("x")
    val = int(sympy.cyclotomic_poly(k, x).subs(x, q))
    if val.bit_length() > budget_bits:
        raise FactorBudgetError(f"Phi_{k}({q}) has {val.bit_length()} bits; enlarge the factor table")
    return tuple(sorted(sympy.factorint(val).items()))


def factor_q_power_minus_one(q: int, d: int, budget_bits: int = DEFAULT_BUDGET_BITS) -> Dict[int, int]:
    """Prime factorisation of q^d - 1 as {prime: exponent}."""
    hit = _factor_table().get((q, d))
    if hit is not None:
        return dict(hit)
    fac: Dict[int, int] = {}
    for k in sympy.divisors(d):
        for prime, e in _factor_cyclotomic_value(q, k, budget_bits):
            fac[prime] = fac.get(prime, 0) + e
    return fac
