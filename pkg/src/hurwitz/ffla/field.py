"""Arithmetic in GF(p^n) for q = p^n <= 2**16.

Elements are plain integers 0 <= a < q.  The integer ``a = sum c_k p^k``
encodes the residue class of ``sum c_k X^k`` modulo the field modulus.  For
n = 1 this is the usual residue mod p.  Extension fields use a primitive
modulus, so X itself generates the multiplicative group and multiplication
goes through log/antilog tables.

All operations come in two flavours: ``add``/``mul``/... act elementwise on
numpy integer arrays, ``sadd``/``smul``/... on Python ints.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from importlib import resources
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import sympy

log = logging.getLogger(__name__)

MAX_Q = 2**16


class FieldError(ValueError):
    pass


def _prime_divisors(n: int) -> list:
    return sorted(sympy.factorint(n))


@lru_cache(maxsize=None)
def _modulus_table() -> Dict[Tuple[int, int], Tuple[int, ...]]:
    table: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    text = resources.files("hurwitz.data").joinpath("moduli.dat").read_text()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        p, n, *coeffs = (int(t) for t in line.split())
        if len(coeffs) != n + 1 or coeffs[-1] != 1:
            raise FieldError(f"bad modulus line: {line!r}")
        table[(p, n)] = tuple(coeffs)
    return table


def _polymulmod_p(a, b, f, p):
    """Product of coefficient lists a*b mod monic f over GF(p)."""
    n = len(f) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, n - 1, -1):
        c = res[k]
        if c:
            for j in range(n + 1):
                res[k - n + j] = (res[k - n + j] - c * f[j]) % p
    return res[:n] + [0] * max(0, n - len(res))


def _x_power_mod(e: int, f, p):
    result = [1] + [0] * (len(f) - 2)
    base = [0, 1] + [0] * (len(f) - 3) if len(f) > 2 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod_p(result, base, f, p)
        base = _polymulmod_p(base, base, f, p)
        e >>= 1
    return result


def is_primitive_poly(f: Sequence[int], p: int) -> bool:
    """True iff the monic polynomial f (ascending coefficients) is primitive over GF(p)."""
    n = len(f) - 1
    if n < 1 or f[-1] != 1 or f[0] % p == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _x_power_mod(order, list(f), p) != one:
        return False
    return all(_x_power_mod(order // r, list(f), p) != one for r in _prime_divisors(order))


def least_primitive_poly(p: int, n: int) -> Tuple[int, ...]:
    """Least monic primitive polynomial of degree n over GF(p).

    Polynomials are ordered by the integer sum c_k p^k of their lower
    coefficients.  The data table is generated with this same search.
    """
    if n == 1:
        g = int(sympy.primitive_root(p)) if p > 2 else 1
        return ((-g) % p, 1)
    for code in range(p**n):
        coeffs = [(code // p**k) % p for k in range(n)] + [1]
        if is_primitive_poly(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no primitive polynomial of degree {n} over GF({p})")


class FieldCtx:
    """The field GF(p^n).  Immutable; obtain instances through :func:`GF`."""

    def __init__(self, p: int, n: int = 1, modulus: Optional[Sequence[int]] = None):
        if not sympy.isprime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1 or p**n > MAX_Q:
            raise FieldError(f"GF({p}^{n}) unsupported (q must be <= {MAX_Q})")
        self.p = p
        self.n = n
        self.q = p**n
        if modulus is None:
            modulus = _modulus_table().get((p, n))
            if modulus is None:
                log.warning("GF(%d^%d) missing from moduli.dat; searching", p, n)
                modulus = least_primitive_poly(p, n)
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != n + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree n")
        if not is_primitive_poly(self.modulus, p):
            raise FieldError(f"modulus {self.modulus} is not primitive over GF({p})")
        q = self.q
        # primitive element: the root of the modulus
        self.gen = (-self.modulus[0]) % p if n == 1 else p
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        logt = np.full(q, -1, dtype=np.int64)
        a = 1
        for k in range(q - 1):
            exp[k] = a
            logt[a] = k
            a = self._smul_slow(a, self.gen)
        exp[q - 1:] = exp[: q - 1]
        if a != 1 or (logt[1:] < 0).any():
            raise FieldError("generator does not have order q-1")
        exp.setflags(write=False)
        logt.setflags(write=False)
        self._exp = exp
        self._log = logt
        self._pows = np.array([p**k for k in range(n)], dtype=np.int64)

    # -- slow path used only while building tables
    def _smul_slow(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if n == 1:
            return a * b % p
        da = [(a // p**k) % p for k in range(n)]
        db = [(b // p**k) % p for k in range(n)]
        prod = _polymulmod_p(da, db, list(self.modulus), p)
        return sum(c * p**k for k, c in enumerate(prod))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.n, self.modulus) == (
            other.p,
            other.n,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __reduce__(self):
        return (GF, (self.p, self.n))

    @property
    def is_prime(self) -> bool:
        return self.n == 1

    def modulus_line(self) -> str:
        return f"{self.p} {self.n} " + " ".join(str(c) for c in self.modulus)

    # ---------------------------------------------------------------- digits
    def to_digits(self, a: np.ndarray) -> np.ndarray:
        """Split into GF(p) coordinate planes, shape (n,) + a.shape."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // pk) % self.p for pk in self._pows])

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return np.tensordot(self._pows, np.asarray(d, dtype=np.int64) % self.p, axes=1)

    # ------------------------------------------------------ array arithmetic
    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(self.to_digits(a) + self.to_digits(b))

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits(-self.to_digits(a))

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return a * b % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    # ------------------------------------------------------ scalar arithmetic
    def sadd(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.add(a, b))

    def sneg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return int(self.neg(a))

    def ssub(self, a: int, b: int) -> int:
        return self.sadd(a, self.sneg(b))

    def smul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def sinv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.n == 1:
            return pow(a, -1, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def spow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        if self.n == 1:
            return pow(a, e, self.p)
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> GF(p) -> GF(q)."""
        return k % self.p

    def elements(self) -> range:
        return range(self.q)

    def basis(self) -> list:
        """GF(p)-basis 1, X, ..., X^(n-1) of GF(q)."""
        return [int(pk) for pk in self._pows]

    def primitive_element(self) -> int:
        return self.gen

    def root_of_unity(self, m: int) -> int:
        """An element of exact multiplicative order m (requires m | q-1)."""
        if (self.q - 1) % m:
            raise FieldError(f"{self} has no element of order {m}")
        return self.spow(self.gen, (self.q - 1) // m)

    def frobenius(self, a: int) -> int:
        return self.spow(a, self.p)

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)


@lru_cache(maxsize=None)
def GF(p: int, n: int = 1) -> FieldCtx:
    """Shared field context for GF(p^n)."""
    return FieldCtx(p, n)


def field_for_q(q: int) -> FieldCtx:
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, n),) = fac.items()
    return GF(int(p), int(n))
