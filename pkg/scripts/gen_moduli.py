"""Regenerate src/hurwitz/data/moduli.dat (least primitive polynomials)."""

import sympy

from hurwitz.ffla.field import MAX_Q, least_primitive_poly

lines = ["# p n c0 c1 ... cn  (monic modulus, ascending degree; root is the primitive element)"]
for p in sympy.primerange(2, MAX_Q):
    n = 1
    while p**n <= MAX_Q:
        if n > 1 or p < 1000:
            f = least_primitive_poly(p, n)
            lines.append(f"{p} {n} " + " ".join(map(str, f)))
        n += 1
print("\n".join(lines))
