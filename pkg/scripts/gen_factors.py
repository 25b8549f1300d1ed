"""Regenerate src/hurwitz/data/factors.dat: factorisations of q^d - 1."""

import sympy

from hurwitz.ffla.factor import format_factorization

QS = [q for q in range(2, 65) if len(sympy.factorint(q)) == 1]
print("# q d factorisation of q^d - 1 (prime^exp ...)")
for q in QS:
    for d in range(1, 31 if q < 10 else 16):
        print(q, d, format_factorization(sympy.factorint(q**d - 1)))
