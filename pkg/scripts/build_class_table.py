"""Write src/hurwitz/data/classes.dat from the rows below.

The rows are entered by hand.  Jordan partitions of the unipotent classes
used by the search are computed from Levi-product representatives in the
constructed groups and appended, then the checksum footer is written.

    python3 scripts/build_class_table.py
"""

from __future__ import annotations

from pathlib import Path

from hurwitz.chevgrp import chevalley_group, levi_regular_unipotent, load_group
from hurwitz.classdata import LEVI_REPS, checksum, format_partition
from hurwitz.ffla import jordan_partition

OUT = Path(__file__).resolve().parents[1] / "src" / "hurwitz" / "data" / "classes.dat"

HEADER = """\
# Conjugacy classes of elements of orders 2, 3, 7 and their fixed-space dimensions.
# family|label|order|u/s|dM|dL|cond|chiM|chiL|flags|partitions
#   u/s     unipotent or semisimple; unipotent rows exist only when p equals the order
#   dM, dL  fixed-space dimension on the minimal / adjoint module ("-" = not given)
#   cond    existence condition on q: all, q=1(k), q=-1(k), q=+-1(k)
#   flags   Mp=<d>: fixed-space dimension on the 25-dim quotient M' (F4, p = 3), as stated
#           Mpc=<d>: the same dimension as computed, where it differs from Mp
#           scM=<a>,<b>: dM of the two classes of the simply connected cover
#           same=<label>: another class with identical dimensions (not separable)
#   partitions  computed Jordan partitions per module, e.g. M:3^2 2^4 1^6
# Labels: "~" marks a short-root subsystem, e.g. ~A2+A1.  2E6 uses the E6 rows
# with q replaced by -q in the congruence conditions.
# E7 and E8 rows are the classes passing the bounds; order-7 semisimple rows are
# not available and are omitted.
"""

# family, label, order, u/s, dM, dL, cond, chiM, chiL, flags
ROWS = [
    # F4, order 2
    ("F4", "A1", 2, "u", 20, 36, "all", "", "", ""),
    ("F4", "~A1", 2, "u", 16, 36, "all", "", "", ""),
    ("F4", "~A1(2)", 2, "u", 16, 31, "all", "", "", ""),
    ("F4", "A1+~A1", 2, "u", 14, 28, "all", "", "", ""),
    ("F4", "2A", 2, "s", 14, 24, "all", "2", "-4", "Mp=13"),
    ("F4", "2B", 2, "s", 10, 36, "all", "-6", "20", ""),
    # F4, order 3
    ("F4", "A1", 3, "u", 20, 36, "all", "", "", ""),
    ("F4", "~A1", 3, "u", 16, 30, "all", "", "", ""),
    ("F4", "A1+~A1", 3, "u", 14, 24, "all", "", "", ""),
    ("F4", "A2", 3, "u", 14, 22, "all", "", "", ""),
    ("F4", "~A2", 3, "u", 9, 22, "all", "", "", ""),
    ("F4", "A2+~A1", 3, "u", 10, 18, "all", "", "", "Mp=10;Mpc=9"),
    ("F4", "~A2+A1", 3, "u", 9, 18, "all", "", "", "Mp=9"),
    ("F4", "3A", 3, "s", 14, 22, "all", "8", "7", ""),
    ("F4", "3C", 3, "s", 8, 16, "all", "-1", "-2", ""),
    ("F4", "3D", 3, "s", 8, 22, "all", "-1", "7", ""),
    # F4, order 7
    ("F4", "C3", 7, "u", 4, 10, "all", "", "", ""),
    ("F4", "F4(a2)", 7, "u", 4, 8, "all", "", "", ""),
    ("F4", "7L", 7, "s", 4, 12, "q=+-1(7)", "", "", "Mp=3"),
    ("F4", "7N", 7, "s", 2, 10, "all", "-2", "3", "Mp=1"),
    ("F4", "7O", 7, "s", 4, 8, "q=+-1(7)", "", "", "Mp=3"),
    # E6, order 2
    ("E6", "A1", 2, "u", 21, 56, "all", "", "", ""),
    ("E6", "2A1", 2, "u", 17, 46, "all", "", "", ""),
    ("E6", "3A1", 2, "u", 15, 40, "all", "", "", ""),
    ("E6", "2A", 2, "s", 15, 38, "all", "3", "-2", ""),
    ("E6", "2B", 2, "s", 11, 46, "all", "-5", "14", ""),
    # E6, order 3
    ("E6", "A1", 3, "u", 21, 56, "all", "", "", ""),
    ("E6", "2A1", 3, "u", 17, 46, "all", "", "", ""),
    ("E6", "3A1", 3, "u", 15, 38, "all", "", "", ""),
    ("E6", "A2", 3, "u", 15, 36, "all", "", "", ""),
    ("E6", "A2+A1", 3, "u", 12, 32, "all", "", "", ""),
    ("E6", "2A2", 3, "u", 9, 31, "all", "", "", ""),
    ("E6", "A2+2A1", 3, "u", 11, 28, "all", "", "", ""),
    ("E6", "2A2+A1", 3, "u", 9, 27, "all", "", "", ""),
    ("E6", "3A", 3, "s", 15, 36, "all", "9", "15", ""),
    ("E6", "3B", 3, "s", 6, 36, "q=1(3)", "", "15", ""),
    ("E6", "3C", 3, "s", 9, 24, "all", "0", "-3", ""),
    ("E6", "3D", 3, "s", 9, 30, "all", "0", "6", ""),
    # E6, order 7
    ("E6", "A4+A1", 7, "u", 6, 16, "all", "", "", ""),
    ("E6", "A5", 7, "u", 5, 14, "all", "", "", ""),
    ("E6", "D5(a1)", 7, "u", 6, 14, "all", "", "", ""),
    ("E6", "E6(a3)", 7, "u", 5, 12, "all", "", "", ""),
    ("E6", "7K", 7, "s", 2, 16, "q=1(7)", "", "", ""),
    ("E6", "7L", 7, "s", 5, 16, "q=+-1(7)", "", "", ""),
    ("E6", "7M", 7, "s", 3, 14, "q=1(7)", "", "", ""),
    ("E6", "7N", 7, "s", 3, 12, "all", "-1", "1", ""),
    ("E6", "7O", 7, "s", 5, 12, "q=+-1(7)", "", "", ""),
    # E7
    ("E7", "(3A1)'", 2, "u", 32, 71, "all", "", "", ""),
    ("E7", "4A1", 2, "u", 28, 70, "all", "", "", ""),
    ("E7", "A1D6", 2, "s", "-", 69, "all", "", "", "scM=24,32"),
    ("E7", "eA7", 2, "s", "-", 63, "all", "", "", ""),
    ("E7", "A2+2A1", 3, "u", 24, 51, "all", "", "", ""),
    ("E7", "2A2", 3, "u", 20, 49, "all", "", "", ""),
    ("E7", "A2+3A1", 3, "u", 21, 49, "all", "", "", ""),
    ("E7", "2A2+A1", 3, "u", 20, 45, "all", "", "", ""),
    ("E7", "A6T1", 3, "s", 14, 49, "all", "", "", ""),
    ("E7", "D5A1T1", 3, "s", 20, 49, "all", "", "", ""),
    ("E7", "A2A5", 3, "s", 20, 43, "all", "", "", ""),
    ("E7", "D5(a1)", 7, "u", 14, 27, "all", "", "", ""),
    ("E7", "A4+A2", 7, "u", 12, 27, "all", "", "", ""),
    ("E7", "(A5)'", 7, "u", 12, 25, "all", "", "", "same=D5(a1)+A1"),
    ("E7", "A5+A1", 7, "u", 9, 25, "all", "", "", ""),
    ("E7", "D5(a1)+A1", 7, "u", 12, 25, "all", "", "", "same=(A5)'"),
    ("E7", "D6(a2)", 7, "u", 9, 23, "all", "", "", ""),
    ("E7", "E6(a3)", 7, "u", 12, 23, "all", "", "", ""),
    ("E7", "E7(a5)", 7, "u", 9, 21, "all", "", "", ""),
    ("E7", "A6", 7, "u", 8, 19, "all", "", "", ""),
    # SE7 involutions (simply connected cover, p odd)
    ("SE7", "A1D6/24", 2, "s", 24, 69, "all", "", "", ""),
    ("SE7", "A1D6/32", 2, "s", 32, 69, "all", "", "", ""),
    # E8
    ("E8", "4A1", 2, "u", "-", 128, "all", "", "", ""),
    ("E8", "D8", 2, "s", "-", 120, "all", "", "", ""),
    ("E8", "2A2", 3, "u", "-", 92, "all", "", "", ""),
    ("E8", "2A2+A1", 3, "u", "-", 88, "all", "", "", ""),
    ("E8", "2A2+2A1", 3, "u", "-", 84, "all", "", "", ""),
    ("E8", "D7T1", 3, "s", "-", 92, "all", "", "", ""),
    ("E8", "E6T2", 3, "s", "-", 86, "all", "", "", ""),
    ("E8", "A8", 3, "s", "-", 80, "all", "", "", ""),
    ("E8", "A4+A3", 7, "u", "-", 48, "all", "", "", ""),
    ("E8", "A5+A1", 7, "u", "-", 46, "all", "", "", "same=D5(a1)+A2"),
    ("E8", "D5(a1)+A2", 7, "u", "-", 46, "all", "", "", "same=A5+A1"),
    ("E8", "D6(a2)", 7, "u", "-", 44, "all", "", "", "same=E6(a3)+A1"),
    ("E8", "E6(a3)+A1", 7, "u", "-", 44, "all", "", "", "same=D6(a2)"),
    ("E8", "E7(a5)", 7, "u", "-", 42, "all", "", "", ""),
    ("E8", "E8(a7)", 7, "u", "-", 40, "all", "", "", ""),
    ("E8", "A6", 7, "u", "-", 38, "all", "", "", ""),
    ("E8", "A6+A1", 7, "u", "-", 36, "all", "", "", ""),
]

def partitions_for(family: str, label: str, order: int) -> str:
    idx = LEVI_REPS[(family, label, order)]
    parts = []
    for kind in ("M", "L"):
        g = levi_regular_unipotent(chevalley_group(family, order, kind), idx)
        parts.append(f"{kind}:{format_partition(jordan_partition(g))}")
    if family == "F4" and order == 3:
        mp = load_group("F4", 3, "M'")
        g = mp.transport(levi_regular_unipotent(mp.base(), idx))
        parts.append(f"Mp:{format_partition(jordan_partition(g))}")
    return ";".join(parts)


def main() -> None:
    lines = []
    for fam, label, order, us, dm, dl, cond, chim, chil, flags in ROWS:
        part = partitions_for(fam, label, order) if (fam, label, order) in LEVI_REPS else ""
        lines.append("|".join(str(v) for v in (fam, label, order, us, dm, dl, cond, chim, chil, flags, part)))
    body = HEADER + "\n".join(lines) + "\n"
    OUT.write_text(body + f"# checksum sha256 {checksum(body)}\n")
    print(f"wrote {len(lines)} records to {OUT}")


if __name__ == "__main__":
    main()
