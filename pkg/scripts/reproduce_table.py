"""Print the admissible-triple table and the verdicts for small q.

    python3 scripts/reproduce_table.py [--computed] [--policy strict]
"""

import argparse

from hurwitz.scott import render_table, verdict


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--computed", action="store_true", help="use computed reduced-module values")
    ap.add_argument("--policy", default="standard", choices=["standard", "strict"])
    args = ap.parse_args()
    print(render_table(policy=args.policy, computed=args.computed))
    print()
    for fam in ("F4", "E6", "SE6", "2E6", "E7", "SE7", "E8"):
        for q in (2, 3, 4, 5, 7, 8, 9):
            v = verdict(fam, q, policy=args.policy, computed=args.computed)
            note = v.reason if not v.possible else v.constraints.get("bounds", f"{len(v.triples)} triple types")
            print(f"{fam}({q}): {v.status}  {note}")


if __name__ == "__main__":
    main()
