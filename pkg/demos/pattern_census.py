"""Factorization patterns of quintics with a prescribed coefficient, against T(lambda) q^(n-m).

Run: python3 demos/pattern_census.py [q]
"""

import sys

from symsys.fields import make_field
from symsys.patterns import PolyFamily, census, pattern_bound_rows


def main(q=7):
    F = make_field(q)
    fam = PolyFamily.from_ascending(5, F, {4: 1})  # T^5 + T^4 + ...
    rows = pattern_bound_rows(fam, census(fam))
    print(f"n=5, q={q}, coefficient of T^4 fixed to 1: {q**4} polynomials")
    print(f"{'lambda':10} {'total':>6} {'sqfree':>6} {'expected':>9} {'bound':>9}")
    for r in rows:
        print(f"{str(r.lam):10} {r.total:>6} {r.squarefree:>6} "
              f"{float(r.main_term):>9.1f} {float(r.total_bound):>9.1f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
