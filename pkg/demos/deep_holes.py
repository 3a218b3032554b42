"""Which words T^(k+d) + ... over F_7 are deep holes of the k=3 Reed-Solomon code?

Run: python3 demos/deep_holes.py
"""

from itertools import product

from symsys.fields import make_field
from symsys.rscodes import RSCode, TailPoly, distance, good_zero_search, word_of


def main():
    F = make_field(7)
    k = 3
    code = RSCode(F, k)
    C = code.codewords()
    print(f"q=7, k={k}, n={code.n}, covering radius {code.covering_radius}")
    for d in (1, 2):
        deep = short = 0
        for coeffs in product(range(7), repeat=d):
            tail = TailPoly(F, k, coeffs)
            dist = distance(word_of(tail, code), code, C)
            hit = good_zero_search(tail, code)
            deep += dist == code.covering_radius
            short += hit is not None
        print(f"d={d}: {7**d} tails, {deep} deep holes, {short} with a good zero")
    print("first good zero of T^4:", good_zero_search(TailPoly(F, k, (0,)), code))


if __name__ == "__main__":
    main()
