"""Generic subdiscriminants in the elementary basis, and the det(B^j) closed form.

Run: python3 demos/subdisc_identities.py
"""

from symsys.multipoly import generic_subdisc_elementary, matrix_Bj_closed_form, matrix_Bj_det


def main():
    for m in (2, 3, 4):
        for j in range(m - 1):
            print(f"m={m} j={j}:", generic_subdisc_elementary(m, j).format())
    print()
    m, k = 4, 2
    for j in range(1, m - k + 1):
        d = matrix_Bj_det(m, k, j)
        same = d == matrix_Bj_closed_form(m, k, j)
        print(f"det B^{j} (m={m}, k={k}) = {d.format()}   closed form agrees: {same}")


if __name__ == "__main__":
    main()
