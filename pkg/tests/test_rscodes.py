from fractions import Fraction
from itertools import product

import pytest

from symsys.fields import QQ, CapExceeded, make_field
from symsys.multipoly import (
    WeightSpec, complete_homogeneous, elementary_names, to_elementary,
)
from symsys.parsing import parse_mpoly
from symsys.radical import RadicalValue
from symsys.rscodes import (
    H_expr, H_f_eval, H_f_expr, N1_bound, N2_bound, N_lower, RSCode, TailPoly, bounds_report,
    colex_subsets, count_error_bound, criteria, distance, domain_flags, good_zero_search,
    is_deep_hole, q_exceeds_power, word_of,
)
from symsys.unipoly import UniPoly

F5, F7 = make_field(5), make_field(7)


def T(F, n, lower=()):
    return UniPoly(F, list(lower) + [0] * (n - len(lower)) + [1])


def test_codeword_distance_zero():
    code = RSCode(F5, 2)
    w = code.word(UniPoly(F5, [3, 2]))
    assert distance(w, code) == 0
    assert not is_deep_hole(w, code)


def test_distance_examples():
    code = RSCode(F5, 2)
    assert code.n == 4 and code.covering_radius == 2
    assert distance(code.word(T(F5, 2)), code) == 2
    assert distance(code.word(T(F5, 3)), code) == 2
    assert is_deep_hole(code.word(T(F5, 3)), code)


@pytest.mark.parametrize("q,k", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_degree_k_words_are_deep_holes(q, k):
    F = make_field(q)
    code = RSCode(F, k)
    C = code.codewords()
    for lead in range(1, q):
        for lower in product(range(q), repeat=k):
            f = UniPoly(F, list(lower) + [lead])
            assert is_deep_hole(code.word(f), code, C)


def test_codeword_budget():
    with pytest.raises(CapExceeded):
        RSCode(F7, 3).codewords(budget=100)


def test_code_validation():
    with pytest.raises(ValueError):
        RSCode(F5, 4)
    with pytest.raises(ValueError):
        RSCode(F5, 1, (1, 1, 2))


def E(text, d):
    return parse_mpoly(text, QQ, elementary_names(d))


def test_H_examples():
    assert H_expr(1) == E("E1", 1)
    assert H_expr(2) == E("E1^2 - E2", 2)
    assert H_expr(3) == E("E1^3 - 2*E1*E2 + E3", 3)


@pytest.mark.parametrize("d", range(1, 5))
def test_H_is_complete_homogeneous(d):
    for nv in range(d, d + 2):
        h = to_elementary(complete_homogeneous(nv, d))
        assert h == H_expr(d).extend(nv, elementary_names(nv))


@pytest.mark.parametrize("d", range(1, 6))
def test_H_f_unit_linear_in_last(d):
    tail = TailPoly(F7, d + 1, tuple(range(1, d + 1)))
    H = H_f_expr(tail)
    last = d - 1
    assert max(e[last] for e in H.terms) == 1
    lin = {e: c for e, c in H.terms.items() if e[last] == 1}
    # unsigned elementary variables give the leading coefficient (-1)^(d-1)
    assert lin == {tuple([0] * last + [1]): F7.coerce((-1) ** (d - 1))}
    assert H.weighted_degree(WeightSpec.elementary(d).weights) == d


def test_H_f_eval_example():
    tail = TailPoly(F5, 1, (0,))
    assert H_f_eval(tail, (1, 2)) == 3
    assert H_f_eval(tail, (1, 2), "remainder") == 3


def test_H_f_first_tail_is_sum():
    tail = TailPoly(F7, 3, (0,))
    for x in [(1, 2, 3, 4), (0, 0, 6, 6), (5, 5, 5, 5)]:
        assert H_f_eval(tail, x) == sum(x) % 7


@pytest.mark.parametrize("k,d", [(k, d) for k in (1, 2, 3) for d in (1, 2)])
def test_H_f_two_methods_exhaustive(k, d):
    for coeffs in product(range(7), repeat=d):
        tail = TailPoly(F7, k, coeffs)
        H = H_f_expr(tail)
        for x in product(range(7), repeat=k + 1):
            assert H_f_eval(tail, x) == H_f_eval(tail, x, "remainder")
        assert H.nvars == d


def test_colex_order():
    subs = colex_subsets([1, 2, 3, 4, 5, 6], 4)
    assert subs[:3] == [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5)]
    assert len(subs) == 15


def test_good_zero_examples():
    assert good_zero_search(TailPoly(F5, 2, (0,))) is None
    assert good_zero_search(TailPoly(F7, 3, (0,))) == (2, 3, 4, 5)


@pytest.mark.parametrize("d", [1, 2])
def test_good_zero_gives_short_distance(d):
    k = 3
    code = RSCode(F7, k)
    C = code.codewords()
    found_any = False
    for coeffs in product(range(7), repeat=d):
        tail = TailPoly(F7, k, coeffs)
        x = good_zero_search(tail, code)
        if x is None:
            continue
        found_any = True
        assert len(set(x)) == k + 1 and 0 not in x
        assert H_f_eval(tail, x, "remainder") == 0
        dist = distance(word_of(tail, code), code, C)
        assert dist <= 7 - k - 2
        assert not is_deep_hole(word_of(tail, code), code, C)
    assert found_any


def test_tail_regime():
    assert TailPoly(F7, 3, (0,)).in_regime()
    assert not TailPoly(F7, 3, (0, 0, 0)).in_regime()
    with pytest.raises(ValueError):
        TailPoly(F7, 3, ())


# ---------------------------------------------------------------------------
# bounds


def test_N_lower_decomposes():
    for q, k, d in [(331, 10, 3), (1031, 12, 4), (49, 5, 3), (7, 3, 1), (128, 9, 3)]:
        total = RadicalValue.half_power(q, 2 * k) - count_error_bound(q, k, d) - N1_bound(q, k, d) - N2_bound(q, k, d)
        assert N_lower(q, k, d) == total


def test_N_bounds_closed_form():
    q, k, d = 331, 10, 3
    face = q ** (k - 1) + RadicalValue.half_power(q, k + d - 2) * (1 + Fraction(1, q)) * (
        RadicalValue(q, (d - 1) ** (k - d + 1)) + RadicalValue.half_power(q, -1) * (6 * (d + 2) ** (k + 1))
    )
    assert N1_bound(q, k, d) == face * (k + 1)
    assert N2_bound(q, k, d) == face * Fraction((k + 1) * k, 2)


def test_criteria_eps_one_d_three():
    c = criteria(3, 1)
    assert c["sharpened"].k_threshold == 3 and c["sharpened"].k_min == 10
    assert c["constant-14"].k_threshold == 9
    assert c["constant-1"].k_threshold == 19 and c["constant-1"].k_min == 20
    assert c["sharpened"].q_min(10, 3, Fraction(1)) == 325
    assert c["sharpened"].q_min(20, 3, Fraction(1)) == 442


@pytest.mark.parametrize("eps", [Fraction(1, 2), Fraction(1), Fraction(2)])
@pytest.mark.parametrize("d", [3, 4, 5])
def test_criteria_ordering(eps, d):
    c = criteria(d, eps)
    assert c["sharpened"].k_bound <= c["constant-14"].k_bound <= c["constant-1"].k_bound
    assert c["sharpened"].k_threshold <= c["constant-14"].k_threshold <= c["constant-1"].k_threshold


def test_q_exceeds_power_exact():
    # 12 * 3^(5/2) = 187.06...
    assert q_exceeds_power(12, 3, Fraction(1, 2)) == 188
    assert q_exceeds_power(1, 2, Fraction(2)) == 17
    assert q_exceeds_power(14, 3, Fraction(1)) == 379


def test_bounds_report_domain():
    r = bounds_report(7, 3, 1, 1)
    assert not r.in_domain and not r.domain["d>=3"]
    assert r.verdicts["sharpened"]["holds"] is None
    r = bounds_report(331, 10, 3, 1)
    assert r.in_domain
    assert r.verdicts["sharpened"]["holds"] is True
    assert r.verdicts["constant-1"]["holds"] is False
    assert r.N_lower == r.N_lower_split


def test_domain_flags_non_prime_power():
    f = domain_flags(12, 5, 3)
    assert not f["q-prime-power"] and not f["char-ok"]


def test_char_flag():
    # char 2 divides one of k+1, ..., d-1 once k >= 1
    assert not domain_flags(64, 10, 3)["char-ok"]
    assert domain_flags(331, 10, 3)["char-ok"]
