import math
from fractions import Fraction
from itertools import product

import pytest

from symsys.fields import make_field
from symsys.patterns import (
    PatternFrame, PolyFamily, T_lambda, bound_patterns, build_G, census, correspondence_check,
    family_hypotheses, is_type_lambda, pattern_bound_rows, perm_pattern_count,
    prescribed_degree_data, w_lambda,
)
from symsys.unipoly import Lambda, UniPoly, partitions, pattern

L = Lambda.parse


def test_w_and_T_examples():
    assert w_lambda(L("1^3")) == 6 and T_lambda(L("1^3")) == Fraction(1, 6)
    assert w_lambda(L("1 2")) == 2 and T_lambda(L("1 2")) == Fraction(1, 2)
    assert w_lambda(L("2")) == 2


def test_perm_counts():
    assert perm_pattern_count(3, L("3")) == 2
    assert perm_pattern_count(4, L("2^2")) == 3
    for n in range(1, 8):
        assert perm_pattern_count(n, L(f"1^{n}")) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_T_sums_to_one(n):
    assert sum(T_lambda(lam) for lam in partitions(n)) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_perm_count_times_w(n):
    for lam in partitions(n):
        assert perm_pattern_count(n, lam) * w_lambda(lam) == math.factorial(n)


def test_frame_offsets_tile():
    F3 = make_field(3)
    for n in range(1, 6):
        for lam in partitions(n):
            fr = PatternFrame(F3, lam)
            covered = sorted(p for b in fr.blocks for p in range(b.offset, b.offset + b.i))
            assert covered == list(range(n))


def test_type_lambda_examples():
    F3 = make_field(3)
    assert all(is_type_lambda(x, PatternFrame(F3, L("1^3"))) for x in product(range(3), repeat=3))
    fr = PatternFrame(F3, L("2"))
    assert not is_type_lambda((1, 1), fr)
    assert is_type_lambda((0, 1), fr)


def test_build_G_identity_pattern():
    F5 = make_field(5)
    fr = PatternFrame(F5, L("1^3"))
    x = (1, 3, 3)
    assert build_G(x, fr) == UniPoly.from_roots(F5, x)


def test_build_G_irreducible_quadratic():
    F3 = make_field(3)
    fr = PatternFrame(F3, L("2"))
    for x in [(0, 1), (1, 2), (2, 0)]:
        g = build_G(x, fr)
        assert g.degree == 2 and pattern(g) == L("2")


@pytest.mark.parametrize("n", range(1, 5))
def test_build_G_pattern_iff_type(n):
    F3 = make_field(3)
    for lam in partitions(n):
        fr = PatternFrame(F3, lam)
        for x in product(range(3), repeat=n):
            g = build_G(x, fr)
            assert g.degree == n
            assert (pattern(g) == lam) == is_type_lambda(x, fr)


def test_census_examples():
    F3 = make_field(3)
    c = census(PolyFamily(2, F3))
    assert c.total(L("1^2")) == 6 and c.total(L("2")) == 3 and c.family_size == 9
    F5 = make_field(5)
    assert census(PolyFamily(2, F5)).total(L("2")) == (25 - 5) // 2


@pytest.mark.parametrize("q,n", [(q, n) for q in (3, 5) for n in range(1, 5)])
def test_census_totals(q, n):
    c = census(PolyFamily(n, make_field(q)))
    assert sum(t for _, t, _ in c.rows()) == q**n == c.family_size


def test_prescribed_family_members():
    F5 = make_field(5)
    fam = PolyFamily.from_ascending(4, F5, {3: 1, 1: 2})
    got = list(fam.members())
    assert len(got) == 25
    assert all(f.coeff(3) == 1 and f.coeff(1) == 2 and f.is_monic() for f in got)
    assert fam.prescribed(4, F5, {1: 1, 3: 2}).constraints == fam.constraints


def test_correspondence_examples():
    F3 = make_field(3)
    r = correspondence_check(PolyFamily(2, F3), L("1^2"))
    assert (r.squarefree, r.points) == (3, 6) and r.passed
    r = correspondence_check(PolyFamily(2, F3), L("2"))
    assert (r.squarefree, r.points) == (3, 6) and r.passed


@pytest.mark.parametrize("n", range(1, 4))
def test_correspondence_empty_family(n):
    F3 = make_field(3)
    fam = PolyFamily(n, F3)
    c = census(fam)
    for lam in partitions(n):
        assert correspondence_check(fam, lam, c).passed


def test_correspondence_prescribed_q5_n3():
    F5 = make_field(5)
    fam = PolyFamily.from_ascending(3, F5, {2: 1})
    c = census(fam)
    for lam in partitions(3):
        assert correspondence_check(fam, lam, c).passed


def test_bound_examples():
    n, q = 5, 7
    assert prescribed_degree_data([1]) == (1, 0)
    lam = L("1^5")
    sq, tot = bound_patterns(n, 1, 1, 0, q, lam)
    assert sq == lam.T() * n**2 * q ** (n - 2)
    assert tot == lam.T() * 2 * n**2 * q ** (n - 2)
    assert prescribed_degree_data([1, 2]) == (2, 1)
    sq, _ = bound_patterns(n, 2, 2, 1, q, lam)
    assert sq == lam.T() * (17 * 4 + n**2 * 2) * q ** (n - 3)
    sq, _ = bound_patterns(4, 1, 1, 0, q, L("1^4"))
    assert sq == Fraction(1, 24) * 16 * q**2


def test_family_degree_data_matches_prescribed():
    F7 = make_field(7)
    fam = PolyFamily.prescribed(5, F7, {1: 1, 2: 3})
    assert fam.degree_data() == prescribed_degree_data([1, 2])


def test_hypotheses_and_bounds_small():
    F7 = make_field(7)
    fam = PolyFamily.prescribed(5, F7, {1: 2})
    hyp = family_hypotheses(fam)
    assert hyp.all_hold and hyp.A1 == "pass-exact"
    rows = pattern_bound_rows(fam, census(fam))
    assert all(r.total_ok and r.squarefree_ok for r in rows)


def test_late_variable_flagged():
    F7 = make_field(7)
    fam = PolyFamily.prescribed(5, F7, {3: 1})
    assert not family_hypotheses(fam).no_late_variables
    with pytest.raises(ValueError):
        fam.as_system()
