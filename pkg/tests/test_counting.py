import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from symsys.counting import (
    BoundParams, Predicate, bound_hypersurface, bound_slice, bound_thm_main, bound_Vneq,
    count_points, count_with_bounds, nonempty_criterion, nonempty_threshold, p_l,
)
from symsys.fields import CapExceeded, make_field
from symsys.multipoly import MPoly, elementary_names
from symsys.parsing import parse_mpoly
from symsys.radical import RadicalValue
from symsys.systems import SymmetricSystem, check_assumption

F5 = make_field(5)


def linear_sum(F, m=3):
    return sum((MPoly.var(F, m, i) for i in range(1, m)), MPoly.var(F, m, 0))


def test_count_examples():
    f = [linear_sum(F5)]
    assert count_points(f, F5, "all").exact_count == 25
    assert count_points(f, F5, "distinct").exact_count == 12
    r = count_points(f, F5, "slice(1,2)")
    assert r.exact_count == 5
    assert r.exact_count <= bound_slice(BoundParams(3, 1, 1, 5, delta=1))


def test_distinct_by_inclusion_exclusion():
    # x1+x2+x3 = 0 with x_i = x_j: 5 each; all equal: 3x = 0 only x = 0
    f = [linear_sum(F5)]
    slices = sum(count_points(f, F5, f"slice({i},{j})").exact_count for i, j in [(1, 2), (1, 3), (2, 3)])
    all_eq = 1
    assert count_points(f, F5, "all").exact_count - (slices - 3 * all_eq + all_eq) == 12


def test_count_against_brute_force():
    F7 = make_field(7)
    g = parse_mpoly("E1^2 + 3*E2 - 1", F7, elementary_names(2))
    sys_ = SymmetricSystem(4, 2, (g,))
    brute = 0
    for x in product(range(7), repeat=4):
        e1 = sum(x) % 7
        e2 = sum(x[i] * x[j] for i in range(4) for j in range(i + 1, 4)) % 7
        brute += (e1 * e1 + 3 * e2 - 1) % 7 == 0
    assert count_points(sys_, F7).exact_count == brute


def test_nonzero_predicates():
    f = [linear_sum(F5)]
    brute = sum(1 for x in product(range(5), repeat=3) if sum(x) % 5 == 0 and all(x))
    assert count_points(f, F5, "nonzero").exact_count == brute
    brute = sum(1 for x in product(range(5), repeat=3) if sum(x) % 5 == 0 and all(x) and len(set(x)) == 3)
    assert count_points(f, F5, "distinct-nonzero").exact_count == brute


def test_partial_pairs():
    f = [linear_sum(F5)]
    p = Predicate("distinct", pairs=((1, 2),))
    assert count_points(f, F5, p).exact_count == 20


def test_budget():
    with pytest.raises(CapExceeded):
        count_points([linear_sum(F5)], F5, budget=100)


def test_bad_predicate():
    with pytest.raises(ValueError):
        Predicate.parse("sometimes")
    with pytest.raises(ValueError):
        Predicate.parse("slice(1,1)")


def _random_system(rng):
    q = rng.choice([3, 5, 7])
    F = make_field(q)
    m = rng.randint(2, 5)
    k = rng.randint(1, m - 1)
    n = m - k
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, 2) for _ in range(n))
        terms[e] = rng.randrange(1, q)
    g = MPoly(F, n, terms, elementary_names(n))
    if g.is_zero():
        g = MPoly.var(F, n, 0)
    return SymmetricSystem(m, k, (g,)), F


def test_shard_invariance():
    rng = random.Random(2024)
    for _ in range(20):
        sys_, F = _random_system(rng)
        counts = {count_points(sys_, F, pred, shards=s).exact_count
                  for s in (1, 4, 16) for pred in ("all",)}
        assert len(counts) == 1
        counts = {count_points(sys_, F, "distinct", shards=s).exact_count for s in (1, 4, 16)}
        assert len(counts) == 1


def test_bound_main_examples():
    p = BoundParams(5, 1, 2, 11, delta=2, D=1)
    assert bound_thm_main(p, "k2") == 81312
    for q in (7, 11, 13):
        p = BoundParams(5, 1, 3, q, delta=2, D=1)
        assert bound_thm_main(p, "k3") == 56 * q**3 * (1 + Fraction(1, q))
    # D = 2: the first summand is exactly 2
    p = BoundParams(4, 1, 2, 9, delta=5, D=2)
    assert bound_thm_main(p, "k2") == RadicalValue.half_power(9, 5) * Fraction(10, 9) * (
        RadicalValue(9, 2) + RadicalValue.half_power(9, -1) * (14 * 4 * 25)
    )


def test_bound_main_errors():
    with pytest.raises(ValueError):
        bound_thm_main(BoundParams(5, 1, 2, 11), "k3")
    with pytest.raises(ValueError):
        bound_thm_main(BoundParams(5, 1, 4, 11), "general")
    with pytest.raises(ValueError):
        bound_thm_main(BoundParams(5, 1, 2, 11), "k9")


def test_bound_hypersurface_examples():
    q, m = 7, 5
    c = 1 + Fraction(1, q)
    assert bound_hypersurface(BoundParams(m, 1, 2, q, d=2), "k2") == 56 * q ** (m - 2) * c
    assert bound_hypersurface(BoundParams(m, 1, 3, q, d=3), "k3") == 1008 * q ** (m - 2) * c
    for case in ("k2", "k3", "general"):
        assert bound_hypersurface(BoundParams(6, 1, 3, q, d=1), case) == 0


def test_hyperplane_count_is_exact():
    F7 = make_field(7)
    g = parse_mpoly("E1 - 2", F7, elementary_names(3))
    sys_ = SymmetricSystem(4, 2, (g,), hypersurface=True)
    reps = count_with_bounds(sys_, F7, ("k2",))
    assert reps[0].exact_count == 7**3 and reps[0].satisfied


def test_slice_and_vneq():
    p = BoundParams(5, 1, 2, 11, delta=2, D=1)
    assert bound_slice(p) == 2662
    assert bound_Vneq(p, 10, "k2") == bound_thm_main(p, "k2") + 10 * 2662


def test_nonempty():
    assert nonempty_threshold(BoundParams(5, 1, 2, 11, delta=2, D=1)) == 144
    assert nonempty_threshold(BoundParams(5, 1, 2, 11, d=2), "hypersurface") == 144
    assert nonempty_criterion(BoundParams(5, 1, 2, 2, delta=1, D=0))
    assert not nonempty_criterion(BoundParams(5, 1, 2, 143, delta=2, D=1))


def test_p_l():
    assert p_l(3, 2) == 13 and p_l(5, 0) == 1 and p_l(5, -1) == 0


@pytest.mark.parametrize("case", ["k2", "k3", "general"])
def test_bounds_monotone_in_q(case):
    prev = None
    for q in (3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23):
        # different q means different radicands, so compare integer floors
        b = bound_thm_main(BoundParams(6, 1, 3, q, delta=3, D=2, d=3), case).floor()
        if prev is not None:
            assert b >= prev
        prev = b


LINEAR = [
    (4, 2, ["E2 - 1"], 5),
    (4, 2, ["E1 + E2 - 3"], 7),
    (5, 3, ["E2 - 1"], 7),
    (5, 2, ["E1", "E3 - 1"], 7),
]


@pytest.mark.parametrize("m,k,texts,q", LINEAR)
def test_linear_systems_meet_bounds(m, k, texts, q):
    F = make_field(q)
    n = m - k
    sys_ = SymmetricSystem(m, k, tuple(parse_mpoly(t, F, elementary_names(n)) for t in texts))
    assert check_assumption(sys_, "A1").verdict == "pass-exact"
    assert check_assumption(sys_, "A2").verdict == "pass-exact"
    for r in count_with_bounds(sys_, F, ("k2", "k3")):
        assert r.satisfied, r.bound_case


@settings(max_examples=50, deadline=None)
@given(st.integers(-500, 500), st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 3, 5, 7, 11]))
def test_within_matches_float(count, a, b, q):
    from symsys.radical import within

    bound = RadicalValue(q, a, b)
    exact = within(count, 0, bound)
    approx = abs(count) <= bound.approx()
    if abs(abs(count) - bound.approx()) > 1e-6:
        assert exact == approx
