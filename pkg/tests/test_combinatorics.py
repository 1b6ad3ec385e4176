import decimal
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lllcover.combinatorics import (
    ExactProbability,
    binomial,
    dependence_count,
    lll_condition,
    min_rows_for_coverage,
    missing_word_prob,
    missing_word_prob_t3,
    missing_word_prob_t4_q2,
    union_bound_pi,
)

from oracles import brute_missing_prob, pascal_row, subsets_sharing


class TestBinomial:
    def test_small(self):
        assert binomial(4, 2) == 6

    @pytest.mark.parametrize("N", [0, 1, 7, 600])
    def test_zero_choose(self, N):
        assert binomial(N, 0) == 1

    @pytest.mark.parametrize("K", [-1, -5, 5, 100])
    def test_out_of_range_is_zero(self, K):
        assert binomial(4, K) == 0

    def test_large_against_pascal(self):
        row = pascal_row(600)
        assert binomial(600, 200) == row[200]
        assert len(str(row[200])) > 150
        assert all(binomial(600, K) == row[K] for K in range(0, 601, 37))


class TestExactProbability:
    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            ExactProbability(2, 4)

    def test_rejects_above_one(self):
        with pytest.raises(ValueError):
            ExactProbability(5, 4)

    def test_from_ratio_reduces(self):
        p = ExactProbability.from_ratio(6, 8)
        assert (p.numerator, p.denominator) == (3, 4)

    def test_log_of_tiny_value(self):
        p = ExactProbability.from_ratio(1, 10**400)
        assert p.log() == pytest.approx(-400 * math.log(10))


class TestMissingWordProbability:
    def test_q2_m1(self):
        assert missing_word_prob_t3(2, 1).value == Fraction(3, 4)

    def test_q3_m1(self):
        assert missing_word_prob_t3(3, 1).value == Fraction(8, 9)

    def test_q2_m2(self):
        assert missing_word_prob_t3(2, 2).value == Fraction(19, 36)

    def test_t4_m1(self):
        assert missing_word_prob_t4_q2(1).value == Fraction(163, 216)

    def test_t4_m1_term_by_term(self):
        # j = 0, 1, 2 contributions to the numerator with column 1 fixed
        terms = []
        for j in range(3):
            inner = sum(
                binomial(j, i) * binomial(4 - j, 2 - i) * binomial(4 - i, 2) for i in range(j + 1)
            )
            terms.append(binomial(2, j) ** 2 * inner)
        assert terms == [36, 108, 19]
        assert Fraction(sum(terms), binomial(4, 2) ** 3) == Fraction(163, 216)

    @pytest.mark.parametrize("q,t,m", [(2, 3, 1), (2, 3, 2), (3, 3, 1), (4, 3, 1), (2, 4, 1)])
    def test_matches_enumeration(self, q, t, m):
        k = q * m if t == 3 else 4 * m
        exact, _ = brute_missing_prob(q, t, k)
        assert missing_word_prob(q, t, m).value == exact

    @pytest.mark.parametrize(
        "q,t,m,word",
        [(2, 3, 1, (0, 1, 0)), (2, 3, 2, (0, 0, 0)), (3, 3, 1, (2, 0, 1)), (2, 4, 1, (1, 0, 0, 1))],
    )
    def test_any_word_same_as_all_ones(self, q, t, m, word):
        k = q * m if t == 3 else 4 * m
        assert brute_missing_prob(q, t, k, word)[0] == brute_missing_prob(q, t, k)[0]

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_strictly_decreasing_in_m(self, q):
        values = [missing_word_prob_t3(q, m).value for m in range(1, 11)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert all(0 < v < 1 for v in values)

    def test_t4_in_unit_interval(self):
        for m in range(1, 6):
            p = missing_word_prob_t4_q2(m)
            assert 0 < p.value < 1
            assert math.gcd(p.numerator, p.denominator) == 1

    def test_q3_m2_denominator_before_reduction(self):
        total = sum(binomial(2, j) * binomial(4, 2 - j) * binomial(6 - j, 2) for j in range(3))
        assert binomial(6, 2) ** 2 == 225
        assert missing_word_prob_t3(3, 2).value == Fraction(total, 225)

    @pytest.mark.parametrize("q,m", [(1, 1), (2, 0), (0, 3)])
    def test_rejects_bad_parameters(self, q, m):
        with pytest.raises(ValueError):
            missing_word_prob_t3(q, m)

    def test_t4_rejects_zero(self):
        with pytest.raises(ValueError):
            missing_word_prob_t4_q2(0)

    def test_unsupported_combination(self):
        with pytest.raises(ValueError):
            missing_word_prob(3, 4, 1)


class TestUnionBound:
    def test_clamped(self):
        assert union_bound_pi(ExactProbability(3, 4), 2, 3).value == 1

    def test_scaled(self):
        p = missing_word_prob_t3(3, 40)
        assert 27 * p.value <= 1
        assert union_bound_pi(p, 3, 3).value == 27 * p.value

    def test_zero(self):
        assert union_bound_pi(ExactProbability(0, 1), 5, 3).value == 0


class TestDependenceCount:
    def test_n6_t3(self):
        assert dependence_count(6, 3) == 18 == subsets_sharing(6, 3)

    @pytest.mark.parametrize("t", [1, 2, 3, 4])
    def test_single_subset(self, t):
        assert dependence_count(t, t) == 0

    def test_n10_t4(self):
        assert dependence_count(10, 4) == 194 == subsets_sharing(10, 4)

    @pytest.mark.parametrize("n,t", [(n, t) for t in (2, 3, 4) for n in range(t, 11)])
    def test_against_enumeration(self, n, t):
        assert dependence_count(n, t) == subsets_sharing(n, t)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            dependence_count(2, 3)

    @pytest.mark.parametrize("t,limit", [(3, Fraction(3, 2)), (4, Fraction(2, 3))])
    def test_growth_order(self, t, limit):
        # d / n**(t-1) -> t/(t-1)!
        gaps = [abs(Fraction(dependence_count(n, t), n ** (t - 1)) - limit) for n in (10**2, 10**3, 10**4, 10**5)]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < Fraction(1, 1000)


class TestLLLCondition:
    def test_n6_binary_m1(self):
        inst = lll_condition(6, 2, 3, 1)
        assert inst.pi.value == 1
        assert inst.d == 18
        assert float(inst.condition_value) == pytest.approx(18 * math.e)
        assert not inst.holds

    @pytest.mark.parametrize("q,t", [(2, 3), (3, 3), (2, 4)])
    def test_degenerate_n(self, q, t):
        inst = lll_condition(t, q, t, 1)
        assert inst.d == 0
        assert inst.condition_value == 0
        assert inst.holds

    def test_precision(self):
        inst = lll_condition(6, 2, 3, 1)
        with decimal.localcontext() as ctx:
            ctx.prec = 40
            expected = 18 * decimal.Decimal(1).exp()
        assert abs(inst.condition_value - expected) < decimal.Decimal("1e-35")

    def test_n100_binary(self):
        # the threshold for n=100 sits at m=35; m=30 is still above 1
        assert lll_condition(100, 2, 3, 30).condition_value > 1
        assert lll_condition(100, 2, 3, 34).condition_value > 1
        assert lll_condition(100, 2, 3, 35).condition_value < 1

    def test_instance_k(self):
        assert lll_condition(10, 3, 3, 4).k == 12
        assert lll_condition(10, 2, 4, 4).k == 16


class TestMinRows:
    @pytest.mark.parametrize("q,t,k", [(2, 3, 2), (3, 3, 3), (2, 4, 4)])
    def test_degenerate_n(self, q, t, k):
        assert min_rows_for_coverage(t, q, t) == k

    def test_n100_downward_scan(self):
        k = min_rows_for_coverage(100, 2, 3)
        m = k // 2
        assert lll_condition(100, 2, 3, m).holds
        assert all(not lll_condition(100, 2, 3, mm).holds for mm in range(m - 1, 0, -1))

    def test_non_decreasing_in_n(self):
        rows = [min_rows_for_coverage(n, 2, 3) for n in range(3, 41)]
        assert rows == sorted(rows)

    def test_t4_rows_multiple_of_four(self):
        k = min_rows_for_coverage(20, 2, 4)
        assert k % 4 == 0
        assert lll_condition(20, 2, 4, k // 4).holds

    def test_approaches_asymptotic_coefficient(self):
        # k/lg n falls toward 32.03 from above; additive terms still matter at 10**6
        ratios = [min_rows_for_coverage(n, 3, 3) / math.log2(n) for n in (10**3, 10**6, 10**12)]
        assert all(a > b for a, b in zip(ratios, ratios[1:]))
        assert 32.03 < ratios[-1] < ratios[1] < 40


@settings(max_examples=30, deadline=None)
@given(q=st.integers(2, 6), m=st.integers(1, 25))
def test_probability_reduced_and_proper(q, m):
    p = missing_word_prob_t3(q, m)
    assert 0 < p.numerator < p.denominator
    assert math.gcd(p.numerator, p.denominator) == 1


@pytest.mark.parametrize(
    "n,q,t", [(4, 2, 3), (25, 2, 3), (300, 2, 3), (7, 3, 3), (60, 3, 3), (5, 2, 4), (30, 2, 4)]
)
def test_gallop_matches_linear_scan(n, q, t):
    assert min_rows_for_coverage(n, q, t) == min_rows_for_coverage(n, q, t, search="linear")
