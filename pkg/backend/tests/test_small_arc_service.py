from fractions import Fraction
import random

from mpmath import mp
import pytest

from services.errors import ArcDomainError, ConvergenceError
from services.sexagesimal_service import TRIJYA, RadiusConstant
from services.small_arc_service import (
    JYA_TERM_CUTOFF,
    a001764,
    a001764_recurrence,
    arcsin_poly3,
    arcsin_series,
    arcsin_series_coefficients,
    cubic_jya,
    fixed_point_bound,
    gf_closed_form,
    gf_partial_sum,
    iterate_coeff_series,
    jya_series_terms,
    madhava_jya,
    variyar_arcsin,
)
from services.trig_oracle_service import jya_oracle, to_mpf


class TestMadhavaJya:
    @pytest.mark.parametrize("s, expected", [
        (810000, 809422),
        (0, 0),
        (6480000, 6187944),
    ])
    def test_known_values(self, r, s, expected):
        assert madhava_jya(s, r) == expected

    def test_quadrant_limit(self, r):
        assert madhava_jya(5400 * 3600, r) == r.thirds
        with pytest.raises(ArcDomainError):
            madhava_jya(5400 * 3600 + 1, r)

    def test_terms_alternate_and_shrink(self, r):
        terms = jya_series_terms(810000, r.thirds)
        assert [t > 0 for t in terms] == [i % 2 == 0 for i in range(len(terms))]
        assert all(abs(a) > abs(b) for a, b in zip(terms, terms[1:]))
        assert abs(terms[-1]) >= JYA_TERM_CUTOFF

    def test_agrees_with_oracle(self, r):
        rng = random.Random(17)
        for _ in range(100):
            s = rng.randint(0, 5400 * 3600)
            with mp.workdps(30):
                exact = jya_oracle(Fraction(s, 3600), r.minutes) * 3600
                assert abs(madhava_jya(s, r) - exact) <= 1


class TestCubicForms:
    def test_cubic_jya(self, r):
        assert cubic_jya(810000, r) == 809422
        assert cubic_jya(0, r) == 0
        assert cubic_jya(r.thirds, r) == round(Fraction(5 * r.thirds, 6))

    @pytest.mark.parametrize("m, expected", [
        (809422, 809999),
        (0, 0),
        (1615378, 1619965),
    ])
    def test_arcsin_poly3(self, r, m, expected):
        assert arcsin_poly3(m, r) == expected

    def test_arcsin_poly3_domain(self, r):
        with pytest.raises(ArcDomainError):
            arcsin_poly3(r.thirds + 1, r)

    def test_round_trip_on_small_arcs(self, r):
        for s in range(0, 200 * 3600 + 1, 3600):
            assert abs(arcsin_poly3(cubic_jya(s, r), r) - s) <= 2


class TestArcsinSeries:
    def test_coefficients(self):
        assert arcsin_series_coefficients(5) == [
            1, Fraction(1, 6), Fraction(3, 40), Fraction(5, 112), Fraction(35, 1152)
        ]

    def test_partial_sums(self):
        assert arcsin_series(Fraction(1, 2), 2) == Fraction(25, 48)
        assert arcsin_series(0, 7) == 0

    def test_domain(self):
        with pytest.raises(ArcDomainError):
            arcsin_series(Fraction(3, 2), 2)
        with pytest.raises(ArcDomainError):
            arcsin_series(Fraction(1, 2), 0)


class TestVariyarIteration:
    def test_arc_of_225_minutes(self, r):
        s, trace = variyar_arcsin(809422, r)
        assert s == 810000
        assert trace.deltas == [577, 578, 578]
        assert trace.arcs == [809999, 810000, 810000]
        assert trace.converged

    def test_arc_of_450_minutes(self, r):
        s, trace = variyar_arcsin(1615378, r)
        assert s == 1620004
        assert trace.deltas == [4587, 4626, 4626]

    def test_zero(self, r):
        s, trace = variyar_arcsin(0, r)
        assert s == 0
        assert len(trace.steps) == 1

    def test_steps_are_consistent_and_monotone(self, r):
        rng = random.Random(23)
        for _ in range(30):
            m = rng.randint(1, r.thirds * 3 // 4)
            _, trace = variyar_arcsin(m, r)
            assert all(step.s == m + step.delta for step in trace.steps)
            assert trace.deltas == sorted(trace.deltas)

    def test_trace_rows(self, r):
        _, trace = variyar_arcsin(809422, r)
        assert trace.to_rows()[-1] == {
            "i": 3, "delta_thirds": 578, "s_thirds": 810000, "s_sexagesimal": "225'00''00'''"
        }

    def test_exact_mode_close_to_rounded(self, r):
        s, trace = variyar_arcsin(809422, r, rounding=False)
        assert isinstance(s, Fraction)
        assert abs(s - 810000) < 1
        assert trace.converged

    def test_no_fixed_point_above_bound(self, r):
        with pytest.raises(ConvergenceError) as info:
            variyar_arcsin(fixed_point_bound(r) + 1, r)
        assert info.value.trace is not None
        assert info.value.trace.steps == []

    def test_max_iter_exhausted(self, r):
        with pytest.raises(ConvergenceError) as info:
            variyar_arcsin(1615378, r, max_iter=2)
        assert len(info.value.trace.steps) == 2
        assert not info.value.trace.converged

    def test_domain(self, r):
        with pytest.raises(ArcDomainError):
            variyar_arcsin(-1, r)

    def test_fixed_point_bound(self):
        bound = fixed_point_bound(RadiusConstant(3))
        assert bound == 2  # floor(2√2)


class TestCoefficients:
    def test_second_iterate(self):
        assert list(iterate_coeff_series(2, 4).coeffs) == [1, 1, 3, 3, 1]

    def test_third_iterate(self):
        assert list(iterate_coeff_series(3, 6).coeffs) == [1, 1, 3, 12, 28, 57, 96]

    def test_zeroth_iterate(self):
        assert list(iterate_coeff_series(0, 0).coeffs) == [1]

    def test_default_order_keeps_printed_coefficients(self):
        s4 = iterate_coeff_series(4).coeffs
        assert (s4[5], s4[6]) == (192, 618)
        assert iterate_coeff_series(5).coeffs[6] == 1185

    @pytest.mark.parametrize("n", range(9))
    def test_prefix_stabilizes(self, n):
        coeffs = iterate_coeff_series(n, n).coeffs
        assert list(coeffs) == [a001764(j) for j in range(n + 1)]

    def test_order_below_iterations(self):
        with pytest.raises(ArcDomainError):
            iterate_coeff_series(3, 2)

    def test_substituted_coefficients(self):
        assert iterate_coeff_series(2, 4).scaled(Fraction(1, 6)) == (
            1, Fraction(1, 6), Fraction(1, 12), Fraction(1, 72), Fraction(1, 1296)
        )

    def test_evaluate_matches_iteration(self):
        t, x = Fraction(1, 6), Fraction(1, 3)
        s = x
        for _ in range(2):
            s = x + t * s ** 3
        assert iterate_coeff_series(2, 4).evaluate(t, x) == s

    def test_not_the_arcsin_series(self):
        assert Fraction(a001764(2), 36) == Fraction(1, 12)
        assert Fraction(a001764(2), 36) != arcsin_series_coefficients(3)[2]


class TestTernaryTreeNumbers:
    def test_values(self):
        assert [a001764(j) for j in range(7)] == [1, 1, 3, 12, 55, 273, 1428]
        assert a001764(7) == 7752

    def test_recurrence_agrees(self):
        assert all(a001764(j) == a001764_recurrence(j) for j in range(40))

    def test_closed_form_matches_partial_sum(self):
        t, x = Fraction(1, 100), Fraction(1, 10)
        with mp.workdps(40):
            closed = gf_closed_form(t, x, digits=40)
            partial = to_mpf(gf_partial_sum(t, x, 21))
            assert abs(closed - partial) / partial <= mp.mpf(10) ** -12

    def test_closed_form_random_points(self):
        rng = random.Random(29)
        for _ in range(10):
            t = Fraction(rng.randint(1, 100), 1000)
            x = Fraction(rng.randint(1, 100), 1000)
            with mp.workdps(40):
                closed = gf_closed_form(t, x, digits=40)
                partial = to_mpf(gf_partial_sum(t, x, 21))
                assert abs(closed - partial) / partial <= mp.mpf(10) ** -12

    def test_closed_form_at_zero(self):
        assert gf_closed_form(Fraction(1, 100), 0) == 0

    def test_closed_form_domain(self):
        with pytest.raises(ArcDomainError):
            gf_closed_form(1, 1)
        with pytest.raises(ArcDomainError):
            gf_closed_form(0, Fraction(1, 10))

    def test_shared_grades_with_arcsin(self):
        r2 = TRIJYA.squared
        scaled = iterate_coeff_series(1, 1).scaled(Fraction(1, 6 * r2))
        assert scaled[1] * r2 == arcsin_series_coefficients(2)[1]
