import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import flinthills as fh

from conftest import rel_err


class TestV2:
    @pytest.mark.parametrize("m,expected", [(3, 0), (22, 1), (104348, 2), (1, 0), (-24, 3)])
    def test_values(self, m, expected):
        assert fh.v2(m) == expected

    def test_zero_rejected(self):
        with pytest.raises(fh.DomainError):
            fh.v2(0)

    @given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=0, max_value=50))
    @settings(max_examples=80, deadline=None)
    def test_construction(self, half_odd, e):
        odd = 2 * half_odd + 1
        assert fh.v2(odd * 2**e) == e


class TestShiftTerm:
    def test_p3(self, ctx50):
        t = fh.shift_term(3, ctx50)
        assert t.w == 45 and t.w % 2 == 1
        assert abs(float(t.x) - 11.7809724509617246) < 1e-12  # 15 pi / 4
        assert abs(abs(float(t.sin_at_shift)) - abs(math.cos(3))) < 1e-15
        assert abs(float(t.sin_residual)) < 1e-40

    def test_p22_w_exact(self, ctx50):
        t = fh.shift_term(22, ctx50)
        assert t.w == 17 * 121 == 2057

    def test_p1_smallest(self, ctx50):
        t = fh.shift_term(1, ctx50)
        assert t.w == 5
        assert rel_err(t.x, 5 * math.pi / 4) < 1e-12

    def test_w_odd_for_first_50(self, ctx50):
        for c in fh.constant_convergents("pi", 50):
            v = fh.v2(c.p)
            w = ((1 << (2 + 2 * v)) + 1) * (c.p >> v) ** 2
            assert fh.shift_term(c.p, ctx50).w == w
            assert w % 2 == 1

    def test_double_angle_unit_values(self, ctx50):
        tol = ctx50.mpf(10) ** (8 - ctx50.decimal_digits)
        for c in fh.constant_convergents("pi", 50):
            t = fh.shift_term(c.p, ctx50)
            assert abs(t.sin_double**2 - 1) <= tol
            assert abs(t.cos_double) <= tol


class TestDirichletKernel:
    def test_sum_and_closed_agree_x2_z1(self, ctx50):
        k = fh.dirichlet_kernel(2, ctx50.mpf(1), ctx50)
        oracle = 1 + 2 * math.cos(2) + 2 * math.cos(4)
        assert abs(float(k.closed_form) - oracle) < 1e-14
        assert abs(float(k.sum_form) - oracle) < 1e-14
        assert float(k.abs_bound) == 5

    def test_exact_at_half_pi(self, ctx50):
        k = fh.dirichlet_kernel(1, fh.pi_const(ctx50) / 2, ctx50)
        assert abs(k.closed_form + 1) < ctx50.mpf(10) ** (-70)

    def test_singular_at_pi(self, ctx50):
        with pytest.raises(fh.SingularArgumentError):
            fh.dirichlet_kernel(3, fh.pi_const(ctx50), ctx50)

    def test_real_order_closed_form_only(self, ctx50):
        k = fh.dirichlet_kernel(ctx50.mpf("2.5"), ctx50.mpf(1), ctx50)
        assert k.sum_form is None
        assert abs(float(k.closed_form) - math.sin(6) / math.sin(1)) < 1e-14

    def test_randomized_agreement(self, ctx50):
        ctx30 = fh.make_context(30)
        rng = random.Random(1234)
        for _ in range(50):
            x = rng.randint(0, 50)
            z = ctx30.mpf(rng.uniform(0.1, 3.0))
            k = fh.dirichlet_kernel(x, z, ctx30)  # raises on disagreement
            assert abs(k.closed_form) <= 2 * x + 1 + ctx30.mpf(10) ** (-20)


class TestFejerKernel:
    def test_x1_z1(self, ctx50):
        k = fh.fejer_kernel(1, ctx50.mpf(1), ctx50)
        oracle = 2 + 2 * math.cos(2)
        assert abs(float(k.sum_form) - oracle) < 1e-14
        assert abs(float(k.closed_form) - oracle) < 1e-14

    def test_unhalved_normalization(self, ctx50):
        # the double sum equals sin((x+1)z)^2/sin(z)^2 with no 1/2 factor
        k = fh.fejer_kernel(1, ctx50.mpf(1), ctx50)
        halved = (math.sin(2) ** 2 / math.sin(1) ** 2) / 2
        assert abs(float(k.sum_form) - halved) > 0.5

    def test_single_term(self, ctx50):
        assert fh.fejer_kernel(0, ctx50.mpf("0.7"), ctx50).sum_form == 1

    def test_exact_at_quarter_pi(self, ctx50):
        k = fh.fejer_kernel(1, fh.pi_const(ctx50) / 4, ctx50)
        assert abs(k.sum_form - 2) < ctx50.mpf(10) ** (-70)

    def test_quadratic_bound(self, ctx50):
        rng = random.Random(42)
        for _ in range(20):
            x = rng.randint(0, 12)
            k = fh.fejer_kernel(x, ctx50.mpf(rng.uniform(0.2, 2.9)), ctx50)
            assert abs(k.closed_form) <= float(k.abs_bound) + 1e-20
            assert float(k.abs_bound) == (x + 1) ** 2

    def test_telescoping_sum_of_dirichlet(self, ctx50):
        z = ctx50.mpf("0.83")
        for x in (5, 30):
            fj = fh.fejer_kernel(x, z, ctx50)
            total = sum(fh.dirichlet_kernel(n, z, ctx50).closed_form for n in range(x + 1))
            assert abs(fj.sum_form - total) < ctx50.mpf(10) ** (-60)

    def test_rejects_non_integer_order(self, ctx50):
        with pytest.raises(fh.DomainError):
            fh.fejer_kernel(1.5, ctx50.mpf(1), ctx50)


class TestRealTechnique:
    def test_report_rows(self, ctx50):
        report = fh.recip_sin_bound_real_technique(25, ctx50)
        assert len(report.rows) == 25
        row1, row4 = report.rows[0], report.rows[3]
        assert abs(float(row1.ratio) - 7.086167395737187 / 3) < 1e-10
        assert abs(float(row4.ratio) - 33173.71 / 355) < 0.01
        assert float(report.summary["max_shift_residual"]) < 1e-20

    def test_residuals_tiny_at_50_digits(self, ctx50):
        report = fh.recip_sin_bound_real_technique(25, ctx50)
        for row in report.rows:
            assert float(row.sin_residual) < 1e-20
            assert float(row.cos_residual) < 1e-20


class TestIntegerTechnique:
    def test_small_cases(self, ctx50):
        report = fh.recip_sin_bound_integer_technique(2, ctx50)
        by_p = {r.p: r for r in report.rows}
        assert by_p[3].floor_x == 11
        assert by_p[3].argument == 69
        assert abs(float(by_p[3].abs_sin) - abs(math.sin(69))) < 1e-14
        assert abs(float(by_p[22].abs_sin) - abs(math.sin(2 * by_p[22].floor_x * 22 + 22))) < 1e-11

    def test_p1_by_direct_construction(self, ctx50):
        t = fh.shift_term(1, ctx50)
        floor_x = int(float(t.x))
        assert floor_x == 3
        assert abs(float(fh.sin_int(2 * floor_x + 1, ctx50)) - math.sin(7)) < 1e-14

    def test_minimum_in_unit_interval(self, ctx50):
        report = fh.recip_sin_bound_integer_technique(25, ctx50)
        m = float(report.summary["min_abs_sin"])
        assert 0 < m <= 1


class TestCfTechnique:
    def test_below_threshold_rejected(self, ctx50):
        with pytest.raises(fh.DomainError, match="16 pi\\^4"):
            fh.cf_technique_check(1558, 5, ctx50)

    def test_d1559_distances(self, ctx50):
        report = fh.cf_technique_check(1559, 10, ctx50)
        assert len(report.rows) == 10
        got = [round(float(r.distance), 6) for r in report.rows]
        assert got == [
            0.178383, 0.139063, 0.063845, 0.037938, 0.087398,
            0.068231, 0.079099, 0.051564, 0.046160, 0.109033,
        ]
        # the first convergent misses the 1/(2 pi) distance bound; the rest meet it
        assert [r.within_bound for r in report.rows] == [False] + [True] * 9
        assert report.summary["rows_within_bound"] == 9

    def test_large_d_runs(self, ctx50):
        report = fh.cf_technique_check(10**6, 5, ctx50)
        assert len(report.rows) == 5
        for r in report.rows:
            assert 0 <= float(r.distance) <= 0.5

    def test_sin_matches_distance(self, ctx50):
        # |sin(2 pi X)| = sin(2 pi * distance-to-nearest-integer)
        report = fh.cf_technique_check(1559, 6, ctx50)
        for r in report.rows:
            expected = abs(math.sin(2 * math.pi * float(r.distance)))
            assert abs(float(r.abs_sin) - expected) < 1e-9
