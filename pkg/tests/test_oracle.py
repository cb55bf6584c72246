import math
from fractions import Fraction as F

import pytest

from pstirling.oracle import (
    EmpiricalCdf,
    irwin_hall_cdf,
    mc_empirical_cdf,
    mc_sum_moment,
    run_validation,
    uniform_fn_exact,
)
from pstirling.randomvars import (
    UnsupportedSpecError,
    custom,
    point_mass,
    rademacher,
    uniform_std,
)

from oracles import PiecewisePoly, enum_sum_moment, RADEMACHER_SUPPORT


class TestIrwinHall:
    def test_single_uniform_is_identity(self):
        for x in (F(0), F(1, 4), F(1, 2), F(7, 8), F(1)):
            assert irwin_hall_cdf(1, x) == x

    def test_pinned_values(self):
        assert irwin_hall_cdf(2, F(1, 2)) == F(1, 8)
        assert irwin_hall_cdf(3, F(3, 2)) == F(1, 2)

    def test_support_ends(self):
        assert irwin_hall_cdf(4, F(-1)) == 0
        assert irwin_hall_cdf(4, F(0)) == 0
        assert irwin_hall_cdf(4, F(4)) == 1
        assert irwin_hall_cdf(4, F(9, 2)) == 1

    def test_symmetry_exact(self):
        for n in (2, 3, 5, 8, 13):
            for num in range(0, 4 * n + 1):
                x = F(num, 4)
                assert irwin_hall_cdf(n, x) + irwin_hall_cdf(n, n - x) == 1

    def test_monotone(self):
        for n in (2, 5):
            values = [irwin_hall_cdf(n, F(num, 8)) for num in range(8 * n + 1)]
            assert all(a <= b for a, b in zip(values, values[1:]))

    def test_against_convolution_oracle(self):
        for n in (1, 2, 3, 4, 5):
            pp = PiecewisePoly(n)
            for num in range(0, 6 * n + 1):
                x = F(num, 6)
                assert irwin_hall_cdf(n, x) == pp.cdf(x)

    def test_float_path_tracks_exact(self):
        for n in (2, 5, 8):
            for num in range(1, 2 * n):
                x = F(num, 2)
                assert irwin_hall_cdf(n, float(x)) == pytest.approx(
                    float(irwin_hall_cdf(n, x)), abs=1e-10
                )


class TestUniformFn:
    def test_midpoint(self):
        for n in (1, 2, 7, 16, 33):
            assert uniform_fn_exact(n, 0.0) == 0.5

    def test_support_edge(self):
        assert uniform_fn_exact(1, math.sqrt(3)) == 1.0

    def test_frozen_value_n2(self):
        # 1 - (2-x)^2/2 at x = 1 + 1/sqrt(6)
        expected = 1 - (1 - 1 / math.sqrt(6)) ** 2 / 2
        assert uniform_fn_exact(2, 1.0) == pytest.approx(expected, abs=1e-12)

    def test_matches_normal_for_large_n(self):
        from pstirling.edgeworth import normal_cdf

        assert uniform_fn_exact(64, 1.0) == pytest.approx(normal_cdf(1.0), abs=2e-3)

    def test_rational_argument(self):
        assert uniform_fn_exact(4, F(1, 2)) == pytest.approx(uniform_fn_exact(4, 0.5), abs=1e-15)


class TestMcSumMoment:
    def test_point_mass_exact(self):
        est = mc_sum_moment(point_mass(2), 3, 2, 20_000, seed=1)
        assert est.value == 36.0 and est.stderr == 0.0

    def test_rademacher_within_4_sigma(self):
        exact = enum_sum_moment(RADEMACHER_SUPPORT, 2, 4)
        est = mc_sum_moment(rademacher(), 2, 4, 100_000, seed=7)
        spread = enum_sum_moment(RADEMACHER_SUPPORT, 2, 8) - exact**2
        tol = 4 * math.sqrt(float(spread) / est.n_samples)
        assert abs(est.value - float(exact)) <= tol

    def test_deterministic(self):
        a = mc_sum_moment(uniform_std(), 3, 2, 30_000, seed=11)
        b = mc_sum_moment(uniform_std(), 3, 2, 30_000, seed=11)
        assert a == b

    def test_custom_rejected(self):
        with pytest.raises(UnsupportedSpecError):
            mc_sum_moment(custom([1, 0, 1]), 2, 2, 10_000, seed=0)

    def test_stderr_shrinks_with_n(self):
        # averaged over seeds, doubling the sample count cuts SE by ~sqrt(2)
        small = [mc_sum_moment(uniform_std(), 2, 2, 3_000, seed=s).stderr for s in range(10)]
        big = [mc_sum_moment(uniform_std(), 2, 2, 6_000, seed=s + 100).stderr for s in range(10)]
        assert sum(big) / 10 <= 0.8 * (sum(small) / 10)


class TestMcEmpiricalCdf:
    GRID = [x / 2 for x in range(-5, 6)]

    def test_monotone_and_bounded(self):
        emp = mc_empirical_cdf(rademacher(), 4, self.GRID, 50_000, seed=3)
        values = [f for _, f in emp.points]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert all(0.0 <= f <= 1.0 for f in values)

    def test_symmetric_midpoint(self):
        emp = mc_empirical_cdf(uniform_std(), 4, [0.0], 100_000, seed=5)
        assert abs(emp.points[0][1] - 0.5) <= emp.dkw_bound

    def test_matches_exact_cdf_within_dkw(self):
        emp = mc_empirical_cdf(uniform_std(), 4, self.GRID, 100_000, seed=9)
        worst = max(abs(f - uniform_fn_exact(4, y)) for y, f in emp.points)
        assert worst <= emp.dkw_bound

    def test_dkw_radius_formula(self):
        emp = mc_empirical_cdf(rademacher(), 2, [0.0], 10_000, seed=2)
        assert emp.dkw_bound == pytest.approx(math.sqrt(math.log(2000) / 20_000))

    def test_custom_rejected(self):
        with pytest.raises(UnsupportedSpecError):
            mc_empirical_cdf(custom([1, 0, 1]), 2, [0.0], 10_000, seed=0)


class TestValidationSuite:
    def test_exact_suite_passes(self):
        reports = run_validation("exact")
        assert reports and all(r.passed for r in reports)

    def test_report_consistency(self):
        for r in run_validation("mc", seed=3, n_samples=50_000):
            assert r.passed == (r.abs_dev <= r.tolerance)
            payload = r.to_json()
            assert set(payload) == {
                "name", "expected", "computed", "abs_dev", "rel_dev", "tolerance", "passed",
            }

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_validation("everything")
