import math

import numpy as np
import pytest
from scipy import integrate, stats

from condiid import mixtures as mx
from condiid.errors import SpecValidationError
from condiid.mixing import Beta, FiniteDiscrete, Gamma, LogSeries, Pareto, PointMass


class TestExchNormal:
    def test_rho_zero_columns_uncorrelated(self):
        rng = np.random.default_rng(0)
        sm = mx.sample_exch_normal(0.0, 1.0, 0.0, 2, 60000, rng)
        corr = np.corrcoef(sm.data.T)[0, 1]
        assert abs(corr) < 3.0 / math.sqrt(60000) + 1e-3

    def test_rho_one_columns_identical(self):
        rng = np.random.default_rng(1)
        sm = mx.sample_exch_normal(0.5, 2.0, 1.0, 3, 100, rng)
        assert np.allclose(sm.data, sm.data[:, :1])

    def test_rho_half_pairwise_correlation(self):
        rng = np.random.default_rng(2)
        sm = mx.sample_exch_normal(0.0, 1.0, 0.5, 2, 200000, rng)
        corr = np.corrcoef(sm.data.T)[0, 1]
        assert corr == pytest.approx(0.5, abs=0.01)

    def test_rho_out_of_range_rejected(self):
        rng = np.random.default_rng(3)
        with pytest.raises(SpecValidationError):
            mx.sample_exch_normal(0.0, 1.0, -0.2, 2, 10, rng)

    def test_cdf_against_monte_carlo(self):
        rng = np.random.default_rng(4)
        sm = mx.sample_exch_normal(0.1, 1.3, 0.4, 3, 200000, rng)
        pt = np.array([0.3, -0.2, 0.8])
        emp = (sm.data <= pt).all(axis=1).mean()
        assert mx.exch_normal_cdf(0.1, 1.3, 0.4, pt) == pytest.approx(emp, abs=0.005)


class TestSphere:
    def test_rows_have_unit_norm(self):
        rng = np.random.default_rng(5)
        sm = mx.sample_uniform_sphere(4, 1000, rng)
        assert np.allclose(np.linalg.norm(sm.data, axis=1), 1.0, atol=1e-12)

    def test_angle_uniform_chi_square(self):
        rng = np.random.default_rng(6)
        sm = mx.sample_uniform_sphere(2, 80000, rng)
        angles = np.mod(np.arctan2(sm.data[:, 1], sm.data[:, 0]), 2 * np.pi)
        counts = np.histogram(angles, bins=8, range=(0, 2 * np.pi))[0]
        stat = np.sum((counts - 10000.0) ** 2 / 10000.0)
        assert stat < stats.chi2.ppf(0.999, df=7)

    def test_coordinate_symmetry(self):
        rng = np.random.default_rng(7)
        sm = mx.sample_uniform_sphere(3, 100000, rng)
        assert abs(sm.data[:, 0].mean()) < 0.01


class TestSphericalCiid:
    def test_unit_mixing_gives_standard_normal(self):
        rng = np.random.default_rng(8)
        sm = mx.sample_spherical_ciid(PointMass(1.0), 2, 50000, rng)
        for k in range(2):
            assert stats.kstest(sm.data[:, k], "norm").pvalue > 0.001

    def test_scale_mixing(self):
        rng = np.random.default_rng(9)
        c = 2.5
        sm = mx.sample_spherical_ciid(PointMass(c), 2, 50000, rng)
        assert sm.data.std() == pytest.approx(c, rel=0.02)

    def test_rotational_invariance_two_sample(self):
        rng = np.random.default_rng(10)
        sm = mx.sample_spherical_ciid(Gamma(2.0), 2, 40000, rng)
        rotated = (sm.data[:, 0] + sm.data[:, 1]) / math.sqrt(2.0)
        marginal = mx.sample_spherical_ciid(Gamma(2.0), 2, 40000, rng).data[:, 0]
        assert stats.ks_2samp(rotated, marginal).pvalue > 0.001

    def test_characteristic_probe_depends_on_norm_only(self):
        # cos-probe at two directions of equal length
        rng = np.random.default_rng(11)
        sm = mx.sample_spherical_ciid(Gamma(1.5), 2, 200000, rng)
        a = 0.9
        u1 = np.array([a, 0.0])
        u2 = np.array([a / math.sqrt(2), a / math.sqrt(2)])
        c1 = np.cos(sm.data @ u1)
        c2 = np.cos(sm.data @ u2)
        diff = c1.mean() - c2.mean()
        se = math.sqrt((c1.var() + c2.var()) / sm.n)
        assert abs(diff) <= 3 * se + 1e-3


class TestWilliamson:
    def test_point_mass_closed_form(self):
        r, d = 2.0, 4
        for x in (0.0, 0.5, 1.9, 2.0, 3.0):
            assert mx.williamson_transform(PointMass(r), d, x) == pytest.approx(
                max(1 - x / r, 0.0) ** (d - 1)
            )

    def test_finite_discrete_hand_value(self):
        law = FiniteDiscrete([1.0, 2.0], [0.5, 0.5])
        assert mx.williamson_transform(law, 2, 1.0) == pytest.approx(0.25)

    def test_at_zero(self):
        assert mx.williamson_transform(Gamma(2.0), 3, 0.0) == 1.0

    def test_quadrature_matches_monte_carlo(self):
        rng = np.random.default_rng(12)
        law = Gamma(2.0)
        r = law.sample(400000, rng)
        for x in (0.5, 1.5):
            emp = (np.maximum(1 - x / r, 0.0) ** 2).mean()
            assert mx.williamson_transform(law, 3, x) == pytest.approx(emp, abs=0.003)

    def test_non_increasing_in_x(self):
        vals = [mx.williamson_transform(Beta(2, 1), 3, x) for x in np.linspace(0, 1.2, 10)]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_laplace_transform_passes_d_monotone_probes(self):
        # (-1)^d * (d-th forward difference) of a completely monotone function
        # is non-negative; probe at ten points per order
        law = Gamma(1.5)
        h = 0.05
        for d in range(1, 6):
            for x in np.linspace(0.0, 3.0, 10):
                forward = sum(
                    (-1) ** (d - i) * math.comb(d, i) * float(law.laplace(x + i * h))
                    for i in range(d + 1)
                )
                assert (-1) ** d * forward >= -1e-12


class TestL1Family:
    def test_l1_symmetric_survival_matches_williamson(self):
        rng = np.random.default_rng(13)
        law = Gamma(3.0)
        d, n = 3, 150000
        sm = mx.sample_l1_symmetric(law, d, n, rng)
        for pt in ([0.5, 0.4, 0.3], [0.2, 0.9, 0.1]):
            pt = np.asarray(pt)
            emp = (sm.data > pt).all(axis=1).mean()
            closed = mx.williamson_transform(law, d, float(pt.sum()))
            se = math.sqrt(max(closed * (1 - closed), 1e-12) / n)
            assert abs(emp - closed) <= 3 * se + 1e-3

    def test_l1_ciid_unit_mixing_iid_exponential(self):
        rng = np.random.default_rng(14)
        sm = mx.sample_l1_ciid(PointMass(1.0), 2, 50000, rng)
        for k in range(2):
            assert stats.kstest(sm.data[:, k], "expon").pvalue > 0.001

    def test_l1_ciid_gamma_value(self):
        assert mx.l1_ciid_survival(Gamma(1.0), [1.0, 1.0]) == pytest.approx(1.0 / 3.0)

    def test_marginal_survival_is_laplace_transform(self):
        rng = np.random.default_rng(15)
        law = Gamma(2.0)
        sm = mx.sample_l1_ciid(law, 1, 200000, rng)
        for x in (0.3, 1.0):
            emp = (sm.data[:, 0] > x).mean()
            assert emp == pytest.approx(float(law.laplace(x)), abs=0.004)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_survival_grid_all_dimensions(self, d):
        rng = np.random.default_rng(16 + d)
        law = Gamma(1.0)
        n = 100000
        sm = mx.sample_l1_ciid(law, d, n, rng)
        rng2 = np.random.default_rng(99)
        for _ in range(20):
            pt = rng2.exponential(0.5, size=d)
            emp = (sm.data > pt).all(axis=1).mean()
            closed = mx.l1_ciid_survival(law, pt)
            se = math.sqrt(max(closed * (1 - closed), 1e-12) / n)
            assert abs(emp - closed) <= 3 * se + 1e-3


class TestArchimedean:
    def test_zero_coordinate(self):
        assert mx.archimedean_copula_eval(Gamma(1.0), [0.0, 0.5]) == 0.0

    def test_gamma_one_hand_value(self):
        assert mx.archimedean_copula_eval(Gamma(1.0), [0.5, 0.5]) == pytest.approx(
            1.0 / 3.0, abs=1e-10
        )

    def test_margins(self):
        for u in (0.2, 0.7):
            val = mx.archimedean_copula_eval(Gamma(2.0), [u, 1.0, 1.0])
            assert val == pytest.approx(u, abs=1e-9)

    def test_generator_inverse_round_trip(self):
        gen = mx.ArchimedeanGenerator(Gamma(0.7))
        for u in (0.05, 0.3, 0.9):
            assert float(gen(gen.inverse(u))) == pytest.approx(u, abs=1e-9)

    def test_empirical_copula_matches_evaluator(self):
        rng = np.random.default_rng(20)
        law = Gamma(1.0)
        d, n = 2, 150000
        xs = mx.sample_l1_ciid(law, d, n, rng)
        us = np.asarray(law.laplace(xs.data))
        gen = mx.ArchimedeanGenerator(law)
        for u in ([0.3, 0.6], [0.5, 0.5], [0.8, 0.2], [0.9, 0.9], [0.25, 0.75]):
            emp = (us <= np.asarray(u)).all(axis=1).mean()
            closed = mx.archimedean_copula_eval(gen, u)
            se = math.sqrt(closed * (1 - closed) / n)
            assert abs(emp - closed) <= 3 * se + 1e-3

    def test_frank_third_moment_expression_negative(self):
        # radial-symmetry obstruction: the centered third moment of H_{1/2}
        # is strictly negative for the log-series generator
        for theta in (0.5, 1.0, 2.0, 5.0):
            gen = mx.ArchimedeanGenerator(LogSeries(theta))
            half = gen.inverse(0.5)
            val = float(gen(3 * half)) - 1.5 * float(gen(2 * half)) + 0.25
            assert val < 0.0


class TestGnedin:
    def test_pareto_closed_form(self):
        law = Pareto(1.5)
        for d in (1, 2, 3):
            for x in (0.0, 0.5, 1.0, 2.0):
                expect = law.alpha / (d + law.alpha) * max(1.0, x) ** (-d - law.alpha)
                assert mx.gnedin_g(law, d, x) == pytest.approx(expect, rel=1e-9)

    def test_unit_point_mass(self):
        assert mx.gnedin_g(PointMass(1.0), 2, 0.5) == pytest.approx(1.0)
        assert mx.gnedin_g(PointMass(1.0), 2, 1.5) == 0.0

    def test_normalization(self):
        for law in (Pareto(2.0), Gamma(2.0)):
            for d in (1, 2, 3):
                fn = lambda x: d * x ** (d - 1) * mx.gnedin_g(law, d, x)
                head, _ = integrate.quad(fn, 0, 1, limit=300)
                tail, _ = integrate.quad(fn, 1, np.inf, limit=300)
                assert head + tail == pytest.approx(1.0, abs=1e-6)

    def test_margining_recursion(self):
        law = Pareto(1.3)
        for x in (0.3, 0.8, 1.7):
            lhs = mx.gnedin_g(law, 1, x)
            tail, _ = integrate.quad(lambda u: mx.gnedin_g(law, 2, u), x, np.inf, limit=300)
            assert lhs == pytest.approx(tail + x * mx.gnedin_g(law, 2, x), abs=1e-8)

    def test_non_increasing(self):
        vals = [mx.gnedin_g(Gamma(2.0), 2, x) for x in np.linspace(0, 4, 15)]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


class TestLinf:
    def test_survival_matches_monte_carlo(self):
        rng = np.random.default_rng(21)
        law = Pareto(3.0)
        sm = mx.sample_linf_ciid(law, 2, 150000, rng)
        for pt in ([0.4, 0.8], [1.0, 0.2]):
            pt = np.asarray(pt)
            emp = (sm.data > pt).all(axis=1).mean()
            closed = mx.linf_ciid_survival(law, pt)
            se = math.sqrt(closed * (1 - closed) / sm.n)
            assert abs(emp - closed) <= 3 * se + 1e-3

    def test_rows_conditionally_uniform(self):
        rng = np.random.default_rng(22)
        sm, m = mx.sample_linf_ciid(PointMass(2.0), 3, 20000, rng, return_mixing=True)
        assert (m == 2.0).all()
        assert stats.kstest(sm.data.ravel() / 2.0, "uniform").pvalue > 0.001

    def test_sampled_g2_non_increasing_by_isotonic_residual(self):
        from condiid.diagnostics import isotonic_decreasing_fit

        rng = np.random.default_rng(23)
        law = Pareto(2.0)
        sm = mx.sample_linf_ciid(law, 2, 200000, rng)
        m = sm.data.max(axis=1)
        hi = np.quantile(m, 0.99)
        counts, edges = np.histogram(m, bins=30, range=(0.0, hi))
        centers = 0.5 * (edges[1:] + edges[:-1])
        width = edges[1] - edges[0]
        # f_max(x) = 2 x g_2(x), so g2_hat = density / (2x)
        g2_hat = counts / (sm.n * width) / (2.0 * centers)
        fit = isotonic_decreasing_fit(g2_hat, weights=counts + 1.0)
        resid = np.sqrt(np.mean((g2_hat - fit) ** 2)) / g2_hat.mean()
        assert resid < 0.05

    def test_marginal_cdf(self):
        law = Pareto(1.0)
        for x in (0.3, 0.9, 2.0):
            assert mx.linf_marginal_cdf(law, x) == pytest.approx(
                mx.pareto_uniform_marginal_cdf(1.0, x), abs=1e-9
            )


class TestParetoUniformCopula:
    def test_normalization_and_margins(self):
        assert mx.pareto_uniform_copula(1.0, 1.0, 1.0) == 1.0
        for u in (0.2, 0.8):
            assert mx.pareto_uniform_copula(1.3, u, 1.0) == pytest.approx(u)
        assert mx.pareto_uniform_copula(2.0, 0.0, 0.7) == 0.0

    def test_lower_branch_product_form(self):
        alpha = 1.0
        u1, u2 = 0.3, 0.4  # both below alpha/(1+alpha) = 0.5
        expect = (1 + alpha) ** 2 / (alpha * (alpha + 2)) * u1 * u2
        assert mx.pareto_uniform_copula(alpha, u1, u2) == pytest.approx(expect)

    def test_branches_are_continuous(self):
        alpha = 1.7
        split = alpha / (1 + alpha)
        for other in (0.2, split, 0.9):
            lo = mx.pareto_uniform_copula(alpha, split - 1e-9, other)
            hi = mx.pareto_uniform_copula(alpha, split + 1e-9, other)
            assert lo == pytest.approx(hi, abs=1e-6)

    def test_copula_matches_transformed_samples(self):
        rng = np.random.default_rng(24)
        alpha = 1.0
        sm = mx.sample_linf_ciid(Pareto(alpha), 2, 200000, rng)
        us = np.vectorize(lambda v: mx.pareto_uniform_marginal_cdf(alpha, v))(sm.data)
        for u in ([0.3, 0.4], [0.5, 0.9], [0.85, 0.85]):
            emp = (us <= np.asarray(u)).all(axis=1).mean()
            closed = mx.pareto_uniform_copula(alpha, *u)
            se = math.sqrt(closed * (1 - closed) / sm.n)
            assert abs(emp - closed) <= 3 * se + 2e-3

    def test_upper_tail_dependence(self):
        rng = np.random.default_rng(25)
        alpha = 1.0
        sm = mx.sample_linf_ciid(Pareto(alpha), 2, 400000, rng)
        x = np.quantile(sm.data[:, 1], 0.995)
        cond = (sm.data[:, 0] > x)[sm.data[:, 1] > x].mean()
        assert cond == pytest.approx(2.0 / (2.0 + alpha), abs=0.05)
