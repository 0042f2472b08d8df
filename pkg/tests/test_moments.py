import math

import numpy as np
import pytest

from condiid import moments as mo
from condiid.errors import NonPositiveEntryError, NotDMonotoneError, SpecValidationError
from condiid.mixing import Beta, FiniteDiscrete, PointMass


class TestBackwardDifference:
    def test_second_difference_by_hand(self):
        # 1 - 2*(1/2) + 1/4
        assert mo.backward_difference((1, 0.5, 0.25), 2, 0) == pytest.approx(0.25, abs=1e-15)

    def test_order_zero_is_identity(self):
        seq = (1.0, 0.7, 0.3)
        for k in range(3):
            assert mo.backward_difference(seq, 0, k) == seq[k]

    def test_constant_sequence_vanishes(self):
        assert mo.backward_difference((1.0, 1.0, 1.0), 1, 0) == 0.0

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            mo.backward_difference((1.0, 0.5), 2, 1)


class TestMonotonicity:
    def test_geometric_is_d_monotone(self):
        assert mo.is_d_monotone((1, 0.5, 0.25))

    @pytest.mark.parametrize("eps", [0.0, 0.1, 0.25, 0.4, 0.5])
    def test_interval_family(self, eps):
        assert mo.is_d_monotone((1.0, 0.5, eps))

    def test_increasing_fails(self):
        assert not mo.is_d_monotone((1.0, 1.0, 1.5))

    def test_log_geometric(self):
        q = 0.37
        assert mo.is_log_d_monotone(tuple(q**k for k in range(5)))

    def test_log_counterexample_by_hand(self):
        # nabla^2 log b_0 = 0 - 2*log(0.9) + log(0.5) ~ -0.482
        assert not mo.is_log_d_monotone((1.0, 0.9, 0.5))

    def test_log_requires_positive_entries(self):
        with pytest.raises(NonPositiveEntryError):
            mo.is_log_d_monotone((1.0, 0.5, 0.0))

    def test_degenerate_point_mass_at_zero(self):
        assert mo.is_d_monotone((1.0, 0.0, 0.0))


class TestLogDCorrespondence:
    """(b_0..b_{d-1}) is (d-1)-monotone iff the exp-cumulative transform
    (1, e^{-b_0}, ..., e^{-sum b_i}) is log-d-monotone; exact identity."""

    @staticmethod
    def transform(b):
        sums = np.concatenate([[0.0], np.cumsum(b)])
        return tuple(np.exp(-sums))

    def test_equivalence_on_random_sequences(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 1000:
            d = int(rng.integers(2, 7))
            if rng.random() < 0.5:
                p = rng.random(d)
                p = p / sum(math.comb(d - 1, k) * p[k] for k in range(d))
                b = mo.b_from_p(mo.BinaryExchangeableLaw(tuple(p))).values
            else:
                b = (1.0,) + tuple(rng.random(d - 1) * 1.2)
            stats = [mo.backward_difference(b, d - 1 - k, k) for k in range(d)]
            if min(abs(s) for s in stats) < 1e-9:
                continue  # stay away from the exact boundary
            lhs = mo.is_d_monotone(b)
            rhs = mo.is_log_d_monotone(self.transform(b))
            assert lhs == rhs, (b, lhs, rhs)
            checked += 1

    def test_subsequences_inherit_monotonicity(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            d = int(rng.integers(2, 8))
            p = rng.random(d + 1)
            p = p / sum(math.comb(d, k) * p[k] for k in range(d + 1))
            b = mo.b_from_p(mo.BinaryExchangeableLaw(tuple(p))).values
            assert mo.is_d_monotone(b[:-1])
            if b[1] > 0:
                tail = tuple(v / b[1] for v in b[1:])
                assert mo.is_d_monotone((1.0,) + tail[1:])


class TestHausdorffExtendible:
    def test_known_interval(self):
        assert mo.hausdorff_extendible((1.0, 0.5, 0.3)).extendible
        assert not mo.hausdorff_extendible((1.0, 0.5, 0.2)).extendible

    def test_boundary_counts_as_extendible(self):
        verdict = mo.hausdorff_extendible((1.0, 0.5, 0.25))
        assert verdict.extendible

    def test_point_mass_moments(self):
        for m in (0.0, 0.3, 1.0):
            seq = tuple(m**k for k in range(5))
            assert mo.hausdorff_extendible((1.0,) + seq[1:]).extendible

    def test_flip_located_by_bisection(self):
        lo, hi = 0.0, 0.5
        while hi - lo > 1e-7:
            mid = 0.5 * (lo + hi)
            if mo.hausdorff_extendible((1.0, 0.5, mid)).extendible:
                hi = mid
            else:
                lo = mid
        assert abs(hi - 0.25) < 1e-6

    def test_requires_d_monotone(self):
        with pytest.raises(NotDMonotoneError):
            mo.hausdorff_extendible((1.0, 0.2, 0.5))

    def test_witness_realizes_moments(self):
        seq = mo.moment_sequence(Beta(1, 1), 4)
        verdict = mo.hausdorff_extendible(seq)
        assert verdict.witness is not None
        for k, target in enumerate(seq.values):
            assert verdict.witness.moment(k) == pytest.approx(target, abs=1e-9)

    def test_verdict_json(self):
        v = mo.hausdorff_extendible((1.0, 0.5, 0.3))
        js = v.to_json()
        assert js["extendible"] is True
        assert js["min_hankel"] == pytest.approx(0.05)


class TestBinaryParameterizations:
    def test_all_ones_certain(self):
        d = 4
        law = mo.BinaryExchangeableLaw((0.0,) * d + (1.0,))
        assert mo.b_from_p(law).values == (1.0,) * (d + 1)

    def test_hand_example(self):
        law = mo.BinaryExchangeableLaw((0.25, 0.25, 0.25))
        assert mo.b_from_p(law).values == pytest.approx((1.0, 0.5, 0.25))

    def test_uniform_mixture_matches_polya(self):
        seq = mo.moment_sequence(Beta(1, 1), 2)
        assert seq.values == pytest.approx((1.0, 0.5, 1.0 / 3.0))

    def test_round_trips(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            d = int(rng.integers(1, 7))
            p = rng.random(d + 1)
            p = p / sum(math.comb(d, k) * p[k] for k in range(d + 1))
            law = mo.BinaryExchangeableLaw(tuple(p))
            back = mo.p_from_b(mo.b_from_p(law))
            assert np.allclose(back.p, law.p, atol=1e-12)
            seq = mo.b_from_p(law)
            again = mo.b_from_p(mo.p_from_b(seq))
            assert np.allclose(again.values, seq.values, atol=1e-12)

    def test_normalization_enforced(self):
        with pytest.raises(SpecValidationError):
            mo.BinaryExchangeableLaw((0.5, 0.5, 0.5))


class TestMomentSequence:
    def test_point_mass(self):
        seq = mo.moment_sequence(PointMass(0.7), 3)
        assert seq.values == pytest.approx((1.0, 0.7, 0.49, 0.343))

    def test_beta_gamma_ratio(self):
        p, q = 2.3, 1.7
        law = Beta(p, q)
        seq = mo.moment_sequence(law, 5)
        for k in range(6):
            expect = math.gamma(p + k) * math.gamma(p + q) / (math.gamma(p) * math.gamma(p + q + k))
            assert seq.values[k] == pytest.approx(expect, rel=1e-12)

    def test_rejects_unbounded_law(self):
        from condiid.errors import UnsupportedLawError
        from condiid.mixing import Gamma

        with pytest.raises(UnsupportedLawError):
            mo.moment_sequence(Gamma(1.0), 3)


class TestSamplers:
    def test_constant_mixtures(self):
        rng = np.random.default_rng(0)
        ones = mo.sample_binary_mixture(PointMass(1.0), 3, 50, rng)
        assert (ones.data == 1.0).all()
        zeros = mo.sample_binary_mixture(FiniteDiscrete([0.0], [1.0]), 3, 50, rng)
        assert (zeros.data == 0.0).all()

    def test_uniform_mixture_pair_probability(self):
        rng = np.random.default_rng(1)
        sm = mo.sample_binary_mixture(Beta(1, 1), 2, 100000, rng)
        both = (sm.data == 1.0).all(axis=1).mean()
        assert both == pytest.approx(1.0 / 3.0, abs=3 * math.sqrt((1 / 3) * (2 / 3) / 100000) + 1e-3)

    def test_polya_first_draw(self):
        rng = np.random.default_rng(2)
        sm = mo.sample_polya_urn(2, 3, 1, 50000, rng)
        assert sm.data.mean() == pytest.approx(0.4, abs=0.01)

    def test_polya_closed_form_product(self):
        # r=b=1, d=2: P(X=(1,1)) = (1/2)*(2/3)
        assert mo.polya_pattern_probability(1, 1, 2, 2) == pytest.approx(1.0 / 3.0)

    def test_polya_matches_beta_mixture_chi_square(self):
        rng = np.random.default_rng(3)
        d, n = 3, 60000
        r, b = 2, 1
        urn = mo.sample_polya_urn(r, b, d, n, rng)
        mix = mo.sample_binary_mixture(Beta(r, b), d, n, rng)
        weights = 2 ** np.arange(d)
        urn_codes = (urn.data @ weights).astype(int)
        mix_codes = (mix.data @ weights).astype(int)
        urn_counts = np.bincount(urn_codes, minlength=2**d)
        mix_counts = np.bincount(mix_codes, minlength=2**d)
        # chi-square two-sample statistic over the 2^d patterns
        stat = 0.0
        for u, m in zip(urn_counts, mix_counts):
            if u + m:
                stat += (u - m) ** 2 / (u + m)
        from scipy.stats import chi2

        assert stat < chi2.ppf(0.999, df=2**d - 1)

    def test_polya_pattern_probabilities_closed_form(self):
        rng = np.random.default_rng(4)
        d, n, r, b = 3, 80000, 1, 2
        sm = mo.sample_polya_urn(r, b, d, n, rng)
        ones = sm.data.sum(axis=1).astype(int)
        for k in range(d + 1):
            p_pattern = mo.polya_pattern_probability(r, b, d, k)
            expect = math.comb(d, k) * p_pattern
            emp = (ones == k).mean()
            se = math.sqrt(expect * (1 - expect) / n)
            assert abs(emp - expect) <= 3 * se + 1e-3
