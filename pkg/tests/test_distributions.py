import math

import numpy as np
import pytest

from xtropy.distributions import (
    DerivativeUndefined,
    DiscretePMF,
    Exponential,
    FAMILIES,
    FAMILY_FORMATS,
    Gamma,
    Normal,
    PowerFunction,
    Support,
    Uniform,
    Weibull,
    parse_distribution,
    parse_pmf,
)
from xtropy.quadrature import central_difference, integrate

ALL_DISTS = [
    Uniform(0.0, 1.0),
    Uniform(-1.5, 2.0),
    Exponential(1.0),
    Exponential(0.5),
    Weibull(2.0, 1.0),
    Weibull(1.5, 2.0),
    Gamma(2.0, 1.0),
    Gamma(3.5, 0.5),
    Normal(0.0, 1.0),
    Normal(-2.0, 0.7),
    PowerFunction(2.5),
    PowerFunction(0.8),
]


def _ids(dists):
    return [d.spec_string() for d in dists]


class TestValidation:
    @pytest.mark.parametrize(
        "factory",
        [
            lambda: Uniform(1.0, 1.0),
            lambda: Uniform(2.0, 1.0),
            lambda: Uniform(0.0, math.inf),
            lambda: Exponential(0.0),
            lambda: Exponential(-1.0),
            lambda: Weibull(0.0, 1.0),
            lambda: Weibull(2.0, -1.0),
            lambda: Gamma(-2.0, 1.0),
            lambda: Gamma(2.0, 0.0),
            lambda: Normal(0.0, 0.0),
            lambda: Normal(math.nan, 1.0),
            lambda: PowerFunction(0.0),
            lambda: Support(1.0, 1.0),
        ],
    )
    def test_bad_parameters_raise(self, factory):
        with pytest.raises(ValueError):
            factory()

    @pytest.mark.parametrize(
        "text",
        ["bogus:1", "uniform", "uniform:1", "uniform:0,1,2", "exp:abc", "exp:"],
    )
    def test_bad_parse_strings_raise(self, text):
        with pytest.raises(ValueError):
            parse_distribution(text)

    def test_parse_round_trips_through_spec_string(self):
        for dist in ALL_DISTS:
            again = parse_distribution(dist.spec_string())
            assert again == dist

    def test_family_registries_agree(self):
        assert set(FAMILIES) == set(FAMILY_FORMATS)


class TestPointValues:
    def test_uniform_pdf(self):
        assert Uniform(0, 1).pdf(0.3) == 1.0
        assert Uniform(0, 1).pdf(-0.1) == 0.0
        assert Uniform(0, 1).pdf(1.2) == 0.0

    def test_exponential_pdf_at_origin(self):
        assert Exponential(1.0).pdf(0.0) == 1.0

    def test_weibull_pdf(self):
        assert Weibull(2, 1).pdf(1.0) == pytest.approx(2.0 * math.exp(-1.0), abs=1e-15)

    def test_uniform_cdf(self):
        assert Uniform(0, 1).cdf(0.3) == pytest.approx(0.3)

    def test_exponential_cdf_at_median(self):
        assert Exponential(1.0).cdf(math.log(2.0)) == pytest.approx(0.5, abs=1e-15)

    def test_weibull_cdf(self):
        assert Weibull(2, 1).cdf(1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-15)

    def test_exponential_pdf_derivative(self):
        assert Exponential(1.0).pdf_derivative(0.5) == pytest.approx(-math.exp(-0.5), abs=1e-15)

    def test_uniform_interior_derivative_is_zero(self):
        assert Uniform(0, 1).pdf_derivative(0.5) == 0.0

    def test_weibull_pdf_derivative(self):
        assert Weibull(2, 1).pdf_derivative(1.0) == pytest.approx(-2.0 * math.exp(-1.0), abs=1e-14)

    def test_uniform_quantile(self):
        assert Uniform(0, 1).quantile(0.25) == 0.25

    def test_exponential_quantile(self):
        assert Exponential(1.0).quantile(0.5) == pytest.approx(math.log(2.0), abs=1e-15)
        assert Exponential(1.0).quantile(1.0 - math.exp(-1.0)) == pytest.approx(1.0, abs=1e-12)


class TestEvaluatorInvariants:
    @pytest.mark.parametrize("dist", ALL_DISTS, ids=_ids(ALL_DISTS))
    def test_pdf_nonnegative_and_cdf_monotone(self, dist):
        rng = np.random.default_rng(11)
        lo = dist.quantile(1e-6)
        hi = dist.quantile(1.0 - 1e-6)
        ys = np.sort(rng.uniform(lo, hi, 1000))
        dens = dist.pdf(ys)
        cdfs = dist.cdf(ys)
        assert np.all(dens >= 0.0)
        assert np.all(np.diff(cdfs) >= 0.0)
        assert np.all((cdfs >= 0.0) & (cdfs <= 1.0))

    @pytest.mark.parametrize("dist", ALL_DISTS, ids=_ids(ALL_DISTS))
    def test_quantile_inverts_cdf(self, dist):
        rng = np.random.default_rng(12)
        for p in rng.uniform(1e-6, 1.0 - 1e-6, 1000):
            assert abs(float(dist.cdf(dist.quantile(p))) - p) <= 1e-10

    @pytest.mark.parametrize("dist", ALL_DISTS, ids=_ids(ALL_DISTS))
    def test_pdf_integrates_to_one(self, dist):
        eps = 1e-12
        lo = dist.support.lower
        hi = dist.support.upper
        if not math.isfinite(lo):
            lo = dist.quantile(eps)
        if not math.isfinite(hi):
            hi = dist.quantile(1.0 - eps)
        res = integrate(dist.pdf, lo, hi)
        assert res.converged
        assert abs(res.value - 1.0) <= 1e-8

    @pytest.mark.parametrize("dist", ALL_DISTS, ids=_ids(ALL_DISTS))
    def test_pdf_derivative_matches_central_difference(self, dist):
        # interior points away from kinks and support edges
        ys = [dist.quantile(p) for p in (0.2, 0.4, 0.6, 0.8)]
        h0 = float(np.finfo(float).eps) ** (1.0 / 3.0)
        for y in ys:
            analytic = dist.pdf_derivative(y)
            numeric = central_difference(dist.pdf, y, h0 * max(1.0, abs(y)))
            assert abs(analytic - numeric) <= 1e-5 * max(1.0, abs(analytic))

    @pytest.mark.parametrize("y", [0.0, 1.0, -0.5, 2.0])
    def test_uniform_boundary_derivative_signalled(self, y):
        with pytest.raises(DerivativeUndefined):
            Uniform(0, 1).pdf_derivative(y)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_quantile_domain_enforced(self, p):
        with pytest.raises(ValueError):
            Exponential(1.0).quantile(p)

    @pytest.mark.parametrize("dist", ALL_DISTS, ids=_ids(ALL_DISTS))
    def test_samples_land_in_support(self, dist):
        rng = np.random.default_rng(13)
        draws = dist.sample(rng, 500)
        assert draws.shape == (500,)
        assert np.all(draws >= dist.support.lower)
        assert np.all(draws <= dist.support.upper)

    def test_scalar_in_scalar_out(self):
        dist = Gamma(2.0, 1.0)
        assert isinstance(dist.pdf(1.0), float)
        assert isinstance(dist.cdf(1.0), float)
        arr = dist.pdf(np.array([0.5, 1.0]))
        assert isinstance(arr, np.ndarray) and arr.shape == (2,)


class TestGammaQuantile:
    # bisection path; no closed form exists
    @pytest.mark.parametrize("shape,rate", [(2.0, 1.0), (0.5, 2.0), (7.0, 0.25)])
    def test_residual_tiny(self, shape, rate):
        dist = Gamma(shape, rate)
        for p in (1e-9, 0.01, 0.5, 0.99, 1.0 - 1e-9):
            assert abs(float(dist.cdf(dist.quantile(p))) - p) <= 1e-12


class TestDiscretePMF:
    def test_valid(self):
        pmf = DiscretePMF((0.2, 0.3, 0.5))
        assert len(pmf) == 3

    @pytest.mark.parametrize(
        "probs",
        [(), (0.5, 0.6), (1.2, -0.2), (0.5, math.nan), (0.3, 0.3)],
    )
    def test_invalid_raise(self, probs):
        with pytest.raises(ValueError):
            DiscretePMF(tuple(probs))

    def test_parse(self):
        assert parse_pmf("0.5,0.5").probabilities == (0.5, 0.5)
        with pytest.raises(ValueError):
            parse_pmf("0.5,oops")
