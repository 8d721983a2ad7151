import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from xtropy.distributions import (
    DiscretePMF,
    Exponential,
    Gamma,
    Normal,
    PowerFunction,
    Uniform,
    Weibull,
)
from xtropy.measures import (
    DIVERGENT,
    FINITE,
    UNDEFINED,
    IntervalCondition,
    MeasureValue,
    compute_measure,
    conditional_density,
    cumulative_past_entropy,
    discrete_entropy,
    discrete_extropy,
    extropy,
    kapur_entropy,
    renyi_entropy,
    shannon_entropy,
    tsallis_entropy,
    varma_entropy,
    weighted_extropy,
    MEASURES,
)
from xtropy.quadrature import QuadratureConfig
from xtropy.weights import WeightSpec, constant_one, identity, inverse, reciprocal_shift
from xtropy.distributions import Support

CATALOG = [
    Uniform(0.0, 1.0),
    Exponential(1.0),
    Weibull(2.0, 1.0),
    Gamma(2.0, 1.0),
    Normal(0.0, 1.0),
    PowerFunction(2.5),
]


def _finite(mv: MeasureValue) -> float:
    assert mv.status == FINITE, mv
    return mv.value


class TestIntervalCondition:
    @pytest.mark.parametrize("c,d", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf), (math.nan, 1.0)])
    def test_invalid_raise(self, c, d):
        with pytest.raises(ValueError):
            IntervalCondition(c, d)


class TestConditionalDensity:
    def test_uniform_window_value(self):
        q = conditional_density(Uniform(0, 1), IntervalCondition(0.2, 0.7))
        assert float(q(np.array([0.5]))[0]) == pytest.approx(2.0, abs=1e-12)
        assert float(q(np.array([0.8]))[0]) == 0.0
        assert float(q(np.array([0.1]))[0]) == 0.0

    def test_full_support_window_is_plain_pdf(self):
        dist = Weibull(2, 1)
        q = conditional_density(dist, IntervalCondition(-1.0, 1e6))
        ys = np.linspace(0.05, 3.0, 40)
        assert np.allclose(q(ys), dist.pdf(ys), rtol=0, atol=1e-14)

    def test_integrates_to_one(self):
        from xtropy.quadrature import integrate

        dist = Gamma(2, 1)
        q = conditional_density(dist, IntervalCondition(0.5, 2.5))
        res = integrate(q, 0.5, 2.5)
        assert abs(res.value - 1.0) <= 1e-9

    def test_zero_mass_raises(self):
        with pytest.raises(ValueError):
            conditional_density(Uniform(0, 1), IntervalCondition(2.0, 3.0))


class TestShannon:
    def test_uniform_is_zero(self):
        assert _finite(shannon_entropy(Uniform(0, 1))) == pytest.approx(0.0, abs=1e-10)

    def test_unit_exponential(self):
        assert _finite(shannon_entropy(Exponential(1))) == pytest.approx(1.0, abs=1e-8)

    def test_conditioned_uniform_window(self):
        mv = shannon_entropy(Uniform(0, 1), IntervalCondition(0.2, 0.7))
        assert _finite(mv) == pytest.approx(math.log(0.5), abs=1e-10)

    def test_power_closed_form(self):
        k = 2.5
        expected = -math.log(k) + (k - 1.0) / k
        assert _finite(shannon_entropy(PowerFunction(k))) == pytest.approx(expected, abs=1e-9)


class TestRenyi:
    @pytest.mark.parametrize(
        "dist,theta,expected",
        [
            (Uniform(0, 1), 2.0, 0.0),
            (Exponential(1), 2.0, math.log(2.0)),
            (Exponential(2), 2.0, 0.0),
        ],
    )
    def test_closed_forms(self, dist, theta, expected):
        assert _finite(renyi_entropy(dist, theta)) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("theta", [1.0, 0.0, -2.0, math.nan])
    def test_invalid_order_undefined(self, theta):
        assert renyi_entropy(Exponential(1), theta).status == UNDEFINED


class TestTsallis:
    @pytest.mark.parametrize(
        "dist,theta,expected",
        [
            (Uniform(0, 1), 3.0, 0.0),
            (Exponential(1), 2.0, 0.5),
            (Exponential(2), 2.0, 0.0),
        ],
    )
    def test_closed_forms(self, dist, theta, expected):
        assert _finite(tsallis_entropy(dist, theta)) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("theta", [1.0, 0.0])
    def test_invalid_order_undefined(self, theta):
        assert tsallis_entropy(Exponential(1), theta).status == UNDEFINED


class TestKapur:
    @pytest.mark.parametrize(
        "dist,theta,lam,expected",
        [
            (Uniform(0, 1), 2.0, 3.0, 0.0),
            (Exponential(1), 2.0, 3.0, math.log(1.5)),
            (Exponential(1), 3.0, 2.0, math.log(1.5)),
        ],
    )
    def test_closed_forms(self, dist, theta, lam, expected):
        assert _finite(kapur_entropy(dist, theta, lam)) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("theta,lam", [(2.0, 2.0), (0.0, 1.0), (1.0, -1.0)])
    def test_invalid_orders_undefined(self, theta, lam):
        assert kapur_entropy(Exponential(1), theta, lam).status == UNDEFINED

    @pytest.mark.parametrize(
        "dist,theta,lam",
        [
            (Exponential(1), 2.0, 3.0),
            (Weibull(2, 1), 1.5, 2.5),
            (Uniform(0, 2), 0.5, 1.5),
        ],
    )
    def test_swap_symmetry(self, dist, theta, lam):
        a = _finite(kapur_entropy(dist, theta, lam))
        b = _finite(kapur_entropy(dist, lam, theta))
        assert abs(a - b) <= 1e-10


class TestVarma:
    @pytest.mark.parametrize(
        "dist,theta,lam,expected",
        [
            (Uniform(0, 1), 1.5, 2.0, 0.0),
            (Exponential(1), 1.5, 2.0, 2.0 * math.log(1.0 / 2.5)),
        ],
    )
    def test_closed_forms(self, dist, theta, lam, expected):
        assert _finite(varma_entropy(dist, theta, lam)) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("theta,lam", [(0.5, 2.0), (2.0, 2.0), (1.5, 0.9), (2.5, 2.0)])
    def test_constraint_gate(self, theta, lam):
        # needs lam-1 < theta < lam with lam >= 1
        assert varma_entropy(Exponential(1), theta, lam).status == UNDEFINED


class TestCumulativePastEntropy:
    def test_uniform(self):
        assert _finite(cumulative_past_entropy(Uniform(0, 1))) == pytest.approx(0.25, abs=1e-10)

    def test_unit_exponential(self):
        expected = math.pi**2 / 6.0 - 1.0
        assert _finite(cumulative_past_entropy(Exponential(1))) == pytest.approx(expected, abs=1e-8)

    def test_full_support_conditioning_identity(self):
        plain = _finite(cumulative_past_entropy(Weibull(2, 1)))
        cond = _finite(cumulative_past_entropy(Weibull(2, 1), IntervalCondition(-1.0, 1e3)))
        assert abs(plain - cond) <= 2e-10


class TestExtropy:
    def test_uniform(self):
        assert _finite(extropy(Uniform(0, 1))) == pytest.approx(-0.5, abs=1e-10)

    @pytest.mark.parametrize("mu", [1.0, 2.0])
    def test_exponential(self, mu):
        assert _finite(extropy(Exponential(mu))) == pytest.approx(-mu / 4.0, abs=1e-10)

    def test_conditioned_uniform(self):
        mv = extropy(Uniform(0, 1), IntervalCondition(0.2, 0.7))
        assert _finite(mv) == pytest.approx(-1.0, abs=1e-9)

    @pytest.mark.parametrize("a", [0.5, 2.0, 5.0])
    def test_scale_law(self, a):
        # J(aY) = J(Y)/a
        scaled = _finite(extropy(Uniform(0, a)))
        base = _finite(extropy(Uniform(0, 1)))
        assert abs(scaled - base / a) <= 1e-8

    def test_nonpositive_over_random_windows(self):
        rng = np.random.default_rng(42)
        abs_tol = QuadratureConfig().abs_tol
        for i in range(100):
            dist = CATALOG[i % len(CATALOG)]
            p1, p2 = np.sort(rng.uniform(0.001, 0.999, 2))
            if p2 - p1 < 0.01:
                p2 = min(0.999, p1 + 0.01)
            window = IntervalCondition(dist.quantile(p1), dist.quantile(p2))
            mv = extropy(dist, window)
            assert mv.status == FINITE
            assert mv.value <= abs_tol

    def test_zero_mass_window_undefined(self):
        assert extropy(Uniform(0, 1), IntervalCondition(2.0, 3.0)).status == UNDEFINED
        assert extropy(Exponential(1), IntervalCondition(5e3, 6e3)).status == UNDEFINED

    def test_budget_exhaustion_is_divergent_not_finite(self):
        mv = extropy(Weibull(2, 1), cfg=QuadratureConfig(max_subdivisions=1))
        assert mv.status == DIVERGENT
        assert mv.value is None


class TestWeightedExtropy:
    @pytest.mark.parametrize("dist", CATALOG, ids=lambda d: d.spec_string())
    def test_constant_weight_recovers_extropy(self, dist):
        a = _finite(weighted_extropy(dist, constant_one()))
        b = _finite(extropy(dist))
        assert abs(a - b) <= 1e-12

    @pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
    def test_exponential_identity_weight_is_rate_free(self, mu):
        assert _finite(weighted_extropy(Exponential(mu), identity())) == pytest.approx(
            -0.125, abs=1e-10
        )

    def test_uniform_identity_weight(self):
        assert _finite(weighted_extropy(Uniform(0, 1), identity())) == pytest.approx(
            -0.25, abs=1e-10
        )

    def test_inverse_weight_on_exponential_diverges(self):
        mv = weighted_extropy(Exponential(1), inverse())
        assert mv.status == DIVERGENT
        assert mv.value is None

    def test_inverse_weight_away_from_singularity_is_finite(self):
        # window (0.5, 2) excludes the pole at 0; closed form via E1
        mv = weighted_extropy(Exponential(1), inverse(), IntervalCondition(0.5, 2.0))
        mass = math.exp(-0.5) - math.exp(-2.0)
        expected = -0.5 * (special.exp1(1.0) - special.exp1(4.0)) / mass**2
        assert _finite(mv) == pytest.approx(expected, abs=1e-10)

    def test_inverse_weight_with_vanishing_density_is_finite(self):
        # power density 2.5*y**1.5 vanishes at the pole: w*q**2 = 6.25*y**2
        mv = weighted_extropy(PowerFunction(2.5), inverse())
        assert _finite(mv) == pytest.approx(-0.5 * 6.25 / 3.0, abs=1e-9)

    def test_negative_weight_region_undefined(self):
        assert weighted_extropy(Normal(0, 1), identity()).status == UNDEFINED

    def test_reciprocal_shift_singularity_inside_window(self):
        mv = weighted_extropy(Normal(-1, 1), reciprocal_shift(), IntervalCondition(-1.0, 0.0))
        assert mv.status == DIVERGENT

    def test_reciprocal_shift_on_positive_support_is_finite(self):
        mv = weighted_extropy(Exponential(1), reciprocal_shift())
        assert mv.status == FINITE
        assert mv.value < 0.0


class TestOrderLimits:
    @pytest.mark.parametrize("dist", [Uniform(0, 1), Exponential(1)], ids=lambda d: d.spec_string())
    @pytest.mark.parametrize("theta", [1.0 - 1e-4, 1.0 + 1e-4])
    def test_renyi_approaches_shannon(self, dist, theta):
        h = _finite(shannon_entropy(dist))
        assert abs(_finite(renyi_entropy(dist, theta)) - h) <= 1e-3

    @pytest.mark.parametrize("dist", [Uniform(0, 1), Exponential(1)], ids=lambda d: d.spec_string())
    @pytest.mark.parametrize("theta", [1.0 - 1e-4, 1.0 + 1e-4])
    def test_tsallis_approaches_shannon(self, dist, theta):
        h = _finite(shannon_entropy(dist))
        assert abs(_finite(tsallis_entropy(dist, theta)) - h) <= 1e-3


class TestConditioningIdentity:
    HUGE = {
        "uniform": IntervalCondition(-1.0, 2.0),
        "exp": IntervalCondition(-1.0, 1e4),
        "weibull": IntervalCondition(-1.0, 1e3),
        "gamma": IntervalCondition(-1.0, 1e3),
        "normal": IntervalCondition(-1e3, 1e3),
        "power": IntervalCondition(-1.0, 2.0),
    }

    @pytest.mark.parametrize("dist", CATALOG, ids=lambda d: d.spec_string())
    @pytest.mark.parametrize("fn", [shannon_entropy, cumulative_past_entropy, extropy])
    def test_superset_window_equals_unconditional(self, dist, fn):
        window = self.HUGE[dist.family]
        abs_tol = QuadratureConfig().abs_tol
        assert abs(_finite(fn(dist, window)) - _finite(fn(dist))) <= 2.0 * abs_tol


class TestDiscrete:
    def test_symmetric_two_point(self):
        pmf = DiscretePMF((0.5, 0.5))
        assert discrete_entropy(pmf) == pytest.approx(math.log(2.0), abs=1e-15)
        assert discrete_extropy(pmf) == pytest.approx(math.log(2.0), abs=1e-15)

    def test_degenerate(self):
        pmf = DiscretePMF((1.0, 0.0))
        assert discrete_entropy(pmf) == 0.0
        assert discrete_extropy(pmf) == 0.0

    def test_uniform_three_point(self):
        pmf = DiscretePMF((1 / 3, 1 / 3, 1 / 3))
        assert discrete_entropy(pmf) == pytest.approx(math.log(3.0), abs=1e-15)
        assert discrete_extropy(pmf) == pytest.approx(2.0 * math.log(1.5), abs=1e-15)

    @given(p=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=100, deadline=None)
    def test_two_point_identity(self, p):
        pmf = DiscretePMF((p, 1.0 - p))
        assert abs(discrete_extropy(pmf) - discrete_entropy(pmf)) <= 1e-12


class TestDispatch:
    def test_unknown_measure(self):
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "nope")

    def test_missing_theta(self):
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "renyi")

    def test_missing_lambda(self):
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "kapur", theta=2.0)

    def test_missing_weight(self):
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "wextropy")

    def test_surplus_arguments(self):
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "shannon", theta=2.0)
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "extropy", weight=constant_one())
        with pytest.raises(ValueError):
            compute_measure(Uniform(0, 1), "renyi", theta=2.0, lam=3.0)

    def test_registry_dispatch_matches_direct_calls(self):
        mv = compute_measure(Exponential(1), "renyi", theta=2.0)
        assert mv.value == _finite(renyi_entropy(Exponential(1), 2.0))
        mv = compute_measure(
            Exponential(1), "wextropy", weight=identity(), interval=IntervalCondition(0.1, 2.0)
        )
        direct = weighted_extropy(Exponential(1), identity(), IntervalCondition(0.1, 2.0))
        assert mv == direct

    def test_registry_lists_every_measure(self):
        assert set(MEASURES) == {
            "shannon",
            "renyi",
            "tsallis",
            "kapur",
            "varma",
            "cpe",
            "extropy",
            "wextropy",
        }


class TestErrEstimateContract:
    @pytest.mark.parametrize(
        "mv_factory",
        [
            lambda: extropy(Exponential(1)),
            lambda: shannon_entropy(Gamma(2, 1)),
            lambda: renyi_entropy(Exponential(1), 2.0),
            lambda: kapur_entropy(Exponential(1), 2.0, 3.0),
            lambda: cumulative_past_entropy(Uniform(0, 1)),
            lambda: weighted_extropy(Exponential(1), identity()),
        ],
    )
    def test_finite_results_sit_within_requested_tolerance(self, mv_factory):
        cfg = QuadratureConfig()
        mv = mv_factory()
        assert mv.status == FINITE
        assert mv.err_estimate <= max(cfg.abs_tol, cfg.rel_tol * abs(mv.value))

    def test_custom_weight_outside_catalog(self):
        # WeightSpec is an open type: a clipped ramp stays nonnegative
        ramp = WeightSpec(
            "ramp", lambda y: np.maximum(np.asarray(y, dtype=float) - 0.5, 0.0),
            Support(-math.inf, math.inf), "increasing",
        )
        mv = weighted_extropy(Uniform(0, 1), ramp)
        # -(1/2) * integral_{0.5}^{1} (y - 0.5) dy = -1/16
        assert _finite(mv) == pytest.approx(-1.0 / 16.0, abs=1e-9)
