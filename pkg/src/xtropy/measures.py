"""Entropy and extropy measures, unconditional or conditioned on an
interval of observed values.

Conditioning on ``S = (c, d)`` replaces the density ``g`` with
``g / (G(d) - G(c))`` restricted to the window, and every measure here is
computed from that one conditional density (or its cdf), so the
unconditional value is just the window "whole support".  A window that
misses the support, or whose probability mass underflows to zero, yields
status ``undefined`` rather than an exception; a weight singularity
sitting inside the window with positive density yields ``divergent``.

Convention: ``x * log(x)`` is 0 at ``x = 0`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .distributions import DiscretePMF, Distribution
from .quadrature import (
    CONVERGED,
    DEFAULT_CONFIG,
    DIVERGENCE_SUSPECTED,
    IntegralResult,
    IntegrandError,
    QuadratureConfig,
    integrate,
)
from .weights import WeightSpec

__all__ = [
    "FINITE",
    "DIVERGENT",
    "UNDEFINED",
    "IntervalCondition",
    "MeasureValue",
    "MeasureParams",
    "conditional_density",
    "shannon_entropy",
    "renyi_entropy",
    "tsallis_entropy",
    "kapur_entropy",
    "varma_entropy",
    "cumulative_past_entropy",
    "extropy",
    "weighted_extropy",
    "discrete_entropy",
    "discrete_extropy",
    "MEASURES",
    "compute_measure",
]

FINITE = "finite"
DIVERGENT = "divergent"
UNDEFINED = "undefined"

# density below this at a weight singularity counts as "no mass there"
SINGULARITY_DENSITY_FLOOR = 1e-12

# integrals run tighter than the requested tolerance so transformed
# measures (logs, scale factors) still land inside it
_TIGHTEN = 10.0


@dataclass(frozen=True)
class IntervalCondition:
    """Open conditioning window (c, d) on the observed value."""

    c: float
    d: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c) and math.isfinite(self.d)):
            raise ValueError("conditioning endpoints must be finite")
        if not self.c < self.d:
            raise ValueError("conditioning interval needs c < d")


@dataclass(frozen=True)
class MeasureValue:
    value: Optional[float]
    err_estimate: float
    status: str = FINITE

    @classmethod
    def undefined(cls) -> "MeasureValue":
        return cls(None, 0.0, UNDEFINED)

    @classmethod
    def divergent(cls) -> "MeasureValue":
        return cls(None, math.inf, DIVERGENT)


@dataclass(frozen=True)
class MeasureParams:
    """Order parameters for the parametric entropy families.

    Validity depends on the family: Renyi/Tsallis need ``theta > 0,
    theta != 1``; Kapur needs both orders positive and distinct; Varma
    needs ``lam - 1 < theta < lam`` with ``lam >= 1``.  Invalid orders
    make the measure ``undefined`` instead of raising.
    """

    theta: Optional[float] = None
    lam: Optional[float] = None


@dataclass(frozen=True)
class _Window:
    """Effective conditioning window after clamping to the support.

    ``dom_lo/dom_hi`` is the mathematical window (may touch infinity);
    ``int_lo/int_hi`` is the finite integration range after quantile
    truncation of infinite tails.
    """

    dom_lo: float
    dom_hi: float
    int_lo: float
    int_hi: float
    mass: float
    cdf_lo: float


def _window(
    dist: Distribution, interval: Optional[IntervalCondition], cfg: QuadratureConfig
) -> Optional[_Window]:
    sup = dist.support
    if interval is None:
        dom_lo, dom_hi = sup.lower, sup.upper
        mass = 1.0
        cdf_lo = 0.0
    else:
        dom_lo = max(interval.c, sup.lower)
        dom_hi = min(interval.d, sup.upper)
        if not dom_lo < dom_hi:
            return None
        cdf_lo = float(dist.cdf(dom_lo))
        mass = float(dist.cdf(dom_hi)) - cdf_lo
        if not mass > 0.0:
            return None
    int_lo = dom_lo
    int_hi = dom_hi
    if not math.isfinite(sup.lower):
        int_lo = max(int_lo, dist.quantile(cfg.tail_mass))
    if not math.isfinite(sup.upper):
        int_hi = min(int_hi, dist.quantile(1.0 - cfg.tail_mass))
    if not int_lo < int_hi:
        # window sits entirely inside a truncated tail
        return None
    return _Window(dom_lo, dom_hi, int_lo, int_hi, mass, cdf_lo)


def _cond_pdf(dist: Distribution, w: _Window) -> Callable[[np.ndarray], np.ndarray]:
    lo, hi, mass = w.dom_lo, w.dom_hi, w.mass

    def q(y: np.ndarray) -> np.ndarray:
        arr = np.asarray(y, dtype=float)
        inside = (arr >= lo) & (arr <= hi)
        dens = np.where(inside, dist.pdf(arr), 0.0)
        return dens / mass

    return q


def _cond_cdf(dist: Distribution, w: _Window) -> Callable[[np.ndarray], np.ndarray]:
    cdf_lo, mass = w.cdf_lo, w.mass

    def G(y: np.ndarray) -> np.ndarray:
        arr = np.asarray(y, dtype=float)
        return np.clip((dist.cdf(arr) - cdf_lo) / mass, 0.0, 1.0)

    return G


def conditional_density(
    dist: Distribution, interval: Optional[IntervalCondition]
) -> Callable[[np.ndarray], np.ndarray]:
    """Density of the value given that it fell in ``interval``.

    Returns a vectorized callable; zero outside the window.  Raises
    ``ValueError`` when the window carries no probability mass.  With
    ``interval=None`` (or a window covering the support) this is the
    plain density.
    """
    w = _window(dist, interval, DEFAULT_CONFIG)
    if w is None:
        raise ValueError("conditioning interval carries no probability mass")
    return _cond_pdf(dist, w)


_FAILED = IntegralResult(math.nan, math.inf, 0, DIVERGENCE_SUSPECTED)


def _run(f, w: _Window, cfg: QuadratureConfig) -> IntegralResult:
    """Integrate over the window; overflow at an interior node means the
    integrand is blowing up, so it is reported like suspected divergence."""
    try:
        return integrate(f, w.int_lo, w.int_hi, cfg.tightened(_TIGHTEN))
    except IntegrandError:
        return _FAILED


def _from_integral(res: IntegralResult, scale: float) -> MeasureValue:
    # a quadrature that did not converge cannot honestly be called finite;
    # within this catalog that only happens when the integrand is singular
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    return MeasureValue(scale * res.value, abs(scale) * res.err_estimate, FINITE)


def _power_integral(
    dist: Distribution, w: _Window, order: float, cfg: QuadratureConfig
) -> IntegralResult:
    q = _cond_pdf(dist, w)

    def f(y: np.ndarray) -> np.ndarray:
        dens = q(y)
        return np.where(dens > 0.0, dens**order, 0.0)

    return _run(f, w, cfg)


def shannon_entropy(
    dist: Distribution,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """Differential entropy -integral(g log g) of the (conditional) density."""
    cfg = cfg or DEFAULT_CONFIG
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    q = _cond_pdf(dist, w)

    def f(y: np.ndarray) -> np.ndarray:
        dens = q(y)
        return np.where(dens > 0.0, dens * np.log(np.where(dens > 0.0, dens, 1.0)), 0.0)

    res = _run(f, w, cfg)
    return _from_integral(res, -1.0)


def renyi_entropy(
    dist: Distribution,
    theta: float,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """log(integral(g**theta)) / (1 - theta) for theta > 0, theta != 1."""
    cfg = cfg or DEFAULT_CONFIG
    if not (math.isfinite(theta) and theta > 0.0 and theta != 1.0):
        return MeasureValue.undefined()
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    res = _power_integral(dist, w, theta, cfg)
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    if not res.value > 0.0:
        return MeasureValue.undefined()
    value = math.log(res.value) / (1.0 - theta)
    err = res.err_estimate / (res.value * abs(1.0 - theta))
    return MeasureValue(value, err, FINITE)


def tsallis_entropy(
    dist: Distribution,
    theta: float,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """(1 - integral(g**theta)) / (theta - 1) for theta > 0, theta != 1."""
    cfg = cfg or DEFAULT_CONFIG
    if not (math.isfinite(theta) and theta > 0.0 and theta != 1.0):
        return MeasureValue.undefined()
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    res = _power_integral(dist, w, theta, cfg)
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    value = (1.0 - res.value) / (theta - 1.0)
    err = res.err_estimate / abs(theta - 1.0)
    return MeasureValue(value, err, FINITE)


def kapur_entropy(
    dist: Distribution,
    theta: float,
    lam: float,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """(log integral(g**theta) - log integral(g**lam)) / (lam - theta)."""
    cfg = cfg or DEFAULT_CONFIG
    ok = math.isfinite(theta) and math.isfinite(lam)
    ok = ok and theta > 0.0 and lam > 0.0 and theta != lam
    if not ok:
        return MeasureValue.undefined()
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    res_t = _power_integral(dist, w, theta, cfg)
    res_l = _power_integral(dist, w, lam, cfg)
    if res_t.status != CONVERGED or res_l.status != CONVERGED:
        return MeasureValue.divergent()
    if not (res_t.value > 0.0 and res_l.value > 0.0):
        return MeasureValue.undefined()
    value = (math.log(res_t.value) - math.log(res_l.value)) / (lam - theta)
    err = (
        res_t.err_estimate / res_t.value + res_l.err_estimate / res_l.value
    ) / abs(lam - theta)
    return MeasureValue(value, err, FINITE)


def varma_entropy(
    dist: Distribution,
    theta: float,
    lam: float,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """log(integral(g**(theta+lam-1))) / (lam - theta), lam-1 < theta < lam, lam >= 1."""
    cfg = cfg or DEFAULT_CONFIG
    ok = math.isfinite(theta) and math.isfinite(lam)
    ok = ok and lam >= 1.0 and (lam - 1.0) < theta < lam
    if not ok:
        return MeasureValue.undefined()
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    order = theta + lam - 1.0
    res = _power_integral(dist, w, order, cfg)
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    if not res.value > 0.0:
        return MeasureValue.undefined()
    value = math.log(res.value) / (lam - theta)
    err = res.err_estimate / (res.value * abs(lam - theta))
    return MeasureValue(value, err, FINITE)


def cumulative_past_entropy(
    dist: Distribution,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """-integral(G log G) of the (conditional) cdf over the window."""
    cfg = cfg or DEFAULT_CONFIG
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    G = _cond_cdf(dist, w)

    def f(y: np.ndarray) -> np.ndarray:
        u = G(y)
        return np.where(u > 0.0, u * np.log(np.where(u > 0.0, u, 1.0)), 0.0)

    res = _run(f, w, cfg)
    return _from_integral(res, -1.0)


def extropy(
    dist: Distribution,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """-(1/2) integral(g**2) of the (conditional) density."""
    cfg = cfg or DEFAULT_CONFIG
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    res = _power_integral(dist, w, 2.0, cfg)
    return _from_integral(res, -0.5)


def weighted_extropy(
    dist: Distribution,
    weight: WeightSpec,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """-(1/2) integral(w(y) g(y)**2) of the (conditional) density.

    Weight must be nonnegative on the whole effective window, else the
    measure is ``undefined``.  A weight singularity inside the closed
    window where the density exceeds ``SINGULARITY_DENSITY_FLOOR`` makes
    it ``divergent`` before any quadrature runs (static detection beats
    the dynamic heuristic).
    """
    cfg = cfg or DEFAULT_CONFIG
    w = _window(dist, interval, cfg)
    if w is None:
        return MeasureValue.undefined()
    if not (
        weight.nonnegative_on.lower <= w.dom_lo and w.dom_hi <= weight.nonnegative_on.upper
    ):
        return MeasureValue.undefined()
    for s in weight.singular_points:
        if w.dom_lo <= s <= w.dom_hi and float(dist.pdf(s)) > SINGULARITY_DENSITY_FLOOR:
            return MeasureValue.divergent()
    q = _cond_pdf(dist, w)

    def f(y: np.ndarray) -> np.ndarray:
        dens = q(y)
        return weight.fn(y) * dens * dens

    res = _run(f, w, cfg)
    return _from_integral(res, -0.5)


def discrete_entropy(pmf: DiscretePMF) -> float:
    """-sum(p log p) with 0 log 0 = 0."""
    return -math.fsum(p * math.log(p) for p in pmf.probabilities if p > 0.0)


def discrete_extropy(pmf: DiscretePMF) -> float:
    """-sum((1-p) log(1-p)); equals discrete entropy when len(pmf) == 2."""
    return -math.fsum(
        (1.0 - p) * math.log(1.0 - p) for p in pmf.probabilities if p < 1.0
    )


# registry for the CLI/catalog; flags say which extras each measure takes
MEASURES: dict[str, dict[str, bool]] = {
    "shannon": {"theta": False, "lam": False, "weight": False},
    "renyi": {"theta": True, "lam": False, "weight": False},
    "tsallis": {"theta": True, "lam": False, "weight": False},
    "kapur": {"theta": True, "lam": True, "weight": False},
    "varma": {"theta": True, "lam": True, "weight": False},
    "cpe": {"theta": False, "lam": False, "weight": False},
    "extropy": {"theta": False, "lam": False, "weight": False},
    "wextropy": {"theta": False, "lam": False, "weight": True},
}


def compute_measure(
    dist: Distribution,
    measure_id: str,
    *,
    weight: Optional[WeightSpec] = None,
    theta: Optional[float] = None,
    lam: Optional[float] = None,
    interval: Optional[IntervalCondition] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """Dispatch a measure by its registry id.

    Raises ``ValueError`` for unknown ids or missing/surplus arguments
    (usage errors); numeric trouble comes back in the MeasureValue status.
    """
    if measure_id not in MEASURES:
        known = ", ".join(sorted(MEASURES))
        raise ValueError(f"unknown measure {measure_id!r} (known: {known})")
    needs = MEASURES[measure_id]
    if needs["theta"] and theta is None:
        raise ValueError(f"measure {measure_id!r} requires --theta")
    if needs["lam"] and lam is None:
        raise ValueError(f"measure {measure_id!r} requires --lambda")
    if needs["weight"] and weight is None:
        raise ValueError(f"measure {measure_id!r} requires a weight")
    if not needs["weight"] and weight is not None:
        raise ValueError(f"measure {measure_id!r} does not take a weight")
    if not needs["theta"] and theta is not None:
        raise ValueError(f"measure {measure_id!r} does not take theta")
    if not needs["lam"] and lam is not None:
        raise ValueError(f"measure {measure_id!r} does not take lambda")

    if measure_id == "shannon":
        return shannon_entropy(dist, interval, cfg)
    if measure_id == "renyi":
        return renyi_entropy(dist, theta, interval, cfg)
    if measure_id == "tsallis":
        return tsallis_entropy(dist, theta, interval, cfg)
    if measure_id == "kapur":
        return kapur_entropy(dist, theta, lam, interval, cfg)
    if measure_id == "varma":
        return varma_entropy(dist, theta, lam, interval, cfg)
    if measure_id == "cpe":
        return cumulative_past_entropy(dist, interval, cfg)
    if measure_id == "extropy":
        return extropy(dist, interval, cfg)
    return weighted_extropy(dist, weight, interval, cfg)
