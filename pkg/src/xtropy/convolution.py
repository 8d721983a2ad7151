"""Distribution of the absolute difference V = |Y1 - Y2| of two i.i.d.
draws, both conditioned to lie in a window (c, d).

The density of V at v in [0, d-c] is the overlap integral

    h(v) = K * integral_{c+v}^{d} g(y - v) g(y) dy / (G(d) - G(c))**2

with K = 2 under the ``normalized`` convention (density integrates to 1)
and K = 1 under ``paper_literal`` (integrates to 1/2; kept so published
half-convention tables can be reproduced).  Downstream functionals of V
always use the normalized density regardless of the context's convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .distributions import Distribution
from .measures import (
    FINITE,
    UNDEFINED,
    IntervalCondition,
    MeasureValue,
    SINGULARITY_DENSITY_FLOOR,
)
from .quadrature import (
    CONVERGED,
    DIVERGENCE_SUSPECTED,
    IntegrandError,
    QuadratureConfig,
    integrate,
)
from .weights import WeightSpec

__all__ = [
    "NORMALIZED",
    "PAPER_LITERAL",
    "DiffDensityContext",
    "diff_density",
    "diff_density_result",
    "conditional_expectation",
    "weighted_extropy_of_diff",
    "PHI_FORMATS",
    "parse_phi",
]

NORMALIZED = "normalized"
PAPER_LITERAL = "paper_literal"

# inner overlap integrals run tighter than the outer functional so the
# composed error stays within the outer estimate
_INNER_TIGHTEN = 10.0


@dataclass(frozen=True)
class DiffDensityContext:
    """Distribution, window and convention for the |Y1 - Y2| density.

    The window is clamped to the support at construction; a clamped
    window without probability mass is a usage error and raises.
    """

    dist: Distribution
    interval: IntervalCondition
    convention: str = NORMALIZED
    cfg: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self) -> None:
        if self.convention not in (NORMALIZED, PAPER_LITERAL):
            raise ValueError(
                f"convention must be {NORMALIZED!r} or {PAPER_LITERAL!r}"
            )
        sup = self.dist.support
        c = max(self.interval.c, sup.lower)
        d = min(self.interval.d, sup.upper)
        if not c < d:
            raise ValueError("conditioning window misses the support")
        mass = float(self.dist.cdf(d)) - float(self.dist.cdf(c))
        if not mass > 0.0:
            raise ValueError("conditioning window carries no probability mass")
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_d", d)
        object.__setattr__(self, "_mass", mass)

    @property
    def c(self) -> float:
        return self._c

    @property
    def d(self) -> float:
        return self._d

    @property
    def mass(self) -> float:
        return self._mass

    @property
    def width(self) -> float:
        return self._d - self._c


def _overlap(ctx: DiffDensityContext, v: float, cfg: QuadratureConfig):
    """integral_{c+v}^{d} g(y-v) g(y) dy, or None when the range is empty."""
    lo = ctx.c + v
    hi = ctx.d
    if not lo < hi:
        return None
    pdf = ctx.dist.pdf

    def f(y: np.ndarray) -> np.ndarray:
        arr = np.asarray(y, dtype=float)
        return pdf(arr - v) * pdf(arr)

    return integrate(f, lo, hi, cfg)


def diff_density_result(
    ctx: DiffDensityContext, v: float, cfg: Optional[QuadratureConfig] = None
) -> MeasureValue:
    """Density of V at ``v`` with its quadrature error estimate."""
    v = float(v)
    if v < 0.0 or v > ctx.width:
        return MeasureValue(0.0, 0.0, FINITE)
    res = _overlap(ctx, v, cfg or ctx.cfg)
    if res is None:
        return MeasureValue(0.0, 0.0, FINITE)
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    factor = (2.0 if ctx.convention == NORMALIZED else 1.0) / (ctx.mass * ctx.mass)
    return MeasureValue(factor * res.value, factor * res.err_estimate, FINITE)


def diff_density(ctx: DiffDensityContext, v: float) -> float:
    """Density of V at ``v`` (0 outside [0, d-c])."""
    mv = diff_density_result(ctx, v)
    if mv.status != FINITE:
        raise ArithmeticError(f"difference density did not converge at v={v!r}")
    return mv.value


def _normalized_density_fn(
    ctx: DiffDensityContext, inner_cfg: QuadratureConfig
) -> Callable[[float], float]:
    factor = 2.0 / (ctx.mass * ctx.mass)

    def h(v: float) -> float:
        res = _overlap(ctx, v, inner_cfg)
        if res is None:
            return 0.0
        return factor * res.value

    return h


def conditional_expectation(
    ctx: DiffDensityContext,
    phi: Callable[[np.ndarray], np.ndarray],
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """E[phi(V)] under the normalized difference density.

    ``phi`` must be vectorized and finite on [0, d-c].
    """
    cfg = cfg or ctx.cfg
    inner_cfg = cfg.tightened(_INNER_TIGHTEN)
    h = _normalized_density_fn(ctx, inner_cfg)

    def f(v: np.ndarray) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        dens = np.array([h(x) for x in arr])
        return np.asarray(phi(arr), dtype=float) * dens

    try:
        res = integrate(f, 0.0, ctx.width, cfg)
    except IntegrandError:
        return MeasureValue.divergent()
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    return MeasureValue(res.value, res.err_estimate, FINITE)


def weighted_extropy_of_diff(
    ctx: DiffDensityContext,
    weight: WeightSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> MeasureValue:
    """-(1/2) integral_0^{d-c} w(v) h(v)**2 dv, h always normalized.

    Same static divergence rule as the measures layer: a weight
    singularity at a point of [0, d-c] where the difference density is
    positive makes the result ``divergent`` without running quadrature.
    Weight must be nonnegative on [0, d-c], else ``undefined``.
    """
    cfg = cfg or ctx.cfg
    width = ctx.width
    if not (weight.nonnegative_on.lower <= 0.0 and width <= weight.nonnegative_on.upper):
        return MeasureValue(None, 0.0, UNDEFINED)
    for s in weight.singular_points:
        if 0.0 <= s <= width:
            at_s = diff_density_result(ctx, s, cfg)
            if at_s.status != FINITE or at_s.value > SINGULARITY_DENSITY_FLOOR:
                return MeasureValue.divergent()
    inner_cfg = cfg.tightened(_INNER_TIGHTEN)
    h = _normalized_density_fn(ctx, inner_cfg)

    def f(v: np.ndarray) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        dens = np.array([h(x) for x in arr])
        return np.asarray(weight.fn(arr), dtype=float) * dens * dens

    try:
        res = integrate(f, 0.0, width, cfg)
    except IntegrandError:
        return MeasureValue.divergent()
    if res.status != CONVERGED:
        return MeasureValue.divergent()
    return MeasureValue(-0.5 * res.value, 0.5 * res.err_estimate, FINITE)


# named test functions for conditional expectations of V
PHI_FORMATS: dict[str, str] = {
    "one": "1",
    "v": "v",
    "v2": "v**2",
    "expneg": "exp(-v)",
}

_PHI_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "one": lambda v: np.ones_like(np.asarray(v, dtype=float)),
    "v": lambda v: np.asarray(v, dtype=float),
    "v2": lambda v: np.asarray(v, dtype=float) ** 2,
    "expneg": lambda v: np.exp(-np.asarray(v, dtype=float)),
}


def parse_phi(text: str) -> Callable[[np.ndarray], np.ndarray]:
    token = text.strip()
    if token not in _PHI_FUNCTIONS:
        known = ", ".join(sorted(_PHI_FUNCTIONS))
        raise ValueError(f"unknown phi {text!r} (known: {known})")
    return _PHI_FUNCTIONS[token]
