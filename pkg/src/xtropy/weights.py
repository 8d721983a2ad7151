"""Weight functions for weighted extropy, with the metadata the rest of
the package relies on: where the weight is nonnegative, how it is
monotone, and where it blows up.  The singular points drive the static
divergence check in the measures layer, so they must be exact."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import Support

__all__ = [
    "WeightSpec",
    "constant_one",
    "identity",
    "inverse",
    "exp_decay",
    "reciprocal_shift",
    "WEIGHT_FORMATS",
    "parse_weight",
]

INCREASING = "increasing"
DECREASING = "decreasing"
CONSTANT = "constant"


@dataclass(frozen=True)
class WeightSpec:
    weight_id: str
    fn: Callable[[np.ndarray], np.ndarray]
    nonnegative_on: Support
    monotone: str
    singular_points: tuple[float, ...] = ()

    def __call__(self, y):
        return self.fn(y)


def constant_one() -> WeightSpec:
    """w(y) = 1; recovers plain extropy."""
    return WeightSpec(
        "one",
        lambda y: np.ones_like(np.asarray(y, dtype=float)),
        Support(-math.inf, math.inf),
        CONSTANT,
    )


def identity() -> WeightSpec:
    """w(y) = y; nonnegative only on [0, inf)."""
    return WeightSpec(
        "y",
        lambda y: np.asarray(y, dtype=float),
        Support(0.0, math.inf),
        INCREASING,
    )


def inverse() -> WeightSpec:
    """w(y) = 1/y; singular at 0."""
    return WeightSpec(
        "inv_y",
        lambda y: 1.0 / np.asarray(y, dtype=float),
        Support(0.0, math.inf),
        DECREASING,
        singular_points=(0.0,),
    )


def exp_decay(alpha: float) -> WeightSpec:
    """w(y) = exp(-alpha * y) with alpha > 0."""
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError("exp_decay needs a positive finite alpha")
    return WeightSpec(
        f"exp:{alpha!r}",
        lambda y: np.exp(-alpha * np.asarray(y, dtype=float)),
        Support(-math.inf, math.inf),
        DECREASING,
    )


def reciprocal_shift() -> WeightSpec:
    """w(y) = 1/(1+y); singular at -1."""
    return WeightSpec(
        "recip1p",
        lambda y: 1.0 / (1.0 + np.asarray(y, dtype=float)),
        Support(-1.0, math.inf),
        DECREASING,
        singular_points=(-1.0,),
    )


WEIGHT_FORMATS: dict[str, str] = {
    "one": "one",
    "y": "y",
    "inv_y": "inv_y",
    "exp": "exp:alpha",
    "recip1p": "recip1p",
}


def parse_weight(text: str) -> WeightSpec:
    """Parse weight ids: ``one``, ``y``, ``inv_y``, ``exp:alpha``, ``recip1p``."""
    token = text.strip()
    if token == "one":
        return constant_one()
    if token == "y":
        return identity()
    if token == "inv_y":
        return inverse()
    if token == "recip1p":
        return reciprocal_shift()
    if token.startswith("exp:"):
        try:
            alpha = float(token[4:])
        except ValueError:
            raise ValueError(f"could not parse exp_decay weight {text!r}") from None
        return exp_decay(alpha)
    known = ", ".join(WEIGHT_FORMATS.values())
    raise ValueError(f"unknown weight {text!r} (known: {known})")
