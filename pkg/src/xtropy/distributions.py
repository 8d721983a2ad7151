"""Analytic distribution catalog: density, cdf, density derivative, quantile.

The Weibull and gamma families use the shape/rate convention, so the
Weibull density is ``t * l**t * y**(t-1) * exp(-(l*y)**t)`` for shape ``t``
and rate ``l``, and ``weibull:2,1`` parses to shape 2, rate 1.  ``power:k``
is the density ``k * y**(k-1)`` on (0, 1).

``pdf``/``cdf`` accept a float or a numpy array and return the matching
kind.  ``pdf_derivative`` is the analytic derivative at a single interior
point; at kinks or outside the open support it raises
:class:`DerivativeUndefined` rather than inventing a one-sided value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import special

__all__ = [
    "Support",
    "Distribution",
    "Uniform",
    "Exponential",
    "Weibull",
    "Gamma",
    "Normal",
    "PowerFunction",
    "DiscretePMF",
    "DerivativeUndefined",
    "FAMILIES",
    "FAMILY_FORMATS",
    "parse_distribution",
    "parse_pmf",
]

ArrayLike = Union[float, np.ndarray]


class DerivativeUndefined(ValueError):
    """The density derivative does not exist at the requested point."""


@dataclass(frozen=True)
class Support:
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise ValueError("support must have lower < upper")

    def contains(self, y: float) -> bool:
        return self.lower <= y <= self.upper

    def interior_contains(self, y: float) -> bool:
        return self.lower < y < self.upper


def _dispatch(y: ArrayLike, fn: Callable[[np.ndarray], np.ndarray]) -> ArrayLike:
    """Evaluate a vectorized kernel, preserving scalar-in scalar-out."""
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    out = fn(arr)
    if np.ndim(y) == 0:
        return float(out[0])
    return out


class Distribution:
    """Base class; concrete families implement the ``_arr`` kernels."""

    family: str = ""

    @property
    def support(self) -> Support:
        raise NotImplementedError

    @property
    def params(self) -> tuple[float, ...]:
        raise NotImplementedError

    def pdf(self, y: ArrayLike) -> ArrayLike:
        return _dispatch(y, self._pdf_arr)

    def cdf(self, y: ArrayLike) -> ArrayLike:
        return _dispatch(y, self._cdf_arr)

    def pdf_derivative(self, y: float) -> float:
        """Analytic d/dy pdf(y) at an interior point of the support."""
        y = float(y)
        if not self.support.interior_contains(y):
            raise DerivativeUndefined(
                f"pdf derivative of {self.spec_string()} requested at y={y!r}, "
                "which is not interior to the support"
            )
        return self._pdf_derivative_interior(y)

    def quantile(self, p: float) -> float:
        p = float(p)
        if not 0.0 < p < 1.0:
            raise ValueError("quantile probability must lie in the open interval (0, 1)")
        return self._quantile_open(p)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _pdf_derivative_interior(self, y: float) -> float:
        raise NotImplementedError

    def _quantile_open(self, p: float) -> float:
        raise NotImplementedError

    def spec_string(self) -> str:
        return f"{self.family}:{','.join(repr(p) for p in self.params)}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(repr(p) for p in self.params)})"


@dataclass(frozen=True, repr=False)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0

    family = "uniform"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise ValueError("uniform requires finite endpoints with a < b")

    @property
    def support(self) -> Support:
        return Support(self.a, self.b)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.a, self.b)

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        inside = (y >= self.a) & (y <= self.b)
        return np.where(inside, 1.0 / (self.b - self.a), 0.0)

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        return np.clip((y - self.a) / (self.b - self.a), 0.0, 1.0)

    def _pdf_derivative_interior(self, y: float) -> float:
        return 0.0

    def _quantile_open(self, p: float) -> float:
        return self.a + p * (self.b - self.a)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.a, self.b, size)


@dataclass(frozen=True, repr=False)
class Exponential(Distribution):
    rate: float = 1.0

    family = "exp"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rate) and self.rate > 0.0):
            raise ValueError("exponential rate must be positive and finite")

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.rate,)

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        return np.where(y >= 0.0, self.rate * np.exp(-self.rate * np.maximum(y, 0.0)), 0.0)

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        return np.where(y >= 0.0, -np.expm1(-self.rate * np.maximum(y, 0.0)), 0.0)

    def _pdf_derivative_interior(self, y: float) -> float:
        return -self.rate * self.rate * math.exp(-self.rate * y)

    def _quantile_open(self, p: float) -> float:
        return -math.log1p(-p) / self.rate

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.exponential(1.0 / self.rate, size)


@dataclass(frozen=True, repr=False)
class Weibull(Distribution):
    shape: float = 1.0
    rate: float = 1.0

    family = "weibull"

    def __post_init__(self) -> None:
        ok = math.isfinite(self.shape) and self.shape > 0.0
        ok = ok and math.isfinite(self.rate) and self.rate > 0.0
        if not ok:
            raise ValueError("weibull shape and rate must be positive and finite")

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.shape, self.rate)

    def _value_at_zero(self) -> float:
        # limit of the density as y -> 0+
        if self.shape > 1.0:
            return 0.0
        if self.shape == 1.0:
            return self.rate
        return math.inf

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        pos = y > 0.0
        x = y[pos]
        t, l = self.shape, self.rate
        out[pos] = t * l**t * x ** (t - 1.0) * np.exp(-((l * x) ** t))
        out[y == 0.0] = self._value_at_zero()
        return out

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        pos = y > 0.0
        out[pos] = -np.expm1(-((self.rate * y[pos]) ** self.shape))
        return out

    def _pdf_derivative_interior(self, y: float) -> float:
        t, l = self.shape, self.rate
        u = (l * y) ** t
        return t * l**t * math.exp(-u) * y ** (t - 2.0) * ((t - 1.0) - t * u)

    def _quantile_open(self, p: float) -> float:
        return (-math.log1p(-p)) ** (1.0 / self.shape) / self.rate

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.weibull(self.shape, size) / self.rate


@dataclass(frozen=True, repr=False)
class Gamma(Distribution):
    shape: float = 1.0
    rate: float = 1.0

    family = "gamma"

    def __post_init__(self) -> None:
        ok = math.isfinite(self.shape) and self.shape > 0.0
        ok = ok and math.isfinite(self.rate) and self.rate > 0.0
        if not ok:
            raise ValueError("gamma shape and rate must be positive and finite")

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.shape, self.rate)

    def _value_at_zero(self) -> float:
        if self.shape > 1.0:
            return 0.0
        if self.shape == 1.0:
            return self.rate
        return math.inf

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        pos = y > 0.0
        x = y[pos]
        t, l = self.shape, self.rate
        log_norm = t * math.log(l) - math.lgamma(t)
        out[pos] = np.exp(log_norm + (t - 1.0) * np.log(x) - l * x)
        out[y == 0.0] = self._value_at_zero()
        return out

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        pos = y > 0.0
        out[pos] = special.gammainc(self.shape, self.rate * y[pos])
        return out

    def _pdf_derivative_interior(self, y: float) -> float:
        return float(self.pdf(y)) * ((self.shape - 1.0) / y - self.rate)

    def _quantile_open(self, p: float) -> float:
        # bracketed bisection on the regularized incomplete gamma; no
        # closed form exists for general shape
        lo = 0.0
        hi = max(1.0, self.shape) / self.rate
        for _ in range(400):
            if float(self.cdf(hi)) >= p:
                break
            hi *= 2.0
        else:
            raise ArithmeticError("gamma quantile bracket expansion failed")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if float(self.cdf(mid)) < p:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.gamma(self.shape, 1.0 / self.rate, size)


@dataclass(frozen=True, repr=False)
class Normal(Distribution):
    mean: float = 0.0
    sd: float = 1.0

    family = "normal"

    def __post_init__(self) -> None:
        ok = math.isfinite(self.mean) and math.isfinite(self.sd) and self.sd > 0.0
        if not ok:
            raise ValueError("normal requires finite mean and positive sd")

    @property
    def support(self) -> Support:
        return Support(-math.inf, math.inf)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.mean, self.sd)

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        z = (y - self.mean) / self.sd
        return np.exp(-0.5 * z * z) / (self.sd * math.sqrt(2.0 * math.pi))

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        return special.ndtr((y - self.mean) / self.sd)

    def _pdf_derivative_interior(self, y: float) -> float:
        return -(y - self.mean) / (self.sd * self.sd) * float(self.pdf(y))

    def _quantile_open(self, p: float) -> float:
        return self.mean + self.sd * float(special.ndtri(p))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.normal(self.mean, self.sd, size)


@dataclass(frozen=True, repr=False)
class PowerFunction(Distribution):
    """Density ``k * y**(k-1)`` on (0, 1)."""

    exponent: float = 1.0

    family = "power"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.exponent) and self.exponent > 0.0):
            raise ValueError("power exponent must be positive and finite")

    @property
    def support(self) -> Support:
        return Support(0.0, 1.0)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.exponent,)

    def _value_at_zero(self) -> float:
        if self.exponent > 1.0:
            return 0.0
        if self.exponent == 1.0:
            return 1.0
        return math.inf

    def _pdf_arr(self, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        inside = (y > 0.0) & (y <= 1.0)
        out[inside] = self.exponent * y[inside] ** (self.exponent - 1.0)
        out[y == 0.0] = self._value_at_zero()
        return out

    def _cdf_arr(self, y: np.ndarray) -> np.ndarray:
        return np.clip(y, 0.0, 1.0) ** self.exponent

    def _pdf_derivative_interior(self, y: float) -> float:
        k = self.exponent
        return k * (k - 1.0) * y ** (k - 2.0)

    def _quantile_open(self, p: float) -> float:
        return p ** (1.0 / self.exponent)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.power(self.exponent, size)


@dataclass(frozen=True)
class DiscretePMF:
    """Probability mass function given as an explicit vector."""

    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        p = self.probabilities
        if len(p) < 1:
            raise ValueError("pmf needs at least one entry")
        if any(not (0.0 <= q <= 1.0) or not math.isfinite(q) for q in p):
            raise ValueError("pmf entries must lie in [0, 1]")
        if abs(math.fsum(p) - 1.0) > 1e-12:
            raise ValueError("pmf entries must sum to 1 within 1e-12")

    def __len__(self) -> int:
        return len(self.probabilities)


FAMILIES: dict[str, tuple[type, int]] = {
    "uniform": (Uniform, 2),
    "exp": (Exponential, 1),
    "weibull": (Weibull, 2),
    "gamma": (Gamma, 2),
    "normal": (Normal, 2),
    "power": (PowerFunction, 1),
}

FAMILY_FORMATS: dict[str, str] = {
    "uniform": "uniform:a,b",
    "exp": "exp:mu",
    "weibull": "weibull:theta,lambda",
    "gamma": "gamma:theta,lambda",
    "normal": "normal:mu,sigma",
    "power": "power:k",
}


def parse_distribution(text: str) -> Distribution:
    """Parse strings like ``weibull:2,1`` into distribution objects."""
    head, sep, tail = text.strip().partition(":")
    family = head.strip().lower()
    if family not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ValueError(f"unknown distribution family {family!r} (known: {known})")
    cls, arity = FAMILIES[family]
    if not sep:
        raise ValueError(f"missing parameters for {family!r}; expected {FAMILY_FORMATS[family]!r}")
    try:
        values = [float(tok) for tok in tail.split(",")]
    except ValueError:
        raise ValueError(f"could not parse parameters in {text!r}") from None
    if len(values) != arity:
        raise ValueError(
            f"{family!r} takes {arity} parameter(s); expected {FAMILY_FORMATS[family]!r}"
        )
    return cls(*values)


def parse_pmf(text: str) -> DiscretePMF:
    """Parse a comma-separated probability vector like ``0.2,0.8``."""
    try:
        values = tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"could not parse pmf {text!r}") from None
    return DiscretePMF(values)
