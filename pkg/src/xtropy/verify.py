"""Empirical verification of the monotonicity claims.

The claims checked here, each over explicit grids with error-aware slack:

* ``theorem1``: with a log-concave cdf, the conditional extropy of the
  window (c, d) is nondecreasing in d for fixed c.  The expected
  direction is chosen by classifying the cdf numerically; a log-convex
  cdf flips it, anything else downgrades the run to report-only.
* ``theorem2``: with a log-concave density and a nonincreasing
  nonnegative weight, the weighted extropy of the difference |Y1 - Y2|
  grows with d (fixed c) and falls as c grows (fixed d).
* ``lemma_a``: for nondecreasing phi, E[phi(V) | S] grows with d and
  falls as c grows.
* ``lemma_b``: with a log-concave density, the difference density h(v)
  is nonincreasing in v.

A comparison only counts as a violation when it exceeds
``10 * (err_i + err_j) + 1e-9`` so quadrature noise can never fail a
true theorem.  Reports are plain frozen dataclasses; identical inputs
give identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .convolution import (
    DiffDensityContext,
    conditional_expectation,
    diff_density_result,
    weighted_extropy_of_diff,
)
from .distributions import Distribution
from .measures import (
    FINITE,
    IntervalCondition,
    MeasureValue,
    extropy,
    _window,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .weights import CONSTANT, DECREASING, WeightSpec

__all__ = [
    "LOG_CONCAVE",
    "LOG_CONVEX",
    "LOG_LINEAR",
    "INDETERMINATE",
    "NONDECREASING",
    "NONINCREASING",
    "REPORT_ONLY",
    "LogShapeReport",
    "SweepGrid",
    "SweepCell",
    "Violation",
    "MonotonicityReport",
    "classify_log_shape",
    "verify_theorem1",
    "verify_theorem2",
    "verify_lemma_a",
    "verify_lemma_b",
    "mc_oracle",
]

LOG_CONCAVE = "log_concave"
LOG_CONVEX = "log_convex"
LOG_LINEAR = "log_linear"
INDETERMINATE = "indeterminate"

NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"
REPORT_ONLY = "report_only"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

_BASE_SLACK = 1e-9
_ERR_SLACK_FACTOR = 10.0


@dataclass(frozen=True)
class LogShapeReport:
    classification: str
    grid: tuple[float, ...]
    second_difference_extrema: tuple[float, float]
    tolerance_band: float
    diagnostic: Optional[str] = None


@dataclass(frozen=True)
class SweepGrid:
    """One varying coordinate with everything else held fixed."""

    varying: str
    points: tuple[float, ...]
    fixed: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if self.varying not in ("c", "d", "v"):
            raise ValueError("varying coordinate must be one of 'c', 'd', 'v'")
        if len(self.points) < 1:
            raise ValueError("sweep grid needs at least one point")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("sweep grid points must be strictly increasing")


@dataclass(frozen=True)
class SweepCell:
    c: float
    d: float
    value: MeasureValue
    v: Optional[float] = None


@dataclass(frozen=True)
class Violation:
    index: int
    magnitude: float


@dataclass(frozen=True)
class MonotonicityReport:
    claim: str
    dist: str
    params: tuple[float, ...]
    weight: Optional[str]
    grid: Mapping[str, object]
    cells: tuple[SweepCell, ...]
    direction_expected: str
    violations: tuple[Violation, ...]
    slack: float
    verdict: str
    nonfinite_cells: tuple[int, ...] = ()
    phi: Optional[str] = None


def classify_log_shape(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    n: int = 101,
    band: Optional[float] = None,
) -> LogShapeReport:
    """Classify log f on an interval by the sign of second differences.

    ``log_concave`` when all second differences of log f on the n-point
    grid stay below +band, ``log_convex`` when all stay above -band,
    ``log_linear`` when both hold.  Nonpositive or non-finite values of
    ``f`` anywhere on the grid give ``indeterminate`` with a diagnostic.
    The default band is 1e-7 of the largest second-difference magnitude
    (at least 1e-7), absorbing round-off on genuinely linear shapes.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("classification interval must be finite with lo < hi")
    if n < 5:
        raise ValueError("classification grid needs at least 5 points")
    ys = np.linspace(lo, hi, n)
    fy = np.asarray(f(ys), dtype=float)
    grid = tuple(float(y) for y in ys)
    good = np.isfinite(fy) & (fy > 0.0)
    if not np.all(good):
        bad = float(ys[~good][0])
        return LogShapeReport(
            INDETERMINATE,
            grid,
            (math.nan, math.nan),
            band if band is not None else 0.0,
            diagnostic=f"f is not finite and positive at y={bad!r}",
        )
    logs = np.log(fy)
    d2 = logs[2:] - 2.0 * logs[1:-1] + logs[:-2]
    extrema = (float(np.min(d2)), float(np.max(d2)))
    if band is None:
        band = 1e-7 * max(1.0, float(np.max(np.abs(d2))))
    concave_ok = bool(np.all(d2 <= band))
    convex_ok = bool(np.all(d2 >= -band))
    if concave_ok and convex_ok:
        classification = LOG_LINEAR
    elif concave_ok:
        classification = LOG_CONCAVE
    elif convex_ok:
        classification = LOG_CONVEX
    else:
        classification = INDETERMINATE
    return LogShapeReport(classification, grid, extrema, float(band))


def _inset(lo: float, hi: float) -> tuple[float, float]:
    # nudge off exact boundary points where a density may be exactly zero
    width = hi - lo
    return lo + 1e-12 * width, hi - 1e-12 * width


def _require_log_concave_pdf(dist: Distribution, lo: float, hi: float, what: str) -> None:
    shape = classify_log_shape(dist.pdf, _inset(lo, hi))
    if shape.classification not in (LOG_CONCAVE, LOG_LINEAR):
        raise ValueError(
            f"{what} needs a log-concave density on ({lo!r}, {hi!r}); "
            f"classification was {shape.classification!r}"
            + (f" ({shape.diagnostic})" if shape.diagnostic else "")
        )


def _require_strictly_increasing(points: Sequence[float], name: str) -> tuple[float, ...]:
    pts = tuple(float(p) for p in points)
    if len(pts) < 1:
        raise ValueError(f"{name} must not be empty")
    if any(not math.isfinite(p) for p in pts):
        raise ValueError(f"{name} must contain finite values")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    return pts


def _check_runs(
    cells: Sequence[SweepCell],
    runs: Sequence[Sequence[int]],
    direction: str,
) -> tuple[tuple[Violation, ...], float]:
    """Compare adjacent cells inside each run.  Returns (violations, slack)
    where slack is the largest allowance used in any comparison."""
    violations: list[Violation] = []
    max_slack = _BASE_SLACK
    for run in runs:
        for i, j in zip(run, run[1:]):
            a = cells[i].value
            b = cells[j].value
            if a.status != FINITE or b.status != FINITE:
                continue
            slack = _ERR_SLACK_FACTOR * (a.err_estimate + b.err_estimate) + _BASE_SLACK
            max_slack = max(max_slack, slack)
            diff = b.value - a.value
            if direction == NONDECREASING and diff < -slack:
                violations.append(Violation(i, -diff))
            elif direction == NONINCREASING and diff > slack:
                violations.append(Violation(i, diff))
    return tuple(violations), max_slack


def _verdict(cells: Sequence[SweepCell], violations: Sequence[Violation]) -> tuple[str, tuple[int, ...]]:
    nonfinite = tuple(i for i, cell in enumerate(cells) if cell.value.status != FINITE)
    if nonfinite:
        return INCONCLUSIVE, nonfinite
    return (FAIL if violations else PASS), ()


def verify_theorem1(
    dist: Distribution,
    c: float,
    d_grid: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
) -> MonotonicityReport:
    """Sweep the conditional extropy of (c, d) over increasing d.

    The expected direction follows the numeric classification of the cdf
    on (c, max d): log-concave expects nondecreasing, log-convex expects
    nonincreasing, anything else records values without asserting a
    direction (``report_only``).
    """
    cfg = cfg or DEFAULT_CONFIG
    c = float(c)
    pts = _require_strictly_increasing(d_grid, "d_grid")
    if pts[0] <= c:
        raise ValueError("every d in the grid must exceed c")
    grid = SweepGrid("d", pts, fixed=(("c", c),))
    for d in pts:
        if _window(dist, IntervalCondition(c, d), cfg) is None:
            raise ValueError(f"window ({c!r}, {d!r}) carries no probability mass")
    cells = tuple(
        SweepCell(c, d, extropy(dist, IntervalCondition(c, d), cfg)) for d in pts
    )
    shape = classify_log_shape(dist.cdf, (c, pts[-1]))
    if shape.classification == LOG_CONCAVE:
        direction = NONDECREASING
    elif shape.classification == LOG_CONVEX:
        direction = NONINCREASING
    else:
        # log-linear or indeterminate cdf: record values, assert nothing
        direction = REPORT_ONLY
    if direction == REPORT_ONLY:
        violations: tuple[Violation, ...] = ()
        slack = _BASE_SLACK
    else:
        violations, slack = _check_runs(cells, [range(len(cells))], direction)
    verdict, nonfinite = _verdict(cells, violations)
    return MonotonicityReport(
        claim="theorem1",
        dist=dist.spec_string(),
        params=dist.params,
        weight=None,
        grid=_grid_mapping(grid),
        cells=cells,
        direction_expected=direction,
        violations=violations,
        slack=slack,
        verdict=verdict,
        nonfinite_cells=nonfinite,
    )


def _grid_mapping(grid: SweepGrid) -> Mapping[str, object]:
    out: dict[str, object] = {"varying": grid.varying}
    for name, value in grid.fixed:
        out[name] = value
    out[grid.varying] = list(grid.points)
    return out


def _product_grid_mapping(
    varying: str, c_grid: tuple[float, ...], d_grid: tuple[float, ...]
) -> Mapping[str, object]:
    return {"varying": varying, "c": list(c_grid), "d": list(d_grid)}


def _validate_product_grids(
    c_grid: Sequence[float], d_grid: Sequence[float]
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    cs = _require_strictly_increasing(c_grid, "c_grid")
    ds = _require_strictly_increasing(d_grid, "d_grid")
    if not cs[-1] < ds[0]:
        raise ValueError("grids must satisfy max(c_grid) < min(d_grid)")
    return cs, ds


def _pair_reports(
    claim: str,
    dist: Distribution,
    weight_id: Optional[str],
    phi_id: Optional[str],
    cs: tuple[float, ...],
    ds: tuple[float, ...],
    value_at: Callable[[float, float], MeasureValue],
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """Fill the (c, d) product grid once, then read it along both axes."""
    table = {(ci, dj): value_at(ci, dj) for ci in cs for dj in ds}

    cells_d = tuple(SweepCell(ci, dj, table[(ci, dj)]) for ci in cs for dj in ds)
    runs_d = [
        [i * len(ds) + j for j in range(len(ds))] for i in range(len(cs))
    ]
    viol_d, slack_d = _check_runs(cells_d, runs_d, NONDECREASING)
    verdict_d, nonfinite_d = _verdict(cells_d, viol_d)
    report_d = MonotonicityReport(
        claim=claim,
        dist=dist.spec_string(),
        params=dist.params,
        weight=weight_id,
        grid=_product_grid_mapping("d", cs, ds),
        cells=cells_d,
        direction_expected=NONDECREASING,
        violations=viol_d,
        slack=slack_d,
        verdict=verdict_d,
        nonfinite_cells=nonfinite_d,
        phi=phi_id,
    )

    cells_c = tuple(SweepCell(ci, dj, table[(ci, dj)]) for dj in ds for ci in cs)
    runs_c = [
        [j * len(cs) + i for i in range(len(cs))] for j in range(len(ds))
    ]
    viol_c, slack_c = _check_runs(cells_c, runs_c, NONINCREASING)
    verdict_c, nonfinite_c = _verdict(cells_c, viol_c)
    report_c = MonotonicityReport(
        claim=claim,
        dist=dist.spec_string(),
        params=dist.params,
        weight=weight_id,
        grid=_product_grid_mapping("c", cs, ds),
        cells=cells_c,
        direction_expected=NONINCREASING,
        violations=viol_c,
        slack=slack_c,
        verdict=verdict_c,
        nonfinite_cells=nonfinite_c,
        phi=phi_id,
    )
    return report_d, report_c


def verify_theorem2(
    dist: Distribution,
    weight: WeightSpec,
    c_grid: Sequence[float],
    d_grid: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """Weighted extropy of |Y1 - Y2| over the (c, d) product grid.

    Returns the pair (growing-d report, growing-c report).  Hypotheses
    are validated up front: density log-concave on the grid hull, weight
    nonincreasing and nonnegative on [0, max width].  Violating them is
    a usage error, not a failed verdict.
    """
    cfg = cfg or DEFAULT_CONFIG
    cs, ds = _validate_product_grids(c_grid, d_grid)
    hull_lo = max(cs[0], dist.support.lower)
    hull_hi = min(ds[-1], dist.support.upper)
    _require_log_concave_pdf(dist, hull_lo, hull_hi, "theorem2")
    if weight.monotone not in (DECREASING, CONSTANT):
        raise ValueError("theorem2 needs a nonincreasing weight")
    max_width = ds[-1] - cs[0]
    if not (weight.nonnegative_on.lower <= 0.0 and max_width <= weight.nonnegative_on.upper):
        raise ValueError("theorem2 needs the weight nonnegative on [0, max d - min c]")

    def value_at(ci: float, dj: float) -> MeasureValue:
        ctx = DiffDensityContext(dist, IntervalCondition(ci, dj), cfg=cfg)
        return weighted_extropy_of_diff(ctx, weight, cfg)

    return _pair_reports("theorem2", dist, weight.weight_id, None, cs, ds, value_at)


def verify_lemma_a(
    dist: Distribution,
    phi: Callable[[np.ndarray], np.ndarray],
    c_grid: Sequence[float],
    d_grid: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
    phi_id: Optional[str] = None,
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """E[phi(V) | (c, d)] over the product grid, phi nondecreasing.

    Returns the pair (growing-d report, growing-c report).  ``phi`` is
    spot-checked for monotonicity on a grid; a decreasing phi raises.
    """
    cfg = cfg or DEFAULT_CONFIG
    cs, ds = _validate_product_grids(c_grid, d_grid)
    probe = np.linspace(0.0, ds[-1] - cs[0], 65)
    probe_vals = np.asarray(phi(probe), dtype=float)
    if not np.all(np.isfinite(probe_vals)):
        raise ValueError("phi must be finite on [0, max d - min c]")
    if np.any(np.diff(probe_vals) < -1e-12):
        raise ValueError("lemma_a needs a nondecreasing phi")

    def value_at(ci: float, dj: float) -> MeasureValue:
        ctx = DiffDensityContext(dist, IntervalCondition(ci, dj), cfg=cfg)
        return conditional_expectation(ctx, phi, cfg)

    return _pair_reports("lemma_a", dist, None, phi_id, cs, ds, value_at)


def verify_lemma_b(
    dist: Distribution,
    interval: IntervalCondition,
    v_grid: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
    convention: str = "normalized",
) -> MonotonicityReport:
    """Difference density h(v) over increasing v for one fixed window.

    Needs a log-concave density on the window; expects h nonincreasing.
    The verdict is invariant to the density convention (both scale all
    cells by the same factor).
    """
    cfg = cfg or DEFAULT_CONFIG
    ctx = DiffDensityContext(dist, interval, convention, cfg)
    pts = _require_strictly_increasing(v_grid, "v_grid")
    if pts[0] < 0.0 or pts[-1] > ctx.width:
        raise ValueError("v_grid must stay inside [0, d - c]")
    _require_log_concave_pdf(dist, ctx.c, ctx.d, "lemma_b")
    cells = tuple(
        SweepCell(ctx.c, ctx.d, diff_density_result(ctx, v, cfg), v=v) for v in pts
    )
    violations, slack = _check_runs(cells, [range(len(cells))], NONINCREASING)
    verdict, nonfinite = _verdict(cells, violations)
    grid = SweepGrid("v", pts, fixed=(("c", ctx.c), ("d", ctx.d)))
    return MonotonicityReport(
        claim="lemma_b",
        dist=dist.spec_string(),
        params=dist.params,
        weight=None,
        grid=_grid_mapping(grid),
        cells=cells,
        direction_expected=NONINCREASING,
        violations=violations,
        slack=slack,
        verdict=verdict,
        nonfinite_cells=nonfinite,
    )


def mc_oracle(
    dist: Distribution,
    interval: IntervalCondition,
    phi: Callable[[np.ndarray], np.ndarray],
    n: int = 1_000_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of E[phi(V) | S] by pair rejection sampling.

    Draws i.i.d. pairs, keeps those with both coordinates in the window,
    and averages phi over the first ``n`` accepted |Y1 - Y2| values.
    Returns (estimate, standard error).  Deliberately independent of the
    quadrature and quantile code paths.  Raises when the acceptance rate
    collapses below 1e-4.
    """
    n = int(n)
    if n < 10_000:
        raise ValueError("mc_oracle needs n >= 10000")
    sup = dist.support
    c = max(float(interval.c), sup.lower)
    d = min(float(interval.d), sup.upper)
    if not c < d:
        raise ValueError("window misses the support")
    rng = np.random.default_rng(seed)
    chunk = 1 << 17
    kept: list[np.ndarray] = []
    accepted = 0
    drawn = 0
    while accepted < n:
        y1 = dist.sample(rng, chunk)
        y2 = dist.sample(rng, chunk)
        ok = (y1 > c) & (y1 < d) & (y2 > c) & (y2 < d)
        vals = np.abs(y1[ok] - y2[ok])
        kept.append(vals)
        accepted += vals.size
        drawn += chunk
        if accepted < n and drawn >= 1_000_000 and accepted < 1e-4 * drawn:
            raise ValueError(
                f"acceptance rate {accepted / drawn:.2e} below 1e-4; "
                "window too unlikely for rejection sampling"
            )
    v = np.concatenate(kept)[:n]
    phi_v = np.asarray(phi(v), dtype=float)
    estimate = float(np.mean(phi_v))
    stderr = float(np.std(phi_v, ddof=1) / math.sqrt(n))
    return estimate, stderr
