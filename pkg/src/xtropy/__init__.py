"""Entropy and extropy measures of interval-conditioned distributions,
the density of |Y1 - Y2| for conditioned i.i.d. pairs, and empirical
verification of the associated monotonicity claims."""

__version__ = "0.1.0"

from .distributions import (  # noqa: F401
    DiscretePMF,
    Distribution,
    Exponential,
    Gamma,
    Normal,
    PowerFunction,
    Support,
    Uniform,
    Weibull,
    parse_distribution,
    parse_pmf,
)
from .measures import (  # noqa: F401
    IntervalCondition,
    MeasureParams,
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
)
from .convolution import (  # noqa: F401
    DiffDensityContext,
    conditional_expectation,
    diff_density,
    diff_density_result,
    weighted_extropy_of_diff,
)
from .quadrature import (  # noqa: F401
    IntegralResult,
    QuadratureConfig,
    central_difference,
    integrate,
)
from .verify import (  # noqa: F401
    LogShapeReport,
    MonotonicityReport,
    classify_log_shape,
    mc_oracle,
    verify_lemma_a,
    verify_lemma_b,
    verify_theorem1,
    verify_theorem2,
)
from .weights import (  # noqa: F401
    WeightSpec,
    constant_one,
    exp_decay,
    identity,
    inverse,
    parse_weight,
    reciprocal_shift,
)
