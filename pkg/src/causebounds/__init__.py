"""Bounds on probabilities of causation, and how much an observational study
is expected to tighten them."""

from .bounds import (
    pn_bounds,
    pns_bounds_combined,
    pns_bounds_experimental,
    pns_point_identification,
    ps_bounds,
)
from .core import (
    BoundInterval,
    BoundSource,
    CausalBoundsError,
    ConsistencyReport,
    CountTable2x2,
    EmptyArm,
    EmptyTable,
    ExperimentalDistribution,
    GainEquality,
    InconsistentData,
    InvalidDistribution,
    ObservationalDistribution,
    PointIdentified,
    Stratum,
    UndefinedConditional,
    check_consistency,
    estimate_experimental,
    estimate_observational,
)
from .improvement import (
    FeasibleInterval,
    ImprovementReport,
    expected_lower_gain,
    expected_upper_drop,
    feasible_interval_d,
    feasible_interval_d_prime,
    improvement_report,
    lower_gain_cdf,
    upper_drop_cdf,
)
from .unit_selection import (
    BenefitBounds,
    BenefitImprovement,
    BenefitSpec,
    benefit_bounds_combined,
    benefit_bounds_experimental,
    benefit_expected_improvement,
    w_and_sigma,
)

__version__ = "0.1.0"
