"""Benefit-function bounds for unit selection.

The benefit of selecting a unit from stratum ``c`` is the payoff-weighted
mix of its response-type probabilities,

    f(c) = beta*P(complier) + gamma*P(always) + theta*P(never) + delta*P(defier),

which is affine in PNS: ``f(c) = W + sigma * PNS``. All bounds and expected
improvements here are the PNS quantities pushed through that map.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import pns_bounds_combined, pns_bounds_experimental
from .core import (
    INPUT_TOL,
    BoundInterval,
    BoundSource,
    ExperimentalDistribution,
    GainEquality,
    ObservationalDistribution,
)
from .improvement import expected_lower_gain, expected_upper_drop


@dataclass(frozen=True)
class BenefitSpec:
    """Payoffs for selecting a complier, always-taker, never-taker, defier."""

    beta: float
    gamma: float
    theta: float
    delta: float

    def sigma(self) -> float:
        return self.beta - self.gamma - self.theta + self.delta

    def as_tuple(self):
        return (self.beta, self.gamma, self.theta, self.delta)


@dataclass(frozen=True)
class BenefitBounds:
    lb: float
    ub: float
    w: float
    source: BoundSource

    def __post_init__(self):
        if self.lb > self.ub + 1e-9 * max(1.0, abs(self.w)):
            raise ValueError(f"empty benefit interval [{self.lb!r}, {self.ub!r}]")

    def as_tuple(self) -> tuple[float, float]:
        return (self.lb, self.ub)


@dataclass(frozen=True)
class BenefitImprovement:
    e_lb_gain: float
    e_ub_drop: float


def w_and_sigma(b: BenefitSpec, e: ExperimentalDistribution) -> tuple[float, float]:
    w = (b.gamma - b.delta) * e.p_y_x + b.delta * e.p_y_xp + b.theta * e.p_yp_xp
    return w, b.sigma()


def _assemble(b: BenefitSpec, e: ExperimentalDistribution, pns: BoundInterval) -> BenefitBounds:
    w, sigma = w_and_sigma(b, e)
    if sigma > 0:
        lb, ub = w + sigma * pns.lower, w + sigma * pns.upper
    elif sigma < 0:
        lb, ub = w + sigma * pns.upper, w + sigma * pns.lower
    else:
        lb = ub = w
    return BenefitBounds(lb, ub, w, pns.source)


def benefit_bounds_experimental(b: BenefitSpec, e: ExperimentalDistribution) -> BenefitBounds:
    return _assemble(b, e, pns_bounds_experimental(e))


def benefit_bounds_combined(
    b: BenefitSpec,
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> BenefitBounds:
    return _assemble(b, e, pns_bounds_combined(e, o, tol))


def benefit_expected_improvement(
    b: BenefitSpec, e: ExperimentalDistribution, tol: float = INPUT_TOL
) -> BenefitImprovement:
    """Expected rise of the benefit lower bound and fall of its upper bound.

    For sigma < 0 the roles flip: the benefit lower bound is driven by the
    PNS upper bound, so its expected gain uses the P(x,y)+P(x',y') prior.
    Raises GainEquality when sigma == 0 and PointIdentified on degenerate
    experimental data.
    """
    w, sigma = w_and_sigma(b, e)
    if sigma == 0:
        raise GainEquality(w)
    lower = expected_lower_gain(e, tol)
    upper = expected_upper_drop(e, tol)
    if sigma > 0:
        return BenefitImprovement(sigma * lower, sigma * upper)
    return BenefitImprovement(-sigma * upper, -sigma * lower)
