"""Expected tightening of the PNS bounds from running an observational study.

The observational quantity that moves each bound is treated as uniform on
the range the experimental data allow for it:

* lower bound: ``D = P(y)``
* upper bound: ``D' = P(x,y) + P(x',y')``

Given that prior, the gain ``L' - L`` (and drop ``U - U'``) has a
distribution with an atom at zero followed by a flat density; the closed
form expectations and piecewise CDFs live here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import INPUT_TOL, ExperimentalDistribution, PointIdentified


class Quantity(str, enum.Enum):
    P_Y = "p_y"
    P_XY_PLUS_XPYP = "p_xy_plus_xpyp"


class Which(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class FeasibleInterval:
    lo: float
    hi: float
    quantity: Quantity

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"bad feasible interval [{self.lo!r}, {self.hi!r}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def __contains__(self, value: float) -> bool:
        return self.lo - INPUT_TOL <= value <= self.hi + INPUT_TOL

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class ImprovementReport:
    e_lower_gain: float
    e_upper_drop: float
    d_interval: FeasibleInterval
    d_prime_interval: FeasibleInterval


def feasible_interval_d(e: ExperimentalDistribution) -> FeasibleInterval:
    """Range of P(y) compatible with the causal effects."""
    return FeasibleInterval(
        max(0.0, e.p_y_x - e.p_yp_xp), min(1.0, e.p_y_x + e.p_y_xp), Quantity.P_Y
    )


def feasible_interval_d_prime(e: ExperimentalDistribution) -> FeasibleInterval:
    """Range of P(x,y) + P(x',y') compatible with the causal effects."""
    return FeasibleInterval(
        max(0.0, e.p_y_x - e.p_y_xp),
        min(1.0, e.p_y_x + e.p_yp_xp),
        Quantity.P_XY_PLUS_XPYP,
    )


def feasible_interval(e: ExperimentalDistribution, which) -> FeasibleInterval:
    if Which(which) is Which.LOWER:
        return feasible_interval_d(e)
    return feasible_interval_d_prime(e)


def check_nondegenerate(e: ExperimentalDistribution, which, tol: float = INPUT_TOL):
    """Raise PointIdentified if the expectation for ``which`` is undefined."""
    p, q = e.p_y_x, e.p_y_xp
    pp, qp = e.p_yp_x, e.p_yp_xp
    if Which(which) is Which.LOWER:
        if p + q <= tol:
            raise PointIdentified(0.0, "P(y_x) + P(y_x') = 0")
        if pp + qp <= tol:
            raise PointIdentified(0.0, "P(y'_x) + P(y'_x') = 0")
    else:
        if p + qp <= tol:
            raise PointIdentified(0.0, "P(y_x) + P(y'_x') = 0")
        if pp + q <= tol:
            raise PointIdentified(1.0, "P(y'_x) + P(y_x') = 0")


def expected_lower_gain(e: ExperimentalDistribution, tol: float = INPUT_TOL) -> float:
    """E(L' - L) with P(y) uniform on its feasible interval."""
    check_nondegenerate(e, Which.LOWER, tol)
    p, q = e.p_y_x, e.p_y_xp
    pp, qp = e.p_yp_x, e.p_yp_xp
    return min(p * p, pp * pp, q * q, qp * qp) / min(p + q, pp + qp)


def expected_upper_drop(e: ExperimentalDistribution, tol: float = INPUT_TOL) -> float:
    """E(U - U') with P(x,y) + P(x',y') uniform on its feasible interval."""
    check_nondegenerate(e, Which.UPPER, tol)
    p, q = e.p_y_x, e.p_y_xp
    pp, qp = e.p_yp_x, e.p_yp_xp
    return min(p * p, pp * pp, q * q, qp * qp) / min(p + qp, pp + q)


def expected_improvement(e: ExperimentalDistribution, which, tol: float = INPUT_TOL) -> float:
    if Which(which) is Which.LOWER:
        return expected_lower_gain(e, tol)
    return expected_upper_drop(e, tol)


def improvement_report(e: ExperimentalDistribution, tol: float = INPUT_TOL) -> ImprovementReport:
    return ImprovementReport(
        expected_lower_gain(e, tol),
        expected_upper_drop(e, tol),
        feasible_interval_d(e),
        feasible_interval_d_prime(e),
    )


@dataclass(frozen=True)
class GainDistribution:
    """Law of ``L' - L`` (or ``U - U'``): atom at 0, flat density up to z_max.

    ``case`` numbers follow the four sign patterns of
    (P(y_x) >= s, P(y_x) + s >= 1), where ``s`` is P(y_x') for the lower
    bound and P(y'_x') for the upper bound.
    """

    case: int
    atom: float
    denominator: float
    z_max: float

    def cdf(self, z: float) -> float:
        if z < 0.0:
            return 0.0
        if z >= self.z_max:
            return 1.0
        return min(1.0, (self.atom + 2.0 * z) / self.denominator)

    def pdf(self, z: float) -> float:
        if 0.0 <= z < self.z_max:
            return 2.0 / self.denominator
        return 0.0

    def mean(self) -> float:
        return self.z_max * self.z_max / self.denominator


def _gain_distribution(p: float, s: float, p_c: float, s_c: float) -> GainDistribution:
    # p_c, s_c are the complements 1-p, 1-s, passed in so that 1-(1-q) is
    # never recomputed
    if p >= s:
        atom = p - s
        if p + s >= 1.0:
            return GainDistribution(1, atom, p_c + s_c, p_c)
        return GainDistribution(2, atom, p + s, s)
    atom = s - p
    if p + s >= 1.0:
        return GainDistribution(3, atom, p_c + s_c, s_c)
    return GainDistribution(4, atom, p + s, p)


def lower_gain_distribution(e: ExperimentalDistribution, tol: float = INPUT_TOL) -> GainDistribution:
    check_nondegenerate(e, Which.LOWER, tol)
    return _gain_distribution(e.p_y_x, e.p_y_xp, e.p_yp_x, e.p_yp_xp)


def upper_drop_distribution(e: ExperimentalDistribution, tol: float = INPUT_TOL) -> GainDistribution:
    check_nondegenerate(e, Which.UPPER, tol)
    return _gain_distribution(e.p_y_x, e.p_yp_xp, e.p_yp_x, e.p_y_xp)


def gain_distribution(e: ExperimentalDistribution, which, tol: float = INPUT_TOL) -> GainDistribution:
    if Which(which) is Which.LOWER:
        return lower_gain_distribution(e, tol)
    return upper_drop_distribution(e, tol)


def lower_gain_cdf(e: ExperimentalDistribution, z: float) -> float:
    """P(L' - L <= z)."""
    return lower_gain_distribution(e).cdf(z)


def upper_drop_cdf(e: ExperimentalDistribution, z: float) -> float:
    """P(U - U' <= z)."""
    return upper_drop_distribution(e).cdf(z)
