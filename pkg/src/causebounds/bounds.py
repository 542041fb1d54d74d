"""Sharp bounds on PNS, PN and PS."""

from __future__ import annotations

from typing import Optional

from .core import (
    IDENTITY_TOL,
    INPUT_TOL,
    BoundInterval,
    BoundSource,
    ExperimentalDistribution,
    InconsistentData,
    ObservationalDistribution,
    UndefinedConditional,
    check_consistency,
    require_consistent,
)


def _clamp01(v: float) -> float:
    return min(1.0, max(0.0, v))


def _interval(lower: float, upper: float, source: BoundSource, e, o) -> BoundInterval:
    lower, upper = _clamp01(lower), _clamp01(upper)
    if upper < lower:
        if lower - upper > IDENTITY_TOL:
            if o is None:
                raise ValueError(f"bounds cross: lower {lower!r} > upper {upper!r}")
            raise InconsistentData(
                check_consistency(e, o),
                f"bounds cross: lower {lower!r} > upper {upper!r}",
            )
        upper = lower
    return BoundInterval(lower, upper, source)


def pns_bounds_experimental(e: ExperimentalDistribution) -> BoundInterval:
    """PNS bounds from the causal effects alone."""
    lower = max(0.0, e.p_y_x - e.p_y_xp)
    upper = min(e.p_y_x, e.p_yp_xp)
    return _interval(lower, upper, BoundSource.EXPERIMENTAL_ONLY, e, None)


def pns_lower_terms(e: ExperimentalDistribution, o: ObservationalDistribution):
    return (0.0, e.p_y_x - e.p_y_xp, o.p_y - e.p_y_xp, e.p_y_x - o.p_y)


def pns_upper_terms(e: ExperimentalDistribution, o: ObservationalDistribution):
    return (
        e.p_y_x,
        e.p_yp_xp,
        o.p_xy + o.p_xpyp,
        e.p_y_x - e.p_y_xp + o.p_xyp + o.p_xpy,
    )


def pns_bounds_combined(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> BoundInterval:
    """Sharp PNS bounds from experimental plus observational data.

    Raises InconsistentData if the two data sources violate the consistency
    constraints (see :func:`causebounds.core.check_consistency`).
    """
    require_consistent(e, o, tol)
    return _interval(
        max(pns_lower_terms(e, o)),
        min(pns_upper_terms(e, o)),
        BoundSource.COMBINED,
        e,
        o,
    )


def pn_bounds(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> BoundInterval:
    """Bounds on PN = P(y'_x' | x, y)."""
    require_consistent(e, o, tol)
    if o.p_xy == 0.0:
        raise UndefinedConditional("PN conditions on (x, y), which has probability 0")
    lower = max(0.0, (o.p_y - e.p_y_xp) / o.p_xy)
    upper = min(1.0, (e.p_yp_xp - o.p_xpyp) / o.p_xy)
    return _interval(lower, upper, BoundSource.COMBINED, e, o)


def ps_bounds(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> BoundInterval:
    """Bounds on PS = P(y_x | x', y')."""
    require_consistent(e, o, tol)
    if o.p_xpyp == 0.0:
        raise UndefinedConditional("PS conditions on (x', y'), which has probability 0")
    lower = max(0.0, (o.p_yp - e.p_yp_x) / o.p_xpyp)
    upper = min(1.0, (e.p_y_x - o.p_xy) / o.p_xpyp)
    return _interval(lower, upper, BoundSource.COMBINED, e, o)


def pns_point_identification(
    e: ExperimentalDistribution, tol: float = INPUT_TOL
) -> Optional[float]:
    """Return 0.0 or 1.0 when experimental data alone pin PNS, else None."""
    p, q = e.p_y_x, e.p_y_xp
    pp, qp = e.p_yp_x, e.p_yp_xp
    if p + q <= tol or p + qp <= tol or pp + qp <= tol:
        return 0.0
    if pp + q <= tol:
        return 1.0
    return None
