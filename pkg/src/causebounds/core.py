"""Domain types, frequentist estimation and the experimental/observational
consistency check.

Probabilities are plain floats. Complements are derived on access, never
stored, so an ``ExperimentalDistribution`` is fully described by the two
causal effects ``P(y_x)`` and ``P(y_x')``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Hashable, Optional

INPUT_TOL = 1e-9
IDENTITY_TOL = 1e-12


class CausalBoundsError(Exception):
    """Base class for every error raised by this package."""


class InvalidDistribution(CausalBoundsError, ValueError):
    pass


class EmptyArm(CausalBoundsError, ValueError):
    pass


class EmptyTable(CausalBoundsError, ValueError):
    pass


class InconsistentData(CausalBoundsError):
    """Experimental and observational inputs cannot come from one population."""

    def __init__(self, report: "ConsistencyReport", message: str | None = None):
        self.report = report
        if message is None:
            message = "inconsistent data: " + "; ".join(
                str(v) for v in report.violations
            )
        super().__init__(message)


class UndefinedConditional(CausalBoundsError):
    """A PN/PS conditioning event has probability zero."""


class PointIdentified(CausalBoundsError):
    """PNS is pinned to ``value`` by experimental data alone."""

    def __init__(self, value: float, reason: str = ""):
        self.value = float(value)
        self.reason = reason
        msg = f"PNS is point identified as {self.value:g}"
        super().__init__(f"{msg} ({reason})" if reason else msg)


class GainEquality(CausalBoundsError):
    """sigma == 0: the benefit function equals ``value`` for every population."""

    def __init__(self, value: float):
        self.value = float(value)
        super().__init__(f"gain equality: benefit is point identified as {value!r}")


def _check_prob(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or not (0.0 <= value <= 1.0):
        raise InvalidDistribution(f"{name}={value!r} is not a probability")
    return value


@dataclass(frozen=True)
class ExperimentalDistribution:
    """Causal effects ``P(y_x)`` and ``P(y_x')`` for one stratum."""

    p_y_x: float
    p_y_xp: float

    def __post_init__(self):
        object.__setattr__(self, "p_y_x", _check_prob("p_y_x", self.p_y_x))
        object.__setattr__(self, "p_y_xp", _check_prob("p_y_xp", self.p_y_xp))

    @property
    def p_yp_x(self) -> float:
        return 1.0 - self.p_y_x

    @property
    def p_yp_xp(self) -> float:
        return 1.0 - self.p_y_xp

    def as_tuple(self) -> tuple[float, float]:
        return (self.p_y_x, self.p_y_xp)


@dataclass(frozen=True)
class ObservationalDistribution:
    """Joint distribution of (X, Y) under free treatment choice.

    Field order is ``P(x,y), P(x',y), P(x,y'), P(x',y')``.
    """

    p_xy: float
    p_xpy: float
    p_xyp: float
    p_xpyp: float

    def __post_init__(self):
        for name in ("p_xy", "p_xpy", "p_xyp", "p_xpyp"):
            object.__setattr__(self, name, _check_prob(name, getattr(self, name)))
        total = self.p_xy + self.p_xpy + self.p_xyp + self.p_xpyp
        if abs(total - 1.0) > INPUT_TOL:
            raise InvalidDistribution(f"joint probabilities sum to {total!r}, not 1")

    @property
    def p_y(self) -> float:
        return self.p_xy + self.p_xpy

    @property
    def p_yp(self) -> float:
        return 1.0 - self.p_y

    @property
    def p_x(self) -> float:
        return self.p_xy + self.p_xyp

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_xy, self.p_xpy, self.p_xyp, self.p_xpyp)


class TableKind(str, enum.Enum):
    EXPERIMENTAL = "experimental"
    OBSERVATIONAL = "observational"


@dataclass(frozen=True)
class CountTable2x2:
    """Raw study counts.

    ``x_*`` cells are the treated arm (experimental) or the units that chose
    treatment (observational); ``xp_*`` cells are control / declined.
    """

    kind: TableKind
    x_pos: int
    x_neg: int
    xp_pos: int
    xp_neg: int

    def __post_init__(self):
        object.__setattr__(self, "kind", TableKind(self.kind))
        for name in ("x_pos", "x_neg", "xp_pos", "xp_neg"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise InvalidDistribution(f"count {name}={value!r} must be a nonnegative integer")
            object.__setattr__(self, name, int(value))

    @classmethod
    def experimental(cls, treated_pos, treated_neg, control_pos, control_neg):
        return cls(TableKind.EXPERIMENTAL, treated_pos, treated_neg, control_pos, control_neg)

    @classmethod
    def observational(cls, chose_pos, chose_neg, declined_pos, declined_neg):
        return cls(TableKind.OBSERVATIONAL, chose_pos, chose_neg, declined_pos, declined_neg)

    @property
    def total(self) -> int:
        return self.x_pos + self.x_neg + self.xp_pos + self.xp_neg


def estimate_experimental(table: CountTable2x2) -> ExperimentalDistribution:
    """Per-arm success frequencies of a randomized study."""
    if table.kind is not TableKind.EXPERIMENTAL:
        raise ValueError("estimate_experimental needs an experimental table")
    treated = table.x_pos + table.x_neg
    control = table.xp_pos + table.xp_neg
    if treated == 0:
        raise EmptyArm("treated arm has no units")
    if control == 0:
        raise EmptyArm("control arm has no units")
    return ExperimentalDistribution(table.x_pos / treated, table.xp_pos / control)


def estimate_observational(table: CountTable2x2) -> ObservationalDistribution:
    """Cell frequencies of an observational study."""
    if table.kind is not TableKind.OBSERVATIONAL:
        raise ValueError("estimate_observational needs an observational table")
    n = table.total
    if n == 0:
        raise EmptyTable("observational table has no units")
    return ObservationalDistribution(
        table.x_pos / n, table.xp_pos / n, table.x_neg / n, table.xp_neg / n
    )


@dataclass(frozen=True)
class Violation:
    constraint: str
    lhs: float
    rhs: float

    def __str__(self):
        return f"{self.constraint} violated: {self.lhs!r} > {self.rhs!r}"


@dataclass(frozen=True)
class ConsistencyReport:
    violations: tuple[Violation, ...] = ()
    tolerance: float = INPUT_TOL

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "violations": [
                {"constraint": v.constraint, "lhs": v.lhs, "rhs": v.rhs}
                for v in self.violations
            ],
        }


def check_consistency(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> ConsistencyReport:
    """Check P(x,y) <= P(y_x) <= 1 - P(x,y') and the x' analogue.

    Never raises on a failed check; the returned report lists every violated
    inequality with both of its sides.
    """
    checks = (
        ("P(x,y) <= P(y_x)", o.p_xy, e.p_y_x),
        ("P(y_x) <= 1 - P(x,y')", e.p_y_x, 1.0 - o.p_xyp),
        ("P(x',y) <= P(y_x')", o.p_xpy, e.p_y_xp),
        ("P(y_x') <= 1 - P(x',y')", e.p_y_xp, 1.0 - o.p_xpyp),
    )
    violations = tuple(
        Violation(name, lhs, rhs) for name, lhs, rhs in checks if lhs > rhs + tol
    )
    return ConsistencyReport(violations, tol)


def require_consistent(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = INPUT_TOL,
) -> ConsistencyReport:
    report = check_consistency(e, o, tol)
    if not report.passed:
        raise InconsistentData(report)
    return report


class BoundSource(str, enum.Enum):
    EXPERIMENTAL_ONLY = "experimental_only"
    COMBINED = "combined"


@dataclass(frozen=True)
class BoundInterval:
    lower: float
    upper: float
    source: BoundSource

    def __post_init__(self):
        if self.lower > self.upper + IDENTITY_TOL:
            raise ValueError(f"empty interval [{self.lower!r}, {self.upper!r}]")

    def __contains__(self, value: float) -> bool:
        return self.lower - INPUT_TOL <= value <= self.upper + INPUT_TOL

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def as_tuple(self) -> tuple[float, float]:
        return (self.lower, self.upper)


@dataclass(frozen=True)
class Stratum:
    """Data for one population characteristic ``c``.

    Every operation in the package already works per stratum, so conditional
    (``|c``) versions of the bounds need nothing beyond this container.
    """

    label: Optional[Hashable]
    experimental: ExperimentalDistribution
    observational: Optional[ObservationalDistribution] = None
    tolerance: float = field(default=INPUT_TOL, compare=False)

    def __post_init__(self):
        if self.observational is not None:
            require_consistent(self.experimental, self.observational, self.tolerance)
