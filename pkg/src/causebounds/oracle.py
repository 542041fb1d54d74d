"""Independent checks for the closed forms.

Nothing here calls the closed-form expectations or the PNS bound
formulas. The Monte-Carlo and quadrature estimators evaluate ``L' - L`` and
``U - U'`` straight from their max/min definitions; the vertex enumerator
solves the response-type linear program exactly.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import (
    ExperimentalDistribution,
    InconsistentData,
    ObservationalDistribution,
    check_consistency,
    require_consistent,
)
from .improvement import (
    Which,
    check_nondegenerate,
    feasible_interval,
    gain_distribution,
)

CHUNK_SIZE = 1 << 17
RESPONSE_TYPES = ("complier", "always", "never", "defier")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n: int

    def agrees_with(self, value: float, k: float = 4.0) -> bool:
        return abs(self.mean - value) <= k * self.std_error


def _chunks(n: int, seed: int, chunk_size: int):
    sizes = [chunk_size] * (n // chunk_size)
    if n % chunk_size:
        sizes.append(n % chunk_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return list(zip(sizes, children))


def _uniforms(size: int, seed_seq) -> np.ndarray:
    return np.random.Generator(np.random.PCG64(seed_seq)).random(size)


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def mc_gain_samples(
    e: ExperimentalDistribution,
    which,
    n: int,
    seed: int = 0,
    chunk_size: int = CHUNK_SIZE,
) -> np.ndarray:
    """Draw ``n`` realisations of the bound improvement under the uniform prior."""
    upper = Which(which) is Which.UPPER
    iv = feasible_interval(e, which)
    parts = [
        kernels.improvement_samples(_uniforms(size, ss), iv.lo, iv.hi, e.p_y_x, e.p_y_xp, upper)
        for size, ss in _chunks(n, seed, chunk_size)
    ]
    return np.concatenate(parts)


def mc_expected_gain(
    e: ExperimentalDistribution,
    which,
    n: int = 10**6,
    seed: int = 0,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> McEstimate:
    """Monte-Carlo estimate of E(L' - L) or E(U - U').

    Samples are generated in fixed-size chunks, each with its own child of
    ``SeedSequence(seed)``, so the estimate does not depend on ``workers``.
    A feasible interval that collapses to a point is simulated as-is and
    yields an exact zero.
    """
    if n < 1000:
        raise ValueError("n must be at least 1000")
    upper = Which(which) is Which.UPPER
    iv = feasible_interval(e, which)
    p, q = e.p_y_x, e.p_y_xp

    def run(chunk):
        size, ss = chunk
        return kernels.improvement_moments(_uniforms(size, ss), iv.lo, iv.hi, p, q, upper)

    moments = _map(run, _chunks(n, seed, chunk_size), workers)
    s = math.fsum(m[0] for m in moments)
    s2 = math.fsum(m[1] for m in moments)
    mean = s / n
    var = max(0.0, (s2 - n * mean * mean) / (n - 1))
    return McEstimate(mean, math.sqrt(var / n), n)


def quadrature_expected_gain(e: ExperimentalDistribution, which, panels: int = 10_000) -> float:
    """Composite midpoint rule for the mean improvement over the feasible interval."""
    if panels < 100:
        raise ValueError("panels must be at least 100")
    check_nondegenerate(e, which)
    iv = feasible_interval(e, which)
    return kernels.midpoint_mean(
        iv.lo, iv.hi, e.p_y_x, e.p_y_xp, Which(which) is Which.UPPER, panels
    )


def cdf_max_deviation(
    e: ExperimentalDistribution,
    which,
    n: int = 10**6,
    seed: int = 0,
    z_points: int = 100,
) -> float:
    """Largest gap between the empirical and the piecewise analytic CDF.

    Evaluated at ``z_points`` equally spaced points on [0, z_max].
    """
    dist = gain_distribution(e, which)
    samples = np.sort(mc_gain_samples(e, which, n, seed))
    zs = np.linspace(0.0, dist.z_max, z_points)
    empirical = np.searchsorted(samples, zs, side="right") / n
    analytic = np.array([dist.cdf(z) for z in zs])
    return float(np.max(np.abs(empirical - analytic)))


@dataclass(frozen=True)
class ResponseTypeDistribution:
    """Ground-truth population: response-type shares plus treatment propensities.

    ``propensity[i]`` is P(X=x | type i), types ordered complier, always-taker,
    never-taker, defier.
    """

    p_complier: float
    p_always: float
    p_never: float
    p_defier: float
    propensity: tuple[float, float, float, float] = (0.5, 0.5, 0.5, 0.5)

    def __post_init__(self):
        shares = self.shares
        if min(shares) < 0 or abs(sum(shares) - 1.0) > 1e-12:
            raise ValueError(f"response-type shares {shares} are not a distribution")
        props = tuple(float(v) for v in self.propensity)
        if len(props) != 4 or not all(0.0 <= v <= 1.0 for v in props):
            raise ValueError(f"bad propensities {self.propensity!r}")
        object.__setattr__(self, "propensity", props)

    @property
    def shares(self) -> tuple[float, float, float, float]:
        return (self.p_complier, self.p_always, self.p_never, self.p_defier)

    @property
    def pns(self) -> float:
        return self.p_complier

    def _joint(self):
        treated = tuple(s * pi for s, pi in zip(self.shares, self.propensity))
        untreated = tuple(s * (1.0 - pi) for s, pi in zip(self.shares, self.propensity))
        return treated, untreated

    def experimental(self) -> ExperimentalDistribution:
        c, a, n, d = self.shares
        return ExperimentalDistribution(c + a, a + d)

    def observational(self) -> ObservationalDistribution:
        (ac, aa, an, ad), (bc, ba, bn, bd) = self._joint()
        # under X=x the outcome is y for compliers and always-takers;
        # under X=x' it is y for always-takers and defiers
        return ObservationalDistribution(ac + aa, ba + bd, an + ad, bc + bn)

    @property
    def pn(self) -> Optional[float]:
        (ac, aa, _, _), _ = self._joint()
        return ac / (ac + aa) if ac + aa > 0 else None

    @property
    def ps(self) -> Optional[float]:
        _, (bc, _, bn, _) = self._joint()
        return bc / (bc + bn) if bc + bn > 0 else None

    def benefit(self, b) -> float:
        return sum(w * s for w, s in zip(b.as_tuple(), self.shares))


def sample_scm(seed):
    """Random population with flat-Dirichlet type shares and uniform propensities."""
    rng = np.random.default_rng(seed)
    shares = rng.dirichlet(np.ones(4))
    shares = shares / shares.sum()
    props = rng.random(4)
    rtd = ResponseTypeDistribution(*map(float, shares), propensity=tuple(map(float, props)))
    return rtd, rtd.experimental(), rtd.observational()


@dataclass(frozen=True)
class LpBounds:
    pns: tuple[float, float]
    pn: Optional[tuple[float, float]]
    ps: Optional[tuple[float, float]]
    vertices: int


# variable order: (complier, always, never, defier) under X=x, then under X=x'
_A = np.array(
    [
        [1, 1, 0, 0, 0, 0, 0, 0],  # P(x,y)
        [0, 0, 1, 1, 0, 0, 0, 0],  # P(x,y')
        [0, 0, 0, 0, 0, 1, 0, 1],  # P(x',y)
        [0, 0, 0, 0, 1, 0, 1, 0],  # P(x',y')
        [1, 1, 0, 0, 1, 1, 0, 0],  # P(y_x)
        [0, 1, 0, 1, 0, 1, 0, 1],  # P(y_x')
    ],
    dtype=float,
)
_RANK = int(np.linalg.matrix_rank(_A))
_BASES = [
    cols
    for cols in itertools.combinations(range(_A.shape[1]), _RANK)
    if np.linalg.matrix_rank(_A[:, cols]) == _RANK
]


def lp_vertex_enumeration(
    e: ExperimentalDistribution,
    o: ObservationalDistribution,
    tol: float = 1e-9,
) -> LpBounds:
    """Exact PNS/PN/PS ranges over all populations reproducing (e, o).

    Enumerates every basic solution of the equality system and keeps the
    nonnegative ones; a linear objective attains its extremes at these
    vertices.
    """
    require_consistent(e, o, tol)
    rhs = np.array([o.p_xy, o.p_xyp, o.p_xpy, o.p_xpyp, e.p_y_x, e.p_y_xp])
    vertices = []
    for cols in _BASES:
        sub = _A[:, cols]
        x_b, *_ = np.linalg.lstsq(sub, rhs, rcond=None)
        if np.max(np.abs(sub @ x_b - rhs)) > tol or np.min(x_b) < -tol:
            continue
        x = np.zeros(_A.shape[1])
        x[list(cols)] = np.clip(x_b, 0.0, None)
        vertices.append(x)
    if not vertices:
        raise InconsistentData(check_consistency(e, o, tol), "no population reproduces the data")
    v = np.array(vertices)
    pns = v[:, 0] + v[:, 4]
    pn = ps = None
    if o.p_xy > 0:
        vals = v[:, 0] / o.p_xy
        pn = (float(vals.min()), float(vals.max()))
    if o.p_xpyp > 0:
        vals = v[:, 4] / o.p_xpyp
        ps = (float(vals.min()), float(vals.max()))
    return LpBounds((float(pns.min()), float(pns.max())), pn, ps, len(vertices))
