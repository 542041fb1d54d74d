"""Oracle-versus-closed-form suite behind ``causebounds oracle-check``."""

from __future__ import annotations

import math

import numpy as np

from . import kernels, oracle
from .bounds import pn_bounds, pns_bounds_combined, ps_bounds
from .core import CausalBoundsError, ExperimentalDistribution, check_consistency
from .improvement import (
    expected_lower_gain,
    expected_upper_drop,
    feasible_interval_d,
    feasible_interval_d_prime,
)

MC_SIGMAS = 4.0
QUAD_PANELS = 10_000
QUAD_TOL = 1e-6
CDF_TOL = 0.005
LP_TOL = 1e-3

# one experimental point per CDF case, for each bound
CDF_CASE_POINTS = {
    "lower": ((0.7, 0.6), (0.4, 0.3), (0.6, 0.7), (0.3, 0.4)),
    "upper": ((0.7, 0.4), (0.4, 0.7), (0.6, 0.3), (0.3, 0.6)),
}

_CLOSED = {"lower": expected_lower_gain, "upper": expected_upper_drop}


def random_points(trials: int, seed: int) -> list[ExperimentalDistribution]:
    """Nondegenerate experimental points on the 0.01 grid strictly inside (0, 1)."""
    rng = np.random.default_rng([seed, 1])
    ij = rng.integers(1, 100, size=(trials, 2))
    return [ExperimentalDistribution(i / 100, j / 100) for i, j in ij]


def cdf_tolerance(n: int) -> float:
    # 1.63/sqrt(n) is the 99% Kolmogorov-Smirnov critical value
    return max(CDF_TOL, 1.63 / math.sqrt(n))


def check_mc(points, n: int, seed: int, workers: int = 1) -> dict:
    seeds = np.random.default_rng([seed, 2]).integers(0, 2**63, size=(len(points), 2))
    out = {}
    for k, which in enumerate(("lower", "upper")):
        misses = 0
        worst = 0.0
        for e, s in zip(points, seeds[:, k]):
            est = oracle.mc_expected_gain(e, which, n, int(s), workers=workers)
            closed = _CLOSED[which](e)
            z = abs(est.mean - closed) / est.std_error if est.std_error > 0 else (
                0.0 if est.mean == closed else math.inf
            )
            worst = max(worst, z)
            misses += z > MC_SIGMAS
        allowed = len(points) // 100
        out[which] = {
            "misses": misses,
            "allowed_misses": allowed,
            "max_z": worst,
            "passed": misses <= allowed,
        }
    return out


def check_quadrature(points, panels: int = QUAD_PANELS) -> dict:
    out = {}
    for which in ("lower", "upper"):
        dev = max(
            abs(oracle.quadrature_expected_gain(e, which, panels) - _CLOSED[which](e))
            for e in points
        )
        out[which] = {"max_abs_deviation": dev, "tolerance": QUAD_TOL, "passed": dev <= QUAD_TOL}
    return out


def check_cdfs(n: int, seed: int) -> dict:
    tol = cdf_tolerance(n)
    out = {}
    for which, pts in CDF_CASE_POINTS.items():
        devs = [
            oracle.cdf_max_deviation(ExperimentalDistribution(*pq), which, n, seed + case)
            for case, pq in enumerate(pts)
        ]
        out[which] = {"max_deviation": max(devs), "tolerance": tol, "passed": max(devs) <= tol}
    return out


def containment_violations(trials: int, seed: int) -> dict:
    """Count ground-truth violations over ``trials`` sampled populations."""
    counts = {
        "consistency": 0,
        "pns_outside_combined": 0,
        "pn_outside_bounds": 0,
        "ps_outside_bounds": 0,
        "p_y_outside_d": 0,
        "d_prime_outside": 0,
        "lp_mismatch": 0,
    }
    for seq in np.random.SeedSequence([seed, 3]).spawn(trials):
        rtd, e, o = oracle.sample_scm(seq)
        if not check_consistency(e, o).passed:
            counts["consistency"] += 1
            continue
        pns = pns_bounds_combined(e, o)
        counts["pns_outside_combined"] += rtd.pns not in pns
        if rtd.pn is not None:
            try:
                counts["pn_outside_bounds"] += rtd.pn not in pn_bounds(e, o)
            except CausalBoundsError:
                counts["pn_outside_bounds"] += 1
        if rtd.ps is not None:
            try:
                counts["ps_outside_bounds"] += rtd.ps not in ps_bounds(e, o)
            except CausalBoundsError:
                counts["ps_outside_bounds"] += 1
        counts["p_y_outside_d"] += o.p_y not in feasible_interval_d(e)
        counts["d_prime_outside"] += (o.p_xy + o.p_xpyp) not in feasible_interval_d_prime(e)
        lp = oracle.lp_vertex_enumeration(e, o)
        mismatch = max(abs(lp.pns[0] - pns.lower), abs(lp.pns[1] - pns.upper)) > LP_TOL
        counts["lp_mismatch"] += mismatch
    return counts


def run_oracle_check(trials: int, n: int, seed: int, workers: int = 1) -> dict:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    points = random_points(trials, seed)
    mc = check_mc(points, n, seed, workers)
    quad = check_quadrature(points)
    cdf = check_cdfs(n, seed)
    contain = containment_violations(trials, seed)
    passed = (
        all(v["passed"] for v in mc.values())
        and all(v["passed"] for v in quad.values())
        and all(v["passed"] for v in cdf.values())
        and not any(contain.values())
    )
    return {
        "trials": trials,
        "samples": n,
        "seed": seed,
        "backend": kernels.BACKEND,
        "mc_vs_closed_form": mc,
        "quadrature_vs_closed_form": quad,
        "cdf_agreement": cdf,
        "containment_violations": contain,
        "passed": passed,
    }
