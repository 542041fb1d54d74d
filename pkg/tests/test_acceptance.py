"""Acceptance criteria, one test each. Run with ``pytest tests/test_acceptance.py -s``.

Every test prints a single PASS/FAIL line with the measured quantities.
"""

import time

import numpy as np
import pytest

from causebounds import (
    BenefitSpec,
    CountTable2x2,
    ExperimentalDistribution,
    PointIdentified,
    benefit_bounds_combined,
    benefit_bounds_experimental,
    benefit_expected_improvement,
    check_consistency,
    estimate_experimental,
    estimate_observational,
    expected_lower_gain,
    expected_upper_drop,
    feasible_interval_d,
    feasible_interval_d_prime,
    lower_gain_cdf,
    pns_bounds_combined,
    pns_bounds_experimental,
    pns_point_identification,
    upper_drop_cdf,
    w_and_sigma,
)
from causebounds.oracle import (
    cdf_max_deviation,
    lp_vertex_enumeration,
    mc_expected_gain,
    quadrature_expected_gain,
    sample_scm,
)
from causebounds.sweep import grid_axis
from causebounds.validation import CDF_CASE_POINTS, random_points

from .support import (
    ENTICEMENT_EXP,
    PROFIT_BENEFIT,
    PROFIT_EXP,
    PROFIT_OBS,
    VACCINE_EXP,
    VACCINE_OBS,
)

E = ExperimentalDistribution


@pytest.fixture
def verdict(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return emit


def _exp(counts):
    return estimate_experimental(CountTable2x2.experimental(*counts))


def _obs(counts):
    return estimate_observational(CountTable2x2.observational(*counts))


def test_ac1_vaccine(verdict):
    def pipeline():
        e, o = _exp(VACCINE_EXP), _obs(VACCINE_OBS)
        return (
            pns_bounds_experimental(e),
            expected_lower_gain(e),
            expected_upper_drop(e),
            pns_bounds_combined(e, o),
        )

    exp, lo, up, comb = pipeline()
    runtime = min(_timed(pipeline) for _ in range(200))
    ok = (
        exp.as_tuple() == pytest.approx((0.05, 0.52), abs=1e-15)
        and abs(lo - 0.2231) <= 5e-5
        and abs(up - 0.2325) <= 5e-5
        and comb.as_tuple() == pytest.approx((0.33, 0.41), abs=1e-9)
        and runtime < 1e-3
    )
    verdict(
        "AC1 vaccine example",
        ok,
        f"pns_exp={exp.as_tuple()} E_L={lo:.6f} E_U={up:.6f} pns_comb={comb.as_tuple()} "
        f"runtime={runtime * 1e6:.1f}us",
    )


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_ac2_enticement(verdict):
    e = _exp(ENTICEMENT_EXP)
    iv = pns_bounds_experimental(e)
    lo = expected_lower_gain(e)
    ok = iv.as_tuple() == pytest.approx((0.0, 0.1), abs=1e-15) and abs(lo - 0.01) <= 1e-9
    verdict("AC2 enticement example", ok, f"pns_exp={iv.as_tuple()} E_L={lo!r}")


def test_ac3_unit_selection(verdict):
    b = BenefitSpec(*PROFIT_BENEFIT)
    e, o = _exp(PROFIT_EXP), _obs(PROFIT_OBS)
    w, sigma = w_and_sigma(b, e)
    exp = benefit_bounds_experimental(b, e)
    comb = benefit_bounds_combined(b, e, o)
    imp = benefit_expected_improvement(b, e)
    ok = (
        (w, sigma) == pytest.approx((-140.0, 300.0), abs=1e-9)
        and exp.lb == pytest.approx(-95.0, abs=1e-9)
        # formula value; the printed worked example shows 20
        and exp.ub == pytest.approx(25.0, abs=1e-9)
        and abs(imp.e_lb_gain - 50.53) <= 0.01
        and abs(imp.e_ub_drop - 56.47) <= 0.01
        and comb.as_tuple() == pytest.approx((-71.0, -20.0), abs=1e-9)
    )
    verdict(
        "AC3 unit selection example",
        ok,
        f"W={w:.6g} sigma={sigma:.6g} exp=[{exp.lb:.9g}, {exp.ub:.9g}] "
        f"E_LB={imp.e_lb_gain:.4f} E_UB={imp.e_ub_drop:.4f} comb=[{comb.lb:.9g}, {comb.ub:.9g}]",
    )


def test_ac4_oracle_equivalence(verdict):
    t0 = time.perf_counter()
    points = random_points(100, seed=2024)
    agree = {"lower": 0, "upper": 0}
    quad_dev = 0.0
    for k, e in enumerate(points):
        for which, fn in (("lower", expected_lower_gain), ("upper", expected_upper_drop)):
            closed = fn(e)
            est = mc_expected_gain(e, which, 10**6, seed=1000 * k + (which == "upper"))
            agree[which] += abs(est.mean - closed) <= 4 * est.std_error
            quad_dev = max(quad_dev, abs(quadrature_expected_gain(e, which, 10_000) - closed))
    elapsed = time.perf_counter() - t0
    ok = min(agree.values()) >= 99 and quad_dev <= 1e-6 and elapsed < 60
    verdict(
        "AC4 oracle equivalence",
        ok,
        f"mc_agree lower={agree['lower']}/100 upper={agree['upper']}/100 "
        f"quad_max_dev={quad_dev:.2e} elapsed={elapsed:.1f}s",
    )


def test_ac5_cdf_agreement(verdict):
    devs = {}
    for which, pts in CDF_CASE_POINTS.items():
        for case, pq in enumerate(pts, start=1):
            devs[(which, case)] = cdf_max_deviation(E(*pq), which, 10**6, seed=case, z_points=100)
    worst = max(devs.values())
    # the closed-form CDFs are also reachable through the public helpers
    assert lower_gain_cdf(E(0.7, 0.6), 0.0) == pytest.approx(0.1 / 0.7)
    # s = 1 - q = 0.6: atom p - s over (1 - p) + (1 - s)
    assert upper_drop_cdf(E(0.7, 0.4), 0.0) == pytest.approx(0.1 / 0.7)
    detail = " ".join(f"{w[0]}{c}={d:.4f}" for (w, c), d in devs.items())
    verdict("AC5 CDF agreement", worst <= 0.005, f"max={worst:.4f} ({detail})")


def test_ac6_grid_properties(verdict):
    axis = grid_axis(99)
    lower = np.array([[expected_lower_gain(E(p, q)) for q in axis] for p in axis])
    upper = np.array([[expected_upper_drop(E(p, q)) for q in axis] for p in axis])
    centre = axis.index(0.5)
    ok_max = all(
        np.unravel_index(np.argmax(g), g.shape) == (centre, centre) and abs(g.max() - 0.25) <= 1e-12
        for g in (lower, upper)
    )
    n = len(axis)
    # rows are fixed P(y_x'); argmax over P(y_x)
    ridge_lower = all(int(np.argmax(lower[:, j])) == j for j in range(n))
    ridge_upper = all(int(np.argmax(upper[:, j])) == n - 1 - j for j in range(n))
    swap = max(
        max(abs(lower[i, j] - lower[j, i]), abs(upper[i, j] - upper[j, i]))
        for i in range(n)
        for j in range(n)
    )
    dual = max(
        abs(expected_upper_drop(E(p, q)) - expected_lower_gain(E(p, 1 - q))) for p in axis for q in axis
    )
    ok = ok_max and ridge_lower and ridge_upper and swap <= 1e-15 and dual <= 1e-15
    verdict(
        "AC6 grid properties",
        ok,
        f"argmax_centre={ok_max} max=({float(lower.max())!r}, {float(upper.max())!r}) ridge_lower={ridge_lower} "
        f"ridge_upper={ridge_upper} swap_dev={swap:.1e} dual_dev={dual:.1e}",
    )


def test_ac7_containment(verdict):
    violations = 0
    lp_dev = 0.0
    for seed in range(1000):
        rtd, e, o = sample_scm(seed)
        if not check_consistency(e, o).passed:
            violations += 1
            continue
        comb = pns_bounds_combined(e, o)
        violations += rtd.pns not in comb
        violations += o.p_y not in feasible_interval_d(e)
        violations += (o.p_xy + o.p_xpyp) not in feasible_interval_d_prime(e)
        lp = lp_vertex_enumeration(e, o)
        dev = max(abs(lp.pns[0] - comb.lower), abs(lp.pns[1] - comb.upper))
        lp_dev = max(lp_dev, dev)
        violations += dev > 1e-3
    verdict("AC7 containment suite", violations == 0, f"scms=1000 violations={violations} lp_max_dev={lp_dev:.1e}")


def test_ac8_reductions(verdict):
    e, o = _exp(VACCINE_EXP), _obs(VACCINE_OBS)
    pns_payoff = BenefitSpec(1, 0, 0, 0)
    reduces = (
        benefit_bounds_experimental(pns_payoff, e).as_tuple() == pns_bounds_experimental(e).as_tuple()
        and benefit_bounds_combined(pns_payoff, e, o).as_tuple() == pns_bounds_combined(e, o).as_tuple()
    )
    flat = BenefitSpec(3, 3, 3, 3)
    w, sigma = w_and_sigma(flat, e)
    point = benefit_bounds_combined(flat, e, o).as_tuple()
    gain_equality = sigma == 0 and point == pytest.approx((w, w), abs=1e-12) and w == pytest.approx(3.0)

    def raised(fn, arg, value):
        try:
            fn(arg)
        except PointIdentified as exc:
            return exc.value == value
        return False

    structured = (
        pns_point_identification(E(0.0, 0.0)) == 0.0
        and pns_point_identification(E(1.0, 0.0)) == 1.0
        and raised(expected_lower_gain, E(0.0, 0.0), 0.0)
        and raised(expected_upper_drop, E(1.0, 0.0), 1.0)
    )
    ok = reduces and gain_equality and structured
    verdict(
        "AC8 reduction identities",
        ok,
        f"pns_payoff_exact={reduces} gain_equality_point={point} structured_errors={structured}",
    )
