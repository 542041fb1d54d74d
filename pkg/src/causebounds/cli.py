"""Command-line front end.

Usage:
    causebounds bounds --input study.json
    causebounds improve --input study.json --advisory-threshold 0.1
    causebounds unit-select --input study.json --round 2
    causebounds sweep --resolution 99 --output grid.csv
    causebounds oracle-check --trials 100 --samples 1000000 --seed 7

Exit codes: 0 ok, 2 bad input or usage, 3 inconsistent data, 4 PNS point
identified, 5 gain equality, 6 output not writable, 7 oracle check failed.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Any, Optional

from . import __version__
from .bounds import (
    pn_bounds,
    pns_bounds_combined,
    pns_bounds_experimental,
    pns_point_identification,
    ps_bounds,
)
from .core import (
    INPUT_TOL,
    CountTable2x2,
    ExperimentalDistribution,
    GainEquality,
    InconsistentData,
    InvalidDistribution,
    ObservationalDistribution,
    PointIdentified,
    UndefinedConditional,
    check_consistency,
    estimate_experimental,
    estimate_observational,
)
from .improvement import (
    expected_lower_gain,
    expected_upper_drop,
    feasible_interval_d,
    feasible_interval_d_prime,
)
from .sweep import sweep_grid, write_csv
from .unit_selection import (
    BenefitSpec,
    benefit_bounds_combined,
    benefit_bounds_experimental,
    benefit_expected_improvement,
    w_and_sigma,
)
from .validation import run_oracle_check

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INCONSISTENT = 3
EXIT_POINT_IDENTIFIED = 4
EXIT_GAIN_EQUALITY = 5
EXIT_UNWRITABLE = 6
EXIT_ORACLE_FAILED = 7


class SchemaError(ValueError):
    pass


class CliExit(Exception):
    def __init__(self, code: int, payload: dict):
        self.code = code
        self.payload = payload
        super().__init__(payload.get("message", ""))


# ---------------------------------------------------------------- input parsing


def _number(obj: dict, key: str, where: str) -> float:
    if key not in obj:
        raise SchemaError(f"{where}: missing '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SchemaError(f"{where}.{key}: expected a finite number, got {v!r}")
    return float(v)


def _count(obj: Any, key: str, where: str) -> int:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SchemaError(f"{where}.{key}: expected a count, got {v!r}")
    if v < 0 or v != int(v):
        raise SchemaError(f"{where}.{key}: expected a nonnegative integer, got {v!r}")
    return int(v)


def _arms(obj: Any, names: tuple[str, str], where: str) -> tuple[int, int, int, int]:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    first, second = names
    if first not in obj and "treated" in obj:
        first, second = "treated", "control"
    a, b = obj.get(first), obj.get(second)
    return (
        _count(a, "pos", f"{where}.{first}"),
        _count(a, "neg", f"{where}.{first}"),
        _count(b, "pos", f"{where}.{second}"),
        _count(b, "neg", f"{where}.{second}"),
    )


def parse_experimental(doc: dict) -> ExperimentalDistribution:
    try:
        if "experimental" in doc:
            obj = doc["experimental"]
            if not isinstance(obj, dict):
                raise SchemaError("experimental: expected an object")
            return ExperimentalDistribution(
                _number(obj, "p_y_x", "experimental"), _number(obj, "p_y_xp", "experimental")
            )
        if "experimental_counts" in doc:
            counts = _arms(doc["experimental_counts"], ("treated", "control"), "experimental_counts")
            return estimate_experimental(CountTable2x2.experimental(*counts))
    except (InvalidDistribution, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc
    raise SchemaError("input needs 'experimental' or 'experimental_counts'")


def parse_observational(doc: dict) -> Optional[ObservationalDistribution]:
    try:
        if "observational" in doc:
            obj = doc["observational"]
            if not isinstance(obj, dict):
                raise SchemaError("observational: expected an object")
            return ObservationalDistribution(
                *(_number(obj, k, "observational") for k in ("p_xy", "p_xpy", "p_xyp", "p_xpyp"))
            )
        if "observational_counts" in doc:
            counts = _arms(doc["observational_counts"], ("chose", "declined"), "observational_counts")
            return estimate_observational(CountTable2x2.observational(*counts))
    except (InvalidDistribution, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc
    return None


def parse_benefit(doc: dict) -> Optional[BenefitSpec]:
    if "benefit" not in doc:
        return None
    obj = doc["benefit"]
    if not isinstance(obj, dict):
        raise SchemaError("benefit: expected an object")
    return BenefitSpec(*(_number(obj, k, "benefit") for k in ("beta", "gamma", "theta", "delta")))


def load_input(path: Optional[str], stdin) -> dict:
    try:
        if path is None or path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, RecursionError) as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    return doc


def _with_label(doc: dict, out: dict) -> dict:
    if "stratum" in doc:
        label = doc["stratum"]
        if isinstance(label, (dict, list)) or (isinstance(label, float) and not math.isfinite(label)):
            raise SchemaError("stratum: expected a scalar label")
        out["stratum"] = label
    return out


# ---------------------------------------------------------------- commands


def _pair(iv) -> list[float]:
    return list(iv.as_tuple())


def _exp_dict(e):
    return {"p_y_x": e.p_y_x, "p_y_xp": e.p_y_xp}


def _obs_dict(o):
    return {"p_xy": o.p_xy, "p_xpy": o.p_xpy, "p_xyp": o.p_xyp, "p_xpyp": o.p_xpyp}


def _inconsistent(exc: InconsistentData) -> CliExit:
    return CliExit(
        EXIT_INCONSISTENT,
        {"error": "InconsistentData", "message": str(exc), "consistency": exc.report.to_dict()},
    )


def _point_identified(exc: PointIdentified) -> CliExit:
    return CliExit(
        EXIT_POINT_IDENTIFIED,
        {"error": "PointIdentified", "message": str(exc), "point_identified": exc.value},
    )


def _conditional(fn, e, o, tol):
    try:
        return _pair(fn(e, o, tol))
    except UndefinedConditional:
        return None


def cmd_bounds(doc: dict, args) -> dict:
    e = parse_experimental(doc)
    o = parse_observational(doc)
    out = _with_label(doc, {})
    out["experimental"] = _exp_dict(e)
    out["pns_experimental"] = _pair(pns_bounds_experimental(e))
    out["pns_point_identified"] = pns_point_identification(e, args.tolerance)
    if o is None:
        return out
    report = check_consistency(e, o, args.tolerance)
    if not report.passed:
        raise _inconsistent(InconsistentData(report))
    out["observational"] = _obs_dict(o)
    out["consistency"] = report.to_dict()
    try:
        out["pns_combined"] = _pair(pns_bounds_combined(e, o, args.tolerance))
        out["pn"] = _conditional(pn_bounds, e, o, args.tolerance)
        out["ps"] = _conditional(ps_bounds, e, o, args.tolerance)
    except InconsistentData as exc:
        raise _inconsistent(exc)
    return out


def cmd_improve(doc: dict, args) -> dict:
    e = parse_experimental(doc)
    try:
        lower = expected_lower_gain(e, args.tolerance)
        upper = expected_upper_drop(e, args.tolerance)
    except PointIdentified as exc:
        raise _point_identified(exc)
    t = args.advisory_threshold
    non_minor = lower > t and upper > t
    if non_minor:
        advice = "non-minor expected improvement of both bounds: an observational study is worth considering"
    else:
        advice = "minor expected improvement of at least one bound: an observational study is unlikely to help much"
    out = _with_label(doc, {})
    out.update(
        {
            "experimental": _exp_dict(e),
            "pns_experimental": _pair(pns_bounds_experimental(e)),
            "e_lower_gain": lower,
            "e_upper_drop": upper,
            "feasible_interval_d": _pair(feasible_interval_d(e)),
            "feasible_interval_d_prime": _pair(feasible_interval_d_prime(e)),
            "advisory_threshold": t,
            "non_minor": non_minor,
            "advisory": advice,
        }
    )
    return out


def cmd_unit_select(doc: dict, args) -> dict:
    b = parse_benefit(doc)
    if b is None:
        raise SchemaError("unit-select needs a 'benefit' object")
    e = parse_experimental(doc)
    o = parse_observational(doc)
    w, sigma = w_and_sigma(b, e)
    if sigma == 0:
        raise CliExit(
            EXIT_GAIN_EQUALITY,
            {"error": "GainEquality", "message": str(GainEquality(w)), "gain_equality_value": w},
        )
    out = _with_label(doc, {})
    out.update(
        {
            "benefit": dict(zip(("beta", "gamma", "theta", "delta"), b.as_tuple())),
            "experimental": _exp_dict(e),
            "w": w,
            "sigma": sigma,
            "bounds_experimental": list(benefit_bounds_experimental(b, e).as_tuple()),
        }
    )
    if o is not None:
        try:
            out["observational"] = _obs_dict(o)
            out["bounds_combined"] = list(benefit_bounds_combined(b, e, o, args.tolerance).as_tuple())
        except InconsistentData as exc:
            raise _inconsistent(exc)
    try:
        imp = benefit_expected_improvement(b, e, args.tolerance)
    except PointIdentified as exc:
        raise _point_identified(exc)
    out["e_lb_gain"] = imp.e_lb_gain
    out["e_ub_drop"] = imp.e_ub_drop
    return out


# ---------------------------------------------------------------- output


def round_floats(obj, ndigits: Optional[int]):
    if ndigits is None:
        return obj
    if isinstance(obj, float):
        return round(obj, ndigits)
    if isinstance(obj, dict):
        return {k: round_floats(v, ndigits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [round_floats(v, ndigits) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: Optional[str], stdout) -> None:
    if path is None or path == "-":
        stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliExit(EXIT_UNWRITABLE, {"error": "Unwritable", "message": str(exc), "path": path})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causebounds",
        description="Bounds on probabilities of causation and the expected value of observational data.",
    )
    parser.add_argument("--version", action="version", version=f"causebounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--input", help="JSON input file (default: stdin)")
            p.add_argument("--tolerance", type=float, default=INPUT_TOL,
                           help="absolute tolerance for consistency and degeneracy checks")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--round", type=int, default=None, metavar="N",
                       help="round reported numbers to N decimals")

    common(sub.add_parser("bounds", help="PNS/PN/PS bounds"))
    p = sub.add_parser("improve", help="expected improvement from observational data")
    common(p)
    p.add_argument("--advisory-threshold", type=float, default=0.05)
    common(sub.add_parser("unit-select", help="benefit-function bounds"))

    p = sub.add_parser("sweep", help="grid of expected improvements as CSV")
    p.add_argument("--resolution", type=int, default=99)
    p.add_argument("--which", choices=("lower", "upper", "both"), default="both")
    p.add_argument("--closed", action="store_true", help="include the 0 and 1 endpoints")
    p.add_argument("--output", help="CSV path (default: stdout)")

    p = sub.add_parser("oracle-check", help="cross-check closed forms against oracles")
    common(p, with_input=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


_COMMANDS = {"bounds": cmd_bounds, "improve": cmd_improve, "unit-select": cmd_unit_select}


def _run(args, stdin, stdout) -> int:
    if args.command == "sweep":
        if args.resolution < 2:
            raise SchemaError("--resolution must be at least 2")
        grid = sweep_grid(args.resolution, args.closed, args.which)
        buf = io.StringIO()
        write_csv(grid, buf)
        _emit(buf.getvalue(), args.output, stdout)
        return EXIT_OK
    if args.command == "oracle-check":
        if args.trials < 1:
            raise SchemaError("--trials must be at least 1")
        if args.samples < 1000:
            raise SchemaError("--samples must be at least 1000")
        summary = run_oracle_check(args.trials, args.samples, args.seed, args.workers)
        _emit(dumps(round_floats(summary, args.round)), args.output, stdout)
        return EXIT_OK if summary["passed"] else EXIT_ORACLE_FAILED
    if not (args.tolerance >= 0 and math.isfinite(args.tolerance)):
        raise SchemaError("--tolerance must be a nonnegative number")
    doc = load_input(args.input, stdin)
    result = _COMMANDS[args.command](doc, args)
    _emit(dumps(round_floats(result, args.round)), args.output, stdout)
    return EXIT_OK


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, stdin, stdout)
    except SchemaError as exc:
        stderr.write(dumps({"error": "SchemaError", "message": str(exc)}))
        return EXIT_SCHEMA
    except CliExit as exc:
        stderr.write(dumps(exc.payload))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
