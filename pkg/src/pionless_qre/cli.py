"""Command-line interface: single estimates, parameter sweeps, and the
desk-scale verification suite.

Reports go to stdout as JSON (or CSV for sweeps); diagnostics go to stderr.
Exit codes: 0 success, 1 verification failure, 2 bad input. Output carries
no timestamps, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from .lcu import QSP_LOG_BASES, lambda_H_lcu, lambda_V_lcu, qsp_evolution
from .norms import commutator_bounds
from .params import (
    HBARC_MEV_FM,
    HamiltonianParams,
    LatticeConfig,
    SystemSpec,
    TimeSpec,
    lambda_T,
    load_params,
    params_from_environment,
)
from .trotter import KICKBACK_CONSTANTS, cost_trotter, plan_trotter, system_qubits

METHODS = ("trotter1", "trotter2", "trotter4", "qsp")
_TROTTER_ORDER = {"trotter1": 1, "trotter2": 2, "trotter4": 4}


@dataclass(frozen=True)
class EstimateRequest:
    """One resolved estimate invocation."""

    method: str
    eta: int
    d: int
    m: int
    eps: float
    time: TimeSpec
    include_internal: bool = False
    kickback_constant: str = "lemma8"
    qsp_log_base: str = "2"


def _log_base(tag: str):
    return 2 if tag == "2" else "e"


def run_estimate(req: EstimateRequest, params: HamiltonianParams) -> dict:
    """Produce the full JSON-ready estimate payload for one request."""
    if req.method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {req.method!r}")
    spec = SystemSpec(params, LatticeConfig(d=req.d, m=req.m), eta=req.eta)
    t = req.time.resolve(spec)
    if t <= 0:
        raise ValueError(
            "resolved evolution time is not positive; for response times this "
            "means the requested resolution already exceeds the spectral span"
        )

    out = {
        "method": req.method,
        "spec": {"eta": req.eta, "d": req.d, "m": req.m},
        "eps": req.eps,
        "time": {
            "kind": req.time.kind,
            "value": req.time.value,
            "t_mev_inv": t,
            "t_fm_per_c": t * HBARC_MEV_FM,
        },
        "accounting": {
            "include_internal": req.include_internal,
            "kickback_constant": req.kickback_constant,
            "qsp_log_base": req.qsp_log_base,
        },
    }
    if req.method == "qsp":
        rep = qsp_evolution(
            spec,
            req.eps,
            t,
            log_base=_log_base(req.qsp_log_base),
            include_internal=req.include_internal,
        )
        sys_qubits = system_qubits(spec, req.include_internal)
        out["R"] = rep.R
        out["lambda"] = {
            "lambda_T": lambda_T(spec),
            "lambda_V": lambda_V_lcu(spec),
            "lambda_H": rep.lambda_H,
        }
        t_count = rep.t_count
        out["qubits"] = {
            "system": sys_qubits,
            "ancilla": rep.total_qubits - sys_qubits,
            "total": rep.total_qubits,
        }
        breakdown, registers, flags = rep.breakdown, rep.registers, rep.flags
    else:
        order = _TROTTER_ORDER[req.method]
        plan = plan_trotter(spec, order, req.eps, t)
        rep = cost_trotter(
            spec,
            order,
            req.eps,
            t,
            kickback_constant=req.kickback_constant,
            include_internal=req.include_internal,
        )
        out["r"] = plan.r
        out["lambda"] = {
            "lambda_T": lambda_T(spec),
            "alpha": commutator_bounds(spec).for_order(order),
        }
        t_count = rep.t_count
        out["qubits"] = {
            "system": rep.system_qubits,
            "ancilla": rep.ancilla_qubits,
            "total": rep.total_qubits,
        }
        breakdown, registers, flags = rep.breakdown, rep.registers, rep.flags
    out["t_count"] = t_count
    out["t_count_scientific"] = f"{t_count:.3e}"
    out["breakdown"] = breakdown
    out["registers"] = registers
    out["flags"] = list(flags)
    return out


def _parse_time(text: str) -> TimeSpec:
    kind, sep, raw = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"time must look like t:VALUE, cross:ENERGYMeV, or response:WINDOWMeV, got {text!r}"
        )
    if raw.endswith("MeV"):
        raw = raw[: -len("MeV")]
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse time value from {text!r}")
    kinds = {
        "t": TimeSpec.explicit,
        "explicit": TimeSpec.explicit,
        "cross": TimeSpec.crossing,
        "crossing": TimeSpec.crossing,
        "response": TimeSpec.response,
    }
    if kind not in kinds:
        raise argparse.ArgumentTypeError(f"unknown time kind {kind!r}")
    return kinds[kind](value)


def _parse_values(text: str) -> list:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise argparse.ArgumentTypeError(f"cannot parse range {text!r}")
        if hi_i < lo_i:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse value list {text!r}")


def _parse_methods(text: str) -> list:
    methods = [v for v in text.split(",") if v != ""]
    for v in methods:
        if v not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {v!r}")
    if not methods:
        raise argparse.ArgumentTypeError("need at least one method")
    return methods


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eta", type=int, default=16, help="particle number")
    p.add_argument("--d", type=int, default=3, help="spatial dimensions")
    p.add_argument("--m", type=int, default=3, help="qubits per axis")
    p.add_argument("--eps", type=float, default=0.1, help="total error budget")
    p.add_argument(
        "--time",
        type=_parse_time,
        default=None,
        help="t:VALUE (1/MeV), cross:ENERGYMeV, or response:WINDOWMeV "
        "(default cross:10MeV)",
    )
    p.add_argument("--params", default=None, help="interaction parameter file")
    p.add_argument(
        "--include-internal",
        action="store_true",
        help="count the inert spin/isospin qubits in the system register",
    )
    p.add_argument(
        "--kickback-constant",
        choices=KICKBACK_CONSTANTS,
        default="lemma8",
        help="per-bit constant used for the kinetic phase kickback",
    )
    p.add_argument(
        "--qsp-log-base",
        choices=("2", "e"),
        default="2",
        help="logarithm base in the QSP segment count",
    )


def _load(args) -> HamiltonianParams:
    if args.params:
        return load_params(args.params)
    return params_from_environment()


def _default_time(args) -> TimeSpec:
    return args.time if args.time is not None else TimeSpec.crossing(10.0)


def _request(args, method: str, eta: int, m: int) -> EstimateRequest:
    return EstimateRequest(
        method=method,
        eta=eta,
        d=args.d,
        m=m,
        eps=args.eps,
        time=_default_time(args),
        include_internal=args.include_internal,
        kickback_constant=args.kickback_constant,
        qsp_log_base=args.qsp_log_base,
    )


def cmd_estimate(args) -> int:
    params = _load(args)
    out = run_estimate(_request(args, args.method, args.eta, args.m), params)
    print(json.dumps(out, indent=2))
    return 0


_SWEEP_COLUMNS = (
    "method",
    "axis",
    "t_count",
    "t_count_sci",
    "total_qubits",
    "steps",
    "lambda_h",
    "status",
)


def _sweep_rows(args, params: HamiltonianParams) -> list:
    time_spec = _default_time(args)
    rows = []
    for method in args.methods:
        for value in args.values:
            eta = value if args.axis == "eta" else args.eta
            m = value if args.axis == "m" else args.m
            row = dict.fromkeys(_SWEEP_COLUMNS)
            row["method"] = method
            row["axis"] = value
            try:
                out = run_estimate(_request(args, method, eta, m), params)
                spec = SystemSpec(params, LatticeConfig(d=args.d, m=m), eta=eta)
                row["t_count"] = out["t_count"]
                row["t_count_sci"] = out["t_count_scientific"]
                row["total_qubits"] = out["qubits"]["total"]
                row["steps"] = out.get("r", out.get("R"))
                row["lambda_h"] = lambda_H_lcu(spec)
                row["status"] = "ok"
            except ValueError as exc:
                row["status"] = str(exc)
            rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    params = _load(args)
    rows = _sweep_rows(args, params)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
        return 0
    fixed = [
        f"d={args.d}",
        f"eta={args.eta}" if args.axis != "eta" else None,
        f"m={args.m}" if args.axis != "m" else None,
        f"eps={args.eps}",
        f"time={_default_time(args).kind}:{_default_time(args).value}",
        f"kickback={args.kickback_constant}",
        f"log_base={args.qsp_log_base}",
        f"include_internal={str(args.include_internal).lower()}",
        f"params={args.params or 'default'}",
    ]
    print("# schema=1")
    print("# fixed: " + " ".join(f for f in fixed if f))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(_SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(
            ["" if row[c] is None else row[c] for c in _SWEEP_COLUMNS]
        )
    return 0


def cmd_verify(args) -> int:
    if args.params:
        # refuse a corrupt parameter file before any cases run
        load_params(args.params)
    from .desk.verify import run_cases

    results = run_cases(args.filter)
    payload = {
        "cases": [
            {
                "case": r.case,
                "measured": r.measured,
                "bound": r.bound,
                "passed": r.passed,
                "detail": r.detail,
            }
            for r in results
        ],
        "passed": bool(results) and all(r.passed for r in results),
    }
    print(json.dumps(payload, indent=2))
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pionless-qre",
        description="T-gate and qubit estimates for lattice nuclear dynamics, "
        "with a desk-scale verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="single resource estimate")
    p_est.add_argument("--method", required=True, choices=METHODS)
    _add_common(p_est)
    p_est.set_defaults(fn=cmd_estimate)

    p_sweep = sub.add_parser("sweep", help="estimate across an axis")
    p_sweep.add_argument("--methods", type=_parse_methods, default=list(("trotter2", "qsp")))
    p_sweep.add_argument("--axis", required=True, choices=("eta", "m"))
    p_sweep.add_argument("--values", type=_parse_values, required=True)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p_sweep)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_ver = sub.add_parser("verify", help="run desk-scale verification cases")
    p_ver.add_argument("--filter", default="", help="substring case filter")
    p_ver.add_argument("--params", default=None, help="interaction parameter file")
    p_ver.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
