"""
Command line for the self-dual code toolkit.

    python main.py selfdual base --q 5 --n 2
    python main.py bounds scan --from 4 --to 128 --format csv

Exit codes: 0 success, 1 domain error, 2 usage error. The payload goes to
stdout (JSON, or CSV for bounds tables); logs go to stderr and --log-file.
"""

import argparse
import logging
import os
import sys
from datetime import datetime
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ag_code import (ag_dual, cl_code, designed_distance, make_omega_for,
                     make_spec, selfdual_ag_report)
from bounds import (beats_gv, bbgs_gamma, entropy, entropy_curve, proof_chain,
                    scan, tower_length_condition, tower_rate_bound,
                    tvz_advantage_interval, tvz_selfdual_delta)
from code_io import code_to_json, code_to_record, read_code, write_code
from config_manager import ConfigError, load_and_validate_config
from errors import SelfDualError, UsageError, VerificationFailed
from finite_field import (FiniteField, field_from_order, make_field,
                          solve_alpha_beta, sqrt_of_minus_one)
from formatting import (error_text, frame_to_csv, frame_to_rows,
                        records_to_csv, render_json, report_to_row)
from function_field import (INFINITY, Divisor, differential_divisor,
                            rational_place, rational_places, residue)
from linear_code import (LinearCode, contains, dual, is_self_dual,
                         is_self_orthogonal, min_distance, params)
from logger import level_from_name, setup_logger
from models import CommandRequest
from selfdual_construct import (base_selfdual, embed_selfdual, exists_selfdual,
                                random_self_orthogonal)

logger = logging.getLogger('selfdual_codes')

GLOBAL_KEYS = ("command", "action", "format", "budget", "seed", "config",
               "log_file", "verbose", "input_path", "output_path")


class JsonArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of printing and exiting"""

    def error(self, message):
        raise UsageError(message)


def _unsigned(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an unsigned integer, got {text}")
    return value


# ---------- argument parsing ----------

def build_parser() -> JsonArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--budget", type=_unsigned, default=None,
                        help="Cap on codeword evaluations for minimum distance")
    common.add_argument("--seed", type=_unsigned, default=None)
    common.add_argument("--config", default=None, help="Path to config.json")
    common.add_argument("--log-file", dest="log_file", default=None)
    common.add_argument("--verbose", action="store_true")

    parser = JsonArgumentParser(description="Self-dual codes over finite fields and their bounds")
    groups = parser.add_subparsers(dest="command", required=True)

    def action(group, name: str, help_text: str):
        return group.add_parser(name, parents=[common], help=help_text)

    # field
    field_group = groups.add_parser("field").add_subparsers(dest="action", required=True)
    p = action(field_group, "info", "Modulus and special elements of GF(q)")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int, default=1)

    # selfdual
    sd = groups.add_parser("selfdual").add_subparsers(dest="action", required=True)
    p = action(sd, "base", "Explicit self-dual code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", dest="output_path")
    p = action(sd, "embed", "Extend a self-orthogonal code to a self-dual one")
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--out", dest="output_path")
    p = action(sd, "exists", "Whether a self-dual code of length n exists")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = action(sd, "sample", "Seeded random self-orthogonal code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out", dest="output_path")

    # code
    cg = groups.add_parser("code").add_subparsers(dest="action", required=True)
    p = action(cg, "info", "Parameters and predicates of a code")
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--mindist", action="store_true")
    p = action(cg, "dual", "Dual code")
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--out", dest="output_path")
    p = action(cg, "mindist", "Exact minimum distance")
    p.add_argument("--in", dest="input_path", required=True)
    p = action(cg, "verify", "Check predicates; exit 1 if any fails")
    p.add_argument("--in", dest="input_path", required=True)
    p.add_argument("--self-dual", dest="self_dual", action="store_true")
    p.add_argument("--self-orthogonal", dest="self_orthogonal", action="store_true")
    p.add_argument("--contains", default=None, help="Code file that must be a subcode")

    # ag
    ag = groups.add_parser("ag").add_subparsers(dest="action", required=True)
    p = action(ag, "build", "Evaluation code C_L(G, D)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--points", default="all", help="'all', 'nonzero' or encodings like 1,2,3")
    p.add_argument("--G", dest="G", default="", help="Divisor like 'inf:3,0:-1'")
    p.add_argument("--dual", action="store_true", help="Build the dual via du/u instead")
    p.add_argument("--out", dest="output_path")
    p = action(ag, "selfdual", "Self-dual code from du/u on the given places")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--points", default="all")
    p.add_argument("--mindist", action="store_true")
    p.add_argument("--out", dest="output_path")
    p = action(ag, "omega", "The differential du/u and its divisor")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--points", default="all")

    # bounds
    bg = groups.add_parser("bounds").add_subparsers(dest="action", required=True)
    p = action(bg, "entropy", "q-ary entropy H_q(delta)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--grid", type=int, default=None, help="Tabulate on this many points")
    p = action(bg, "delta0", "GV relative distance at rate 1/2")
    p.add_argument("--q", type=int, required=True)
    p = action(bg, "delta1", "Self-dual tower bound for q = l^r")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = action(bg, "scan", "Compare delta0 and delta1 over a range of q")
    p.add_argument("--from", dest="q_from", type=int, default=None)
    p.add_argument("--to", dest="q_to", type=int, default=None)
    p = action(bg, "tower", "Rate bound 1/2 - gamma/m of a tower")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--gamma", default=None, help="Exact rational, e.g. 1/7")
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--degree", type=int, default=None, help="[F_i : F_0] for the length condition")

    return parser


def request_from_args(args: argparse.Namespace, config: Dict[str, Any]) -> CommandRequest:
    values = vars(args)
    options = {k: v for k, v in values.items() if k not in GLOBAL_KEYS}
    return CommandRequest(
        command=values["command"],
        action=values["action"],
        options=options,
        input_path=values.get("input_path"),
        output_path=values.get("output_path"),
        seed=values["seed"] if values.get("seed") is not None else config["seed"],
        budget=values["budget"] if values.get("budget") is not None else config["enumeration"]["budget"],
        format=values.get("format") or config["output"]["default_format"],
    )


# ---------- helpers ----------

def _field(opts: Dict[str, Any]) -> FiniteField:
    if opts.get("q") is not None:
        return field_from_order(opts["q"])
    if opts.get("p") is not None:
        return make_field(opts["p"], opts.get("m", 1))
    raise UsageError("either --q or --p is required")


def parse_points(F: FiniteField, text: str) -> Divisor:
    """'all', 'nonzero' or comma-separated element encodings."""
    text = (text or "all").strip()
    if text == "all":
        points = range(F.q)
    elif text == "nonzero":
        points = range(1, F.q)
    else:
        try:
            points = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise UsageError(f"invalid --points: {text!r}")
    bad = [a for a in points if not 0 <= a < F.q]
    if bad:
        raise UsageError(f"points {bad} are not elements of GF({F.q})")
    return Divisor.from_places(rational_places(F, points))


def parse_divisor(F: FiniteField, text: str) -> Divisor:
    """'inf:3,0:-1' -> 3 P_inf - P_0 (rational places only)."""
    coeffs: Dict[Any, int] = {}
    for token in (text or "").split(","):
        token = token.strip()
        if not token:
            continue
        try:
            place_text, coeff_text = token.split(":")
            coeff = int(coeff_text)
            place = INFINITY if place_text.strip() == "inf" else rational_place(F, int(place_text))
        except ValueError:
            raise UsageError(f"invalid divisor term {token!r}, expected 'place:coefficient'")
        coeffs[place] = coeffs.get(place, 0) + coeff
    return Divisor(coeffs)


def _mindist(C: LinearCode, req: CommandRequest, config: Dict[str, Any]) -> int:
    return min_distance(C, budget=req.budget, chunk_size=config["enumeration"]["chunk_size"])


def _input_code(req: CommandRequest) -> LinearCode:
    if not req.input_path:
        raise UsageError("--in is required")
    return read_code(req.input_path)


def _record(C: LinearCode) -> Dict[str, Any]:
    return code_to_record(C).model_dump()


# ---------- handlers ----------

def handle_field_info(req, config):
    F = _field(req.options)
    try:
        sqrt = int(sqrt_of_minus_one(F))
    except SelfDualError:
        sqrt = None
    try:
        alpha, beta = solve_alpha_beta(F)
        pair = [int(alpha), int(beta)]
    except SelfDualError:
        pair = None
    return {"p": F.p, "m": F.m, "q": F.q, "modulus": list(F.modulus),
            "sqrt_minus_one": sqrt, "alpha_beta": pair}


def handle_selfdual_base(req, config):
    opts = req.options
    return base_selfdual(field_from_order(opts["q"]), opts["n"])


def handle_selfdual_embed(req, config):
    return embed_selfdual(_input_code(req))


def handle_selfdual_exists(req, config):
    opts = req.options
    return {"q": opts["q"], "n": opts["n"], "exists": exists_selfdual(opts["q"], opts["n"])}


def handle_selfdual_sample(req, config):
    opts = req.options
    rng = np.random.default_rng(req.seed)
    return random_self_orthogonal(field_from_order(opts["q"]), opts["n"], opts.get("k"), rng)


def handle_code_info(req, config):
    C = _input_code(req)
    info = {"p": C.field.p, "m": C.field.m, "n": C.n, "k": C.k,
            "rate": str(params(C).rate),
            "self_orthogonal": is_self_orthogonal(C), "self_dual": is_self_dual(C)}
    if req.options.get("mindist"):
        info["d"] = _mindist(C, req, config)
    return info


def handle_code_dual(req, config):
    return dual(_input_code(req))


def handle_code_mindist(req, config):
    C = _input_code(req)
    d = _mindist(C, req, config)
    return {"n": C.n, "k": C.k, "d": d, "relative_distance": str(params(C, d).relative_distance)}


def handle_code_verify(req, config):
    C = _input_code(req)
    opts = req.options
    checks: Dict[str, bool] = {}
    if opts.get("self_orthogonal"):
        checks["self_orthogonal"] = is_self_orthogonal(C)
    if opts.get("self_dual"):
        checks["self_dual"] = is_self_dual(C)
    if opts.get("contains"):
        checks["contains"] = contains(C, read_code(opts["contains"]))
    if not checks:
        raise UsageError("verify needs at least one of --self-dual, --self-orthogonal, --contains")
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise VerificationFailed(f"failed checks: {', '.join(failed)}", checks=checks)
    return {"ok": True, "checks": checks}


def handle_ag_build(req, config):
    opts = req.options
    F = field_from_order(opts["q"])
    D = parse_points(F, opts.get("points"))
    G = parse_divisor(F, opts.get("G", ""))
    if opts.get("dual"):
        omega = make_omega_for(F, D)
        spec = make_spec(F, D, G, omega)
        C = ag_dual(spec)
        dual_G = D + differential_divisor(omega) - G
        return {"code": _record(C), "G": repr(G), "dual_G": repr(dual_G),
                "designed_distance": D.degree - dual_G.degree}, C
    spec = make_spec(F, D, G)
    C = cl_code(spec)
    return {"code": _record(C), "G": repr(G), "designed_distance": designed_distance(spec)}, C


def handle_ag_selfdual(req, config):
    opts = req.options
    F = field_from_order(opts["q"])
    D = parse_points(F, opts.get("points"))
    report = selfdual_ag_report(D, make_omega_for(F, D))
    payload = {"code": _record(report.code), "G": repr(report.G),
               "base_k": report.base_code.k, "extended": report.extended,
               "designed_distance": report.designed_distance,
               "dual_divisor": repr(report.dual_divisor),
               "dual_designed_distance": report.dual_designed_distance}
    if opts.get("mindist"):
        payload["d"] = _mindist(report.code, req, config)
    return payload, report.code


def handle_ag_omega(req, config):
    opts = req.options
    F = field_from_order(opts["q"])
    D = parse_points(F, opts.get("points"))
    omega = make_omega_for(F, D)
    res = {repr(P): int(residue(omega, P)) for P in D.support()}
    return {**omega.f.to_json(), "divisor": repr(differential_divisor(omega)),
            "residues": res, "certified": True}


def handle_bounds_entropy(req, config):
    opts = req.options
    q = opts["q"]
    if opts.get("grid") is not None:
        if opts["grid"] < 1:
            raise UsageError(f"--grid must be positive, got {opts['grid']}")
        deltas = np.linspace(0.0, 1.0 - 1.0 / q, opts["grid"])
        return [{"delta": float(d), "entropy": float(h)}
                for d, h in zip(deltas, entropy_curve(q, deltas))]
    if opts.get("delta") is None:
        raise UsageError("--delta or --grid is required")
    return {"q": q, "delta": opts["delta"], "entropy": entropy(q, opts["delta"])}


def handle_bounds_delta0(req, config):
    settings = config["bounds"]
    report = beats_gv(req.options["q"], tolerance=settings["bisection_tolerance"],
                      band=settings["borderline_band"],
                      max_iterations=settings["max_iterations"])
    return {**report_to_row(report).model_dump(), "residual": report.residual}


def handle_bounds_delta1(req, config):
    l, r = req.options["l"], req.options["r"]
    delta1 = tvz_selfdual_delta(l, r)
    chain = proof_chain(l, r)
    payload = {"l": l, "r": r, "q": l ** r, "delta1": str(delta1), "delta1_float": float(delta1),
               "epsilon": str(chain.epsilon),
               "proof_chain": {"direct": chain.direct,
                               "series_inequality": chain.series_inequality,
                               "harmonic_inequality": chain.harmonic_inequality,
                               "floor_power_inequality": chain.floor_power_inequality},
               "beats_gv": beats_gv(l ** r).beats_gv}
    if r == 2:
        interval = tvz_advantage_interval(l)
        payload["advantage_interval"] = {"low": interval.low, "high": interval.high,
                                         "contains_half_rate": interval.contains_half_rate}
    return payload


def handle_bounds_scan(req, config):
    settings = config["bounds"]
    q_from = req.options.get("q_from")
    q_to = req.options.get("q_to")
    q_from = settings["scan_from"] if q_from is None else q_from
    q_to = settings["scan_to"] if q_to is None else q_to
    if q_from > q_to:
        raise UsageError(f"--from {q_from} is larger than --to {q_to}")
    return scan(q_from, q_to, tolerance=settings["bisection_tolerance"],
                band=settings["borderline_band"], max_iterations=settings["max_iterations"])


def handle_bounds_tower(req, config):
    opts = req.options
    m = opts.get("m", 1)
    if opts.get("gamma") is not None:
        try:
            gamma = Fraction(opts["gamma"])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"invalid --gamma {opts['gamma']!r}")
    elif opts.get("l") is not None and opts.get("r") is not None:
        gamma = bbgs_gamma(opts["l"], opts["r"])
    else:
        raise UsageError("--gamma or both --l and --r are required")
    bound = tower_rate_bound(m, gamma)
    payload = {"m": m, "gamma": str(gamma), "rate_bound": str(bound),
               "rate_bound_float": float(bound)}
    if opts.get("q") is not None and opts.get("degree") is not None:
        payload["length_condition"] = tower_length_condition(opts["q"], opts["degree"], m)
    return payload


HANDLERS: Dict[Tuple[str, str], Callable] = {
    ("field", "info"): handle_field_info,
    ("selfdual", "base"): handle_selfdual_base,
    ("selfdual", "embed"): handle_selfdual_embed,
    ("selfdual", "exists"): handle_selfdual_exists,
    ("selfdual", "sample"): handle_selfdual_sample,
    ("code", "info"): handle_code_info,
    ("code", "dual"): handle_code_dual,
    ("code", "mindist"): handle_code_mindist,
    ("code", "verify"): handle_code_verify,
    ("ag", "build"): handle_ag_build,
    ("ag", "selfdual"): handle_ag_selfdual,
    ("ag", "omega"): handle_ag_omega,
    ("bounds", "entropy"): handle_bounds_entropy,
    ("bounds", "delta0"): handle_bounds_delta0,
    ("bounds", "delta1"): handle_bounds_delta1,
    ("bounds", "scan"): handle_bounds_scan,
    ("bounds", "tower"): handle_bounds_tower,
}


def render(result: Any, fmt: str) -> str:
    if isinstance(result, pd.DataFrame):
        return frame_to_csv(result).rstrip("\n") if fmt == "csv" else render_json(frame_to_rows(result))
    if isinstance(result, list):
        return records_to_csv(result).rstrip("\n") if fmt == "csv" else render_json(result)
    if fmt == "csv":
        raise UsageError("csv output is only available for tables")
    if isinstance(result, LinearCode):
        return code_to_json(result)
    return render_json(result)


def dispatch(req: CommandRequest, config: Optional[Dict[str, Any]] = None) -> Tuple[int, str]:
    """
    Run one request.

    Returns:
        (exit_code, text): 0 and the payload, 1 and an error payload for a
        domain error, 2 and an error payload for a usage error
    """
    if config is None:
        config = load_and_validate_config()
    handler = HANDLERS.get((req.command, req.action))
    if handler is None:
        return 2, error_text(UsageError(f"unknown command {req.command} {req.action}"))

    logger.info(f"{req.command} {req.action} {req.options}")
    try:
        result = handler(req, config)
        code = None
        if isinstance(result, tuple):
            result, code = result
        elif isinstance(result, LinearCode):
            code = result
        text = render(result, req.format)
        if req.output_path:
            if code is None:
                raise UsageError("--out is only available for commands that produce a code")
            write_code(code, req.output_path)
            logger.info(f"code written to {req.output_path}")
    except UsageError as e:
        return 2, error_text(e)
    except SelfDualError as e:
        logger.debug(f"{e.code}: {e.detail}")
        return 1, error_text(e)
    except OSError as e:
        return 1, render_json({"error": "IOError", "detail": str(e)})
    return 0, text


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(error_text(e))
        return 2

    try:
        config = load_and_validate_config(args.config)
    except (ConfigError, FileNotFoundError) as e:
        print(render_json({"error": "ConfigError", "detail": str(e)}))
        return 2

    log_settings = config["logging"]
    console_level = logging.DEBUG if args.verbose else level_from_name(log_settings["console_level"])
    log_file = args.log_file
    if log_file and not os.path.dirname(log_file):
        # bare file names land in the configured log directory
        log_file = os.path.join(log_settings["log_dir"], log_file)
    setup_logger(log_file=log_file, console_level=console_level,
                 file_level=level_from_name(log_settings["file_level"], logging.DEBUG))
    logger.debug(f"run started {datetime.now().isoformat(timespec='seconds')}")

    req = request_from_args(args, config)
    exit_code, text = dispatch(req, config)
    print(text)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
