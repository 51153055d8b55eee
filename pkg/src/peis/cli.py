"""Command line interface: ``peis <command> [options]``.

Every result is printed as JSON (sorted keys) with the configuration
attached; tabular audits can be printed as CSV with ``--output csv``.
Flags may also be set through PEIS_<FLAG> environment variables, for
example PEIS_P=7 or PEIS_EC_FORMULA=verbatim.

Exit codes: 0 success, 1 a verify check failed, 2 usage / precondition /
pole, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dirichlet import (
    DirichletCharacter,
    dirichlet_L_at_negative,
    enumerate_characters,
    teichmuller_character,
    trivial_character,
)
from .eisenstein import (
    classical_G,
    normalized_family_u0,
    padic_G_star,
    serre_eisenstein_measure,
    valuation_report,
    valuation_table_csv,
)
from .errors import PeisError, PrecisionError
from .exact import bernoulli_number, format_rational, stabilized_zeta
from .iwasawa import LambdaElement, weierstrass_prepare
from .lfunctions import lp_interpolation, lp_measure_route, zeta_star
from .measures import bernoulli_distribution, ec_measure, haar_distribution
from .padic import PadicInt, PadicNumber
from .verify import SUITES, Config, run_suite

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

FLAGS = [
    # flag, dest, type, default, help
    ("--p", "p", int, 5, "odd prime"),
    ("--prec", "N", int, 20, "p-adic precision N (digits)"),
    ("--qprec", "M", int, 50, "q-expansion truncation M"),
    ("--tprec", "M_T", int, 12, "T-truncation M_T of Lambda elements"),
    ("--levels", "levels", int, 8, "integration level for measures"),
    ("--ec-formula", "ec_formula", str, "regularized", "E_c formula: regularized or verbatim"),
    ("--output", "output", str, "json", "output format: json or csv"),
]


class UsageError(Exception):
    pass


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, dest, typ, default, text in FLAGS:
        env = "PEIS_" + flag[2:].upper().replace("-", "_")
        kwargs = {"dest": dest, "type": typ, "default": argparse.SUPPRESS,
                  "help": f"{text} (default {default}; env {env})"}
        if dest == "ec_formula":
            kwargs["choices"] = ["regularized", "verbatim"]
        if dest == "output":
            kwargs["choices"] = ["json", "csv"]
        common.add_argument(flag, **kwargs)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="peis", parents=[common],
                                     description="p-adic L-functions and Eisenstein measures, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", parents=[common], help="exact Bernoulli number B_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("lvalue", parents=[common], help="L(1-n, chi) exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--chi", default="trivial", help="trivial | w<j> | <modulus>:<index>")

    p = sub.add_parser("lp", parents=[common], help="p-adic L-value L_p(s, chi)")
    p.add_argument("--chi", default="w2")
    p.add_argument("--at", type=int, required=True, help="integer argument s")
    p.add_argument("--route", choices=["interpolation", "measure", "both"], default="both")

    p = sub.add_parser("zeta-star", parents=[common], help="zeta*(s) on the branch u: L_p(s, omega^u)")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--at", type=int, required=True, help="integer argument s")

    p = sub.add_parser("eisenstein", parents=[common], help="Eisenstein q-expansions")
    p.add_argument("--kind", choices=["classical", "padic", "family", "normalized"], default="padic")
    p.add_argument("--weight", default="4", help="k, or s,u for p-adic weights")

    p = sub.add_parser("measure", parents=[common], help="distributions and measures")
    p.add_argument("--kind", choices=["ec", "bernoulli", "haar"], default="ec")
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--level", type=int, action="append", help="level to store (repeatable)")

    p = sub.add_parser("weierstrass", parents=[common], help="Weierstrass preparation of a power series")
    p.add_argument("--coeffs", required=True, help="comma-separated integers c_0,c_1,...")

    p = sub.add_parser("verify", parents=[common], help="run a check suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    return parser


def resolve_config(args, environ=None) -> Config:
    """Flags beat PEIS_ environment variables, which beat defaults."""
    environ = os.environ if environ is None else environ
    values = {}
    for flag, dest, typ, default, _ in FLAGS:
        env = "PEIS_" + flag[2:].upper().replace("-", "_")
        if hasattr(args, dest):
            values[dest] = getattr(args, dest)
        elif env in environ:
            try:
                values[dest] = typ(environ[env])
            except ValueError:
                raise UsageError(f"{env}={environ[env]!r} is not a valid {typ.__name__}")
        else:
            values[dest] = default
    cfg = Config(**values)
    from .padic import check_prime

    check_prime(cfg.p)
    if min(cfg.N, cfg.M, cfg.M_T) < 1 or cfg.levels < 0:
        raise UsageError("precisions must be positive and levels nonnegative")
    if cfg.ec_formula not in ("regularized", "verbatim") or cfg.output not in ("json", "csv"):
        raise UsageError("bad --ec-formula or --output value")
    return cfg


def parse_character(spec: str, p: int) -> DirichletCharacter:
    spec = spec.strip()
    if spec == "trivial":
        return trivial_character(1)
    if spec.startswith("w"):
        try:
            j = int(spec[1:])
        except ValueError:
            raise UsageError(f"bad character {spec!r}")
        return teichmuller_character(p) ** j
    if ":" in spec:
        f, idx = spec.split(":", 1)
        chars = enumerate_characters(int(f))
        if not 0 <= int(idx) < len(chars):
            raise UsageError(f"character index out of range (0..{len(chars) - 1})")
        return chars[int(idx)]
    raise UsageError(f"bad character {spec!r}: use trivial, w<j> or <modulus>:<index>")


def _padic_json(x) -> dict:
    if isinstance(x, PadicInt):
        out = x.to_json()
        out["digits"] = x.digits()
        return out
    return x.to_json()


def _precision_of(x) -> int:
    return x.N if isinstance(x, PadicInt) else x.prec


# commands


def cmd_bernoulli(args, cfg):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return {"n": args.n, "value": format_rational(bernoulli_number(args.n))}


def cmd_lvalue(args, cfg):
    chi = parse_character(args.chi, cfg.p)
    val = dirichlet_L_at_negative(args.n, chi)
    out = {"n": args.n, "chi": chi.to_json(), "value": val.to_json()}
    if val.is_rational():
        out["rational"] = format_rational(val.to_rational())
    return out


def cmd_lp(args, cfg):
    chi = parse_character(args.chi, cfg.p)
    s = args.at
    out = {"s": s, "chi": chi.to_json()}
    results = {}
    if args.route in ("interpolation", "both"):
        if s > 0:
            raise UsageError("the interpolation route needs s = 1 - n <= 0")
        v = lp_interpolation(1 - s, chi, cfg.p, cfg.N)
        results["interpolation"] = {"value": _padic_json(v), "error_bound_exponent": _precision_of(v),
                                    "route": "interpolation"}
    if args.route in ("measure", "both"):
        v = lp_measure_route(s, chi, cfg.p, cfg.N, level=cfg.levels, formula=cfg.ec_formula)
        results["measure"] = {"value": _padic_json(v), "error_bound_exponent": _precision_of(v),
                              "route": "measure"}
        if args.route == "both":
            a = lp_interpolation(1 - s, chi, cfg.p, cfg.N)
            agree = v.agreement(a) if isinstance(v, PadicNumber) else (
                a.agreement(v) if isinstance(a, PadicNumber) else v.agreement(a))
            out["agreement_digits"] = agree
    out["results"] = results
    return out


def cmd_zeta_star(args, cfg):
    v = zeta_star(args.at, args.u, cfg.p, cfg.N)
    out = {"s": args.at, "u": args.u % (cfg.p - 1), "value": _padic_json(v),
           "error_bound_exponent": _precision_of(v), "route": "interpolated branch"}
    k = 1 - args.at
    if k >= 1 and (k - args.u) % (cfg.p - 1) == 0:
        out["exact"] = format_rational(stabilized_zeta(k, cfg.p))
    return out


def _parse_weight(text: str):
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        return parts[0]
    if len(parts) == 2:
        return tuple(parts)
    raise UsageError("weight is k or s,u")


def cmd_eisenstein(args, cfg):
    w = _parse_weight(args.weight)
    if args.kind == "classical":
        if not isinstance(w, int):
            raise UsageError("classical weights are integers")
        f = classical_G(w, cfg.M)
    elif args.kind == "padic":
        f = padic_G_star(w, cfg.M, cfg.N, cfg.p)
    elif args.kind == "family":
        u = w[1] if isinstance(w, tuple) else w
        f = serre_eisenstein_measure(u, cfg.p, cfg.M, cfg.N, cfg.M_T)
    else:
        f = normalized_family_u0(cfg.p, cfg.M, cfg.N, cfg.M_T)
    rep = valuation_report(f, cfg.p)
    if cfg.output == "csv":
        rows = [{"n": n, "valuation": v} for n, v in enumerate(rep.valuations)]
        return valuation_table_csv(rows, ["n", "valuation"])
    return {"expansion": f.to_json(), "valuation": rep.to_json()}


def cmd_measure(args, cfg):
    levels = args.level or ([1, 2, 3] if args.kind == "bernoulli" else [0, 1])
    if args.kind == "ec":
        mu = ec_measure(args.d, args.c, cfg.p, levels, cfg.ec_formula)
    elif args.kind == "bernoulli":
        mu = bernoulli_distribution(args.k, levels, cfg.p)
    else:
        mu = haar_distribution(cfg.p, levels)
    rep = mu.check_compatibility()
    out = mu.to_json()
    out["compatibility"] = {"ok": rep.ok, "pairs_checked": rep.pairs_checked, "failures": rep.failures}
    masses = {str(lv): format_rational(mu.total_mass(lv)) for lv in levels}
    out["total_mass"] = masses
    return out


def cmd_weierstrass(args, cfg):
    try:
        coeffs = [int(x) for x in args.coeffs.split(",")]
    except ValueError:
        raise UsageError("--coeffs takes comma-separated integers")
    M = max(cfg.M_T, len(coeffs))
    w = weierstrass_prepare(LambdaElement(cfg.p, cfg.N, M, coeffs))
    out = w.to_json()
    out["mu"], out["lambda"] = w.mu, w.lam
    return out


def cmd_verify(args, cfg, explicit_p: bool):
    primes = (cfg.p,) if explicit_p else None
    return run_suite(args.suite, cfg, primes)


COMMANDS = {
    "bernoulli": cmd_bernoulli,
    "lvalue": cmd_lvalue,
    "lp": cmd_lp,
    "zeta-star": cmd_zeta_star,
    "eisenstein": cmd_eisenstein,
    "measure": cmd_measure,
    "weierstrass": cmd_weierstrass,
}


def _emit(obj, stream):
    if isinstance(obj, str):
        stream.write(obj)
    else:
        stream.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def main(argv=None, stdout=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    environ = os.environ if environ is None else environ
    try:
        cfg = resolve_config(args, environ)
        if args.command == "verify":
            result = cmd_verify(args, cfg, hasattr(args, "p") or "PEIS_P" in environ)
            result["config"] = cfg.to_json()
            _emit(result, stdout)
            return EXIT_OK if result["passed"] else EXIT_CHECK
        result = COMMANDS[args.command](args, cfg)
        if isinstance(result, dict):
            result["command"] = args.command
            result["config"] = cfg.to_json()
        _emit(result, stdout)
        return EXIT_OK
    except UsageError as exc:
        _emit({"error": {"code": "usage", "message": str(exc)}}, stdout)
        return EXIT_USAGE
    except PrecisionError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, stdout)
        return EXIT_PRECISION
    except PeisError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, stdout)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
