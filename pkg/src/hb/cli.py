"""Command-line front end.

Every subcommand prints a single JSON document (or a terse text line
with --format text) of the shape

    {tool, version, config, op, params, result, diagnostics}

plus `paper_expected` / `match` fields when the requested value has a
published anchor.  Exit codes: 0 success, 1 internal error, 2 usage
error, 3 a verification or anchor mismatch.
"""

import argparse
import json
import random
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import __version__
from .building import mat_from_exps, type_one_in_neighbors
from .discriminant import (eval_on_mirabolic, eval_theta_on_edge,
                           p_delta_coefficient, p_delta_eval,
                           p_theta_coefficient, series_eval, theta_evaluator,
                           weyl_edge_value)
from .eisenstein import (eisenstein_at, eisenstein_diagonal,
                         eisenstein_truncated_sum, identity_check_thm56)
from .fields import get_field
from .fourier import fourier_coefficient, poly_key
from .oracle import DEFAULT_PREC, p_delta_direct, p_delta_on_p_point, \
    p_theta_direct
from .poly import Poly, RatF, parse_poly
from .units import (cusp_orbits, cuspidal_order, root_order_delta,
                    root_order_theta, sigma_det_check)
from .verify import run_suite

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- parsing

def _parse_ratf(field, text):
    """An element of F_q(T) as 'num' or 'num/den' in the poly syntax."""
    if "/" in text:
        num, den = text.split("/", 1)
        return RatF(parse_poly(field, num), parse_poly(field, den))
    return RatF(parse_poly(field, text))


def _parse_matrix(field, text):
    """Rows separated by ';', entries by ','."""
    rows = []
    for row in text.split(";"):
        rows.append(tuple(_parse_ratf(field, e) for e in row.split(",")))
    r = len(rows)
    if any(len(row) != r for row in rows):
        raise UsageError(f"matrix {text!r} is not square")
    return tuple(rows)


def _parse_ints(text):
    return tuple(int(x) for x in text.split(","))


def _parse_polyvec(field, text):
    return tuple(parse_poly(field, s) for s in text.split(","))


def _parse_xvec(field, text):
    return tuple(_parse_ratf(field, s) for s in text.split(","))


# ---------------------------------------------------------------- output

def _jsonable(x):
    if is_dataclass(x) and not isinstance(x, type):
        return {k: _jsonable(v) for k, v in asdict(x).items()}
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, bool, str)) or x is None:
        return x
    return str(x)


def _emit(args, op, params, result, diagnostics=None, expected=None):
    doc = {
        "tool": "hb",
        "version": __version__,
        "config": {"q": getattr(args, "q", None), "r": getattr(args, "r", None)},
        "op": op,
        "params": _jsonable(params),
        "result": _jsonable(result),
        "diagnostics": _jsonable(diagnostics or {}),
    }
    code = EXIT_OK
    if expected is not None:
        doc["paper_expected"] = _jsonable(expected)
        doc["match"] = _jsonable(result) == _jsonable(expected)
        if not doc["match"]:
            code = EXIT_MISMATCH
    if args.format == "text":
        tail = "" if expected is None else \
            ("  [matches expected value]" if doc["match"]
             else f"  [MISMATCH: expected {doc['paper_expected']}]")
        print(f"{op}: {doc['result']}{tail}")
    else:
        print(json.dumps(doc, indent=2))
    return code


# ---------------------------------------------------------------- commands

def cmd_building_neighbors(args):
    field = get_field(args.q)
    g = _parse_matrix(field, args.g) if args.g else \
        mat_from_exps(field, (0,) * args.r)
    edges = type_one_in_neighbors(g)
    keys = sorted({str(e.key) for e in edges})
    return _emit(args, "building.neighbors",
                 {"g": args.g or "identity"},
                 {"count": len(edges), "distinct": len(keys)},
                 {"expected_count": (args.q ** args.r - 1) // (args.q - 1),
                  "keys": keys[:20]})


def cmd_building_weyl(args):
    k = _parse_ints(args.k)
    val = weyl_edge_value(args.q, k)
    return _emit(args, "building.weyl", {"k": list(k)}, val)


def cmd_fourier_coeff(args):
    field = get_field(args.q)
    avec = _parse_polyvec(field, args.a)
    yexps = _parse_ints(args.y)
    if args.h == "oracle":
        if args.r != 2:
            raise UsageError("the oracle evaluator is wired for r = 2")
        h = lambda u, ye: p_delta_on_p_point(u, ye, args.q, args.r,
                                             D=args.deg_bound,
                                             prec=args.prec)
    else:
        h = lambda u, ye: series_eval(u, ye, args.r, field)
    c = fourier_coefficient(h, avec, yexps, field)
    closed = p_delta_coefficient(avec, yexps, args.r)
    return _emit(args, "fourier.coeff",
                 {"h": args.h, "a": args.a, "y": list(yexps)},
                 str(c), {"closed_form": closed})


def cmd_eisenstein_eval(args):
    nvec = _parse_ints(args.n)
    s0 = Fraction(args.s)
    closed = eisenstein_at(nvec, args.q, s0)
    ts = eisenstein_truncated_sum(nvec, args.q, s0, args.N)
    diag = {"rational_function": str(eisenstein_diagonal(nvec, args.q)),
            "truncated_sum": ts.value, "tail_bound": ts.tail_bound,
            "terms": ts.terms,
            "within_tail": abs(closed - ts.value) <= ts.tail_bound}
    expected = Fraction(64, 15) if (nvec == (0, 0) and args.q == 2
                                    and s0 == 2) else None
    code = _emit(args, "eisenstein.eval",
                 {"n": list(nvec), "s": str(s0), "N": args.N},
                 closed, diag, expected)
    if not diag["within_tail"]:
        return EXIT_MISMATCH
    return code


def cmd_eisenstein_klf(args):
    items = identity_check_thm56()
    bad = [i for i in items if not i.ok]
    code = _emit(args, "eisenstein.check-klf-chain", {},
                 {"checked": len(items), "failed": len(bad)},
                 {"first_failures": [(i.q, i.r, i.a, i.yexps)
                                     for i in bad[:5]]})
    return EXIT_MISMATCH if bad else code


def cmd_delta_coeff(args):
    field = get_field(args.q)
    avec = _parse_polyvec(field, args.a)
    yexps = _parse_ints(args.y)
    c = p_delta_coefficient(avec, yexps, args.r)
    return _emit(args, "delta.coeff", {"a": args.a, "y": list(yexps)}, c)


def cmd_delta_eval(args):
    field = get_field(args.q)
    yexps = _parse_ints(args.y)
    x = _parse_xvec(field, args.x) if args.x else None
    if x is None:
        v = p_delta_eval(yexps, args.r, field)
    else:
        v = series_eval(x, yexps, args.r, field)
    return _emit(args, "delta.eval", {"x": args.x, "y": list(yexps)}, v)


def cmd_theta_coeff(args):
    field = get_field(args.q)
    n = parse_poly(field, args.n)
    avec = _parse_polyvec(field, args.a)
    yexps = _parse_ints(args.y)
    c = p_theta_coefficient(n, avec, yexps, args.r)
    return _emit(args, "theta.coeff",
                 {"n": args.n, "a": args.a, "y": list(yexps)}, c)


def cmd_theta_eval(args):
    field = get_field(args.q)
    n = parse_poly(field, args.n)
    g = _parse_matrix(field, args.g)
    h1 = theta_evaluator(n, field, args.r, bound=args.witness_bound)
    return _emit(args, "theta.eval", {"n": args.n, "g": args.g}, h1(g))


def cmd_theta_edge(args):
    field = get_field(args.q)
    n = parse_poly(field, args.n)
    g = _parse_matrix(field, args.g)
    v = eval_theta_on_edge(n, g, bound=args.witness_bound)
    return _emit(args, "theta.edge", {"n": args.n, "g": args.g}, v)


def cmd_oracle_pdelta(args):
    field = get_field(args.q)
    g = _parse_matrix(field, args.g) if args.g else \
        mat_from_exps(field, (0,) * args.r)
    v = p_delta_direct(g, args.q, args.r, D=args.deg_bound, prec=args.prec)
    diag = {"deg_bound": args.deg_bound, "prec": args.prec,
            "certificate": "stabilized between consecutive truncation depths"}
    if args.check:
        scale = RatF.one(field) / g[0][0]
        gm = tuple(tuple(x * scale for x in row) for row in g)
        series = eval_on_mirabolic(gm, args.r, field)
        diag["series"] = series
        return _emit(args, "oracle.pdelta", {"g": args.g or "identity"},
                     v, diag, expected=series)
    return _emit(args, "oracle.pdelta", {"g": args.g or "identity"}, v, diag)


def cmd_oracle_ptheta(args):
    field = get_field(args.q)
    n = parse_poly(field, args.n)
    g = _parse_matrix(field, args.g) if args.g else \
        mat_from_exps(field, (0,) * args.r)
    v = p_theta_direct(n, g, args.q, args.r, D=args.deg_bound, prec=args.prec)
    return _emit(args, "oracle.ptheta", {"n": args.n, "g": args.g or "identity"},
                 v, {"deg_bound": args.deg_bound, "prec": args.prec})


def cmd_units_det_sigma(args):
    field = get_field(args.q)
    primes = _parse_polyvec(field, args.primes)
    rep = sigma_det_check(primes, args.s)
    code = _emit(args, "units.det-sigma",
                 {"primes": args.primes, "s": args.s},
                 {"det": rep.det, "magnitude_ok": rep.magnitude_ok,
                  "sign": rep.sign},
                 {"expected_magnitude": rep.expected_magnitude,
                  "empirical_sign": rep.empirical_sign,
                  "stated_sign": rep.stated_sign})
    return EXIT_MISMATCH if not rep.magnitude_ok else code


def cmd_units_root_order(args):
    field = get_field(args.q)
    if args.n is None:
        return _emit(args, "units.root-order", {"series": "delta"},
                     root_order_delta(args.q))
    n = parse_poly(field, args.n)
    rd = root_order_theta(n, args.r)
    return _emit(args, "units.root-order", {"n": args.n},
                 rd.max_root,
                 {"kappa": rd.kappa, "character_order": rd.character_order,
                  "witness_level": rd.witness_level,
                  "witness_aux": rd.witness_aux, "gcd_ok": rd.gcd_ok})


def cmd_cusps_orbits(args):
    field = get_field(args.q)
    n = parse_poly(field, args.n)
    rep = cusp_orbits(n, args.r)
    return _emit(args, "cusps.orbits", {"n": args.n},
                 rep.orbit_count,
                 {"total_states": rep.total,
                  "orbit_sizes": list(rep.orbit_sizes)})


def cmd_cusps_order(args):
    field = get_field(args.q)
    p = parse_poly(field, args.p)
    rep = cuspidal_order(p, args.r)
    expected = None
    if (args.q, args.r, str(p)) == (2, 3, "T"):
        expected = 3
    elif (args.q, args.r) == (3, 2) and int(p.deg) == 3 \
            and str(p) == "T^3+T^2+2":
        expected = 13
    return _emit(args, "cusps.order", {"p": args.p}, rep.order,
                 {"theta_pole_order": rep.theta_pole_order}, expected)


def cmd_verify(args):
    level = "quick" if args.quick else "full"
    reports = run_suite(level=level)
    result = [{"criterion": rep.number, "name": rep.name,
               "passed": rep.passed, "checks": rep.checks,
               "seconds": round(rep.seconds, 2)} for rep in reports]
    failures = [(rep.number, rep.failures[:3]) for rep in reports
                if not rep.passed]
    if args.format == "text":
        for rep in reports:
            mark = "ok " if rep.passed else "FAIL"
            print(f"[{mark}] {rep.number:2d} {rep.name}: "
                  f"{rep.checks} checks in {rep.seconds:.1f}s")
    else:
        _emit(args, "verify.all", {"level": level}, result,
              {"failures": failures})
    return EXIT_MISMATCH if failures else EXIT_OK


# ---------------------------------------------------------------- wiring

def _common(p, r_default=2):
    p.add_argument("--q", type=int, default=2, help="base field size")
    p.add_argument("--r", type=int, default=r_default, help="rank")
    p.add_argument("--prec", type=int, default=DEFAULT_PREC,
                   help="series window width for the lattice-sum oracle")
    p.add_argument("--deg-bound", type=int, default=6,
                   help="lattice truncation depth for the oracle")
    p.add_argument("--witness-bound", type=int, default=None,
                   help="search bound for theta witness vectors")
    p.add_argument("--cache", action="store_true",
                   help="reuse witness/orbit computations within the run")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; all computations are single-threaded")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for any randomized sampling")


def build_parser():
    top = argparse.ArgumentParser(
        prog="hb",
        description="Exact harmonic-cochain computations on the "
                    "Bruhat-Tits building of PGL_r over F_q((1/T)).")
    sub = top.add_subparsers(dest="command", required=True)

    def add(path, fn, r_default=2, configure=None):
        group, _, name = path.partition(" ")
        if group not in groups:
            groups[group] = sub.add_parser(group).add_subparsers(
                dest="subcommand", required=True)
        p = groups[group].add_parser(name)
        _common(p, r_default)
        if configure:
            configure(p)
        p.set_defaults(fn=fn)

    groups = {}
    add("building neighbors", cmd_building_neighbors,
        configure=lambda p: p.add_argument("--g", default=None,
                                           help="vertex rep 'a,b;c,d'"))
    add("building weyl", cmd_building_weyl,
        configure=lambda p: p.add_argument("--k", required=True,
                                           help="dominant type k1,..,kr"))
    add("fourier coeff", cmd_fourier_coeff, configure=lambda p: (
        p.add_argument("--h", choices=("builtin", "oracle"),
                       default="builtin"),
        p.add_argument("--a", required=True, help="polynomial vector"),
        p.add_argument("--y", required=True, help="diagonal exponents")))
    add("eisenstein eval", cmd_eisenstein_eval, configure=lambda p: (
        p.add_argument("--n", required=True, help="diagonal exponents"),
        p.add_argument("--s", required=True, help="evaluation point s0 > 1"),
        p.add_argument("--N", type=int, default=8, help="truncation terms")))
    add("eisenstein check-klf-chain", cmd_eisenstein_klf)
    add("delta coeff", cmd_delta_coeff, configure=lambda p: (
        p.add_argument("--a", required=True),
        p.add_argument("--y", required=True)))
    add("delta eval", cmd_delta_eval, configure=lambda p: (
        p.add_argument("--x", default=None, help="x vector, e.g. '1/T,0'"),
        p.add_argument("--y", required=True)))
    add("theta coeff", cmd_theta_coeff, configure=lambda p: (
        p.add_argument("--n", required=True, help="level polynomial"),
        p.add_argument("--a", required=True),
        p.add_argument("--y", required=True)))
    add("theta eval", cmd_theta_eval, configure=lambda p: (
        p.add_argument("--n", required=True),
        p.add_argument("--g", required=True)))
    add("theta edge", cmd_theta_edge, configure=lambda p: (
        p.add_argument("--n", required=True),
        p.add_argument("--g", required=True)))
    add("oracle pdelta", cmd_oracle_pdelta, configure=lambda p: (
        p.add_argument("--g", default=None),
        p.add_argument("--check", action="store_true",
                       help="compare against the closed-form series")))
    add("oracle ptheta", cmd_oracle_ptheta, configure=lambda p: (
        p.add_argument("--n", required=True),
        p.add_argument("--g", default=None)))
    add("units det-sigma", cmd_units_det_sigma, configure=lambda p: (
        p.add_argument("--primes", required=True,
                       help="comma-separated distinct irreducibles"),
        p.add_argument("--s", type=int, required=True)))
    add("units root-order", cmd_units_root_order,
        configure=lambda p: p.add_argument("--n", default=None,
                                           help="level (omit for Delta)"))
    add("cusps orbits", cmd_cusps_orbits,
        configure=lambda p: p.add_argument("--n", required=True))
    add("cusps order", cmd_cusps_order,
        configure=lambda p: p.add_argument("--p", required=True,
                                           help="irreducible level"))
    add("verify all", cmd_verify,
        configure=lambda p: p.add_argument("--quick", action="store_true"))
    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
