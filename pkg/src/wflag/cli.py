"""Command-line front end: wflag {hilbert,weights,strata,equations,verify,search,report}.

Exit codes: 0 success, 1 usage or configuration error, 2 mathematical
precondition failure, 3 resource bound hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time

from . import __version__
from .equations import (EquationError, ResourceLimit, graded_hilbert_function,
                        has_equations, pfaffians_gr26, restrict_to_stratum,
                        coefficient_rank, skew_matrix_variables, weighted_quadrics)
from .lattice import (LatticeError, build_root_system, check_denominator_identity,
                      parse_weight, variety_dimension, weight_system)
from .search import (Limits, SearchError, Target, build_candidate, candidate_report,
                     enumerate_candidates, format_report, stratum_evidence)
from .series import (PositivityError, canonical_degree, closed_form_check, expand,
                     hilbert_series, weight_notation)
from .wps import singular_strata, subvariety_wellformed_report

log = logging.getLogger("wflag")

EXIT_OK, EXIT_CONFIG, EXIT_MATH, EXIT_LIMIT = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


class VerifyFailure(ArithmeticError):
    pass


# --------------------------------------------------------------------------- config

def read_config(path):
    """Plain key=value lines; '#' starts a comment.  Keys use flag spelling
    with dashes or underscores."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc))
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("%s:%d: expected key=value" % (path, n))
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _ints(text, what="list"):
    try:
        return tuple(int(c) for c in str(text).replace(" ", "").split(",") if c != "")
    except ValueError:
        raise ConfigError("cannot parse %s %r as comma-separated integers" % (what, text))


def _range(text):
    """'a:b' (inclusive), 'a' or 'a,b,c'."""
    text = str(text).replace(" ", "")
    if ":" in text:
        lo, hi = text.split(":", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ConfigError("bad range %r" % text)
    return list(_ints(text, "range"))


def _box(text, rank):
    """'lo:hi' for every coordinate, or one 'lo:hi' per coordinate separated by ';'."""
    parts = str(text).replace(" ", "").split(";")
    if len(parts) == 1:
        parts = parts * rank
    if len(parts) != rank:
        raise ConfigError("box %r has %d coordinates, expected %d" % (text, len(parts), rank))
    box = []
    for p in parts:
        vals = _range(p)
        if not vals:
            return []
        box.append((min(vals), max(vals)))
    return box


def _root_system(args):
    if not args.group:
        raise ConfigError("--group is required")
    try:
        return build_root_system(args.group.upper())
    except LatticeError as exc:
        raise ConfigError(str(exc))


def _lambda(rs, args):
    text = args.lam
    if text is None:
        text = "omega2" if rs.group_type == "G2" else "e1+e2"
    try:
        lam = parse_weight(rs, text)
    except LatticeError as exc:
        raise ConfigError(str(exc))
    if not rs.is_dominant(lam):
        raise ConfigError("lambda %s is not dominant for %s" % (text, rs.group_type))
    return lam


def _mu(rs, args):
    if args.mu is None:
        return (0,) * rs.rank
    mu = _ints(args.mu, "mu")
    if len(mu) != rs.rank:
        raise ConfigError("mu needs %d coordinates for %s" % (rs.rank, rs.group_type))
    return mu


def _u(args):
    if args.u is None:
        return 1
    try:
        return int(args.u)
    except ValueError:
        raise ConfigError("u must be an integer, got %r" % args.u)


def _positive(args, name):
    v = getattr(args, name, None)
    if v is None:
        return None
    try:
        v = int(v)
    except ValueError:
        raise ConfigError("%s must be an integer" % name)
    if v <= 0:
        raise ConfigError("%s must be positive" % name)
    return v


def _threads(args):
    env = os.environ.get("WFLAG_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError("WFLAG_THREADS must be an integer")
    else:
        n = int(args.threads or 1)
    if n < 1:
        raise ConfigError("thread count must be positive")
    return n


def emit(args, doc, text):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


# --------------------------------------------------------------------------- commands

def cmd_hilbert(args):
    rs = _root_system(args)
    lam, mu, u = _lambda(rs, args), _mu(rs, args), _u(args)
    hs = hilbert_series(rs, lam, mu, u)
    order = _positive(args, "order") or 10
    coeffs = expand(hs, order)
    doc = {"group": rs.group_type, "lambda": list(lam), "mu": list(mu), "u": u,
           "weights": weight_notation(hs.weights), "series": hs.to_json(),
           "numerator_text": hs.numerator.format(head=6, tail=1),
           "canonical_degree": canonical_degree(hs), "gorenstein_symmetric": hs.gorenstein,
           "coefficients": [str(c) for c in coeffs]}
    text = "\n".join([
        "%s  lambda=%s  mu=%s  u=%d  dim=%d" % (rs.group_type, lam, mu, u, hs.variety_dim),
        "weights    P^%d[%s]" % (len(hs.weights) - 1, doc["weights"]),
        "numerator  %s" % doc["numerator_text"],
        "K          O(%d)" % doc["canonical_degree"],
        "symmetric  %s" % ("yes" if hs.gorenstein else "no"),
        "h0(n), n<=%d  %s" % (order, ",".join(doc["coefficients"])),
    ])
    emit(args, doc, text)
    return EXIT_OK


def cmd_weights(args):
    rs = _root_system(args)
    lam = _lambda(rs, args)
    ws = weight_system(rs, lam)
    doc = {"group": rs.group_type, "lambda": list(lam), "dimension": ws.total_dim,
           "variety_dimension": variety_dimension(rs, lam),
           "weights": [[list(w), m] for w, m in ws.entries]}
    lines = ["%s  lambda=%s  dim V=%d  dim G/P=%d" % (rs.group_type, lam, ws.total_dim,
                                                     doc["variety_dimension"])]
    if args.mu is not None or args.u is not None:
        from .series import embedding_weights
        mu, u = _mu(rs, args), _u(args)
        ew = embedding_weights(rs, lam, mu, u)
        doc["embedding_weights"] = weight_notation(ew.weights)
        lines.append("embedding  P^%d[%s]" % (len(ew.weights) - 1, doc["embedding_weights"]))
    lines += ["  %s  x%d" % (w, m) for w, m in ws.entries]
    emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _weights_arg(args):
    if args.weights:
        ws = _ints(args.weights, "weights")
        if not ws or min(ws) < 1:
            raise ConfigError("weights must be positive integers")
        return ws
    rs = _root_system(args)
    return hilbert_series(rs, _lambda(rs, args), _mu(rs, args), _u(args)).weights


def cmd_strata(args):
    weights = _weights_arg(args)
    strata = singular_strata(weights)
    codim = args.codim
    doc = {"weights": weight_notation(weights), "strata": [s.to_json() for s in strata]}
    lines = ["P^%d[%s]" % (len(weights) - 1, doc["weights"])]
    lines += ["  r=%d  dim %d  %s  variables %s" % (s.r, s.dimension, s.quotient_type,
                                                   ",".join("x%d" % (i + 1) for i in s.variable_indices))
              for s in strata]
    if not strata:
        lines.append("  smooth ambient strata")
    if codim is not None:
        rep = subvariety_wellformed_report(weights, int(codim), strata)
        doc["wellformed"] = {"ambient_wellformed": rep["ambient_wellformed"], "codim": rep["codim"],
                             "flags": [f.__dict__ for f in rep["flags"]]}
        lines.append("ambient well-formed: %s" % rep["ambient_wellformed"])
        lines += ["  flag r=%d: %s" % (f.r, f.note) for f in rep["flags"]]
    emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_equations(args):
    rs = _root_system(args)
    lam, mu, u = _lambda(rs, args), _mu(rs, args), _u(args)
    if not has_equations(rs.group_type, lam):
        raise ConfigError("equations are available for G2 omega2 and GL6 e1+e2 only")
    hilbert_series(rs, lam, mu, u)  # positivity check
    qs = weighted_quadrics(rs.group_type, lam, mu, u)
    doc = {"quadrics": qs.to_json(), "degrees": qs.degrees(), "rank": coefficient_rank(qs)}
    lines = ["%d quadrics, rank %d, variable weights %s" % (len(qs), doc["rank"],
                                                           ",".join(map(str, qs.variable_weights)))]
    if args.restrict:
        res, alive = restrict_to_stratum(qs, int(args.restrict))
        doc["restriction"] = {"r": int(args.restrict), "alive": [qs.names[i] for i in alive],
                              "polynomials": [p.format(list(qs.names)) for p in res]}
        lines.append("restricted to r=%s (alive %s):" % (args.restrict, ",".join(doc["restriction"]["alive"])))
        lines += ["  " + p for p in doc["restriction"]["polynomials"]] or ["  (no residual equations)"]
    elif args.format != "json":
        lines += ["  [%d] deg %d: %s" % (k, p.degree, p.format(list(qs.names)))
                  for k, p in enumerate(qs, 1)]
    if args.oracle is not None:
        n = int(args.oracle)
        oracle = graded_hilbert_function(qs, n, args.max_monomials or 100000)
        series = expand(hilbert_series(rs, lam, mu, u), n)
        doc["oracle"] = oracle
        doc["series"] = series
        lines.append("oracle  %s" % ",".join(map(str, oracle)))
        lines.append("series  %s" % ",".join(map(str, series)))
        if oracle != series:
            emit(args, doc, "\n".join(lines))
            raise VerifyFailure("oracle and series disagree")
    emit(args, doc, "\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------- verify

def _random_mu(rng, rank, bound=4):
    return tuple(rng.randint(-bound, bound) for _ in range(rank))


def suite_denominator(args, rng):
    groups = [args.group.upper()] if args.group else ["G2", "GL6"]
    trials = args.trials or 20
    for g in groups:
        rs = build_root_system(g)
        for _ in range(trials):
            mu = _random_mu(rng, rs.rank)
            if not check_denominator_identity(rs, mu):
                raise VerifyFailure("denominator identity fails for %s at mu=%s" % (g, mu))
    return "%d trials for %s" % (trials, ",".join(groups))


def suite_closedform(args, rng):
    cases = [("G2", (2, 1)), ("G2", (3, 2)), ("GL6", (1, 1, 0, 0, 0, 0))]
    trials = args.trials or 10
    for g, lam in cases:
        rs = build_root_system(g)
        done = 0
        while done < trials:
            mu = _random_mu(rng, rs.rank, 2)
            u = rng.randint(1, 12)
            try:
                ok = closed_form_check(rs, lam, mu, u)
            except PositivityError:
                continue
            if not ok:
                raise VerifyFailure("closed form differs for %s %s at mu=%s u=%d" % (g, lam, mu, u))
            done += 1
    return "%d admissible (mu,u) for each of %d cases" % (trials, len(cases))


EXAMPLE_32 = ((3, 2), (2, -3), 4)


def suite_appendix_a(args, rng):
    rs = build_root_system("G2")
    lam, mu, u = EXAMPLE_32
    qs = weighted_quadrics("G2", lam, mu, u)
    if len(qs) != 28 or coefficient_rank(qs) != 28:
        raise VerifyFailure("G2 quadrics are not 28 independent polynomials")
    bad = [k for k, p in enumerate(qs, 1) if not p.is_homogeneous()]
    if bad:
        raise VerifyFailure("quadrics %s are not homogeneous" % bad)
    n = args.degree or 8
    oracle = graded_hilbert_function(qs, n, args.max_monomials or 100000)
    series = expand(hilbert_series(rs, lam, mu, u), n)
    if oracle != series:
        raise VerifyFailure("oracle %s differs from series %s" % (oracle, series))
    return "28/28 homogeneous, rank 28, oracle match to degree %d" % n


def suite_pfaffian(args, rng):
    qs = pfaffians_gr26()
    var = skew_matrix_variables(6)
    trials = args.trials or 100
    for _ in range(trials):
        a = [rng.randint(-9, 9) for _ in range(6)]
        b = [rng.randint(-9, 9) for _ in range(6)]
        point = [0] * 15
        for (i, j), k in var.items():
            point[k] = a[i] * b[j] - a[j] * b[i]
        for p in qs:
            if p.evaluate(point) != 0:
                raise VerifyFailure("Pfaffian does not vanish at rank-2 matrix from %s, %s" % (a, b))
    return "%d random rank-2 matrices" % trials


def suite_oracle(args, rng):
    out = []
    for g, lam, n in (("G2", (3, 2), 4), ("GL6", (1, 1, 0, 0, 0, 0), 3)):
        rs = build_root_system(g)
        mu = (0,) * rs.rank
        qs = weighted_quadrics(g, lam, mu, 1)
        oracle = graded_hilbert_function(qs, n, args.max_monomials or 100000)
        series = expand(hilbert_series(rs, lam, mu, 1), n)
        if oracle != series:
            raise VerifyFailure("%s: oracle %s differs from series %s" % (g, oracle, series))
        out.append("%s %s" % (g, ",".join(map(str, oracle))))
    return "; ".join(out)


SUITES = {"denominator": suite_denominator, "closedform": suite_closedform,
          "appendixA": suite_appendix_a, "pfaffian": suite_pfaffian, "oracle": suite_oracle}


def cmd_verify(args):
    names = list(SUITES) if args.suite in (None, "all") else args.suite.split(",")
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError("unknown suite(s) %s; choose from %s" % (unknown, ", ".join(SUITES)))
    rng = random.Random(args.seed)
    status, results = EXIT_OK, []
    for name in names:
        t0 = time.perf_counter()
        try:
            detail = SUITES[name](args, rng)
            ok = True
        except VerifyFailure as exc:
            detail, ok = str(exc), False
            status = EXIT_MATH
        results.append({"suite": name, "pass": ok, "detail": detail,
                        "seconds": round(time.perf_counter() - t0, 3)})
    emit(args, {"results": results},
         "\n".join("%s %-12s %s (%.2fs)" % ("PASS" if r["pass"] else "FAIL", r["suite"],
                                             r["detail"], r["seconds"]) for r in results))
    return status


# --------------------------------------------------------------------------- search / report

def cmd_search(args):
    rs = _root_system(args)
    lam = _lambda(rs, args)
    try:
        target = Target.parse(args.target or "cy3")
    except (SearchError, ValueError) as exc:
        raise ConfigError(str(exc))
    box = _box(args.mu_box or "-1:1", rs.rank)
    u_values = _range(args.u_range or "1:3")
    limits = Limits(max_cones=int(args.max_cones if args.max_cones is not None else 2),
                    max_candidates=_positive(args, "max_candidates") or 10000,
                    fano_screen=not args.no_screen)
    if not box or not u_values:
        emit(args, {"summary": {"cells": 0, "candidates": 0, "truncated": False}},
             "0 cells, 0 candidates")
        return EXIT_OK
    result = enumerate_candidates(rs, lam, box, u_values, target, limits, workers=_threads(args))
    docs = [candidate_report(c) for c in result.candidates]
    summary = {"cells": result.cells, "admissible_cells": result.admissible,
               "candidates": len(docs), "truncated": result.truncated}
    if args.output:
        with open(args.output, "w") as fh:
            for d in docs:
                fh.write(json.dumps(d, sort_keys=True) + "\n")
    if args.format == "json":
        for d in docs:
            print(json.dumps(d, sort_keys=True))
        print(json.dumps({"summary": summary}, sort_keys=True))
    else:
        for d in docs:
            print(format_report(d))
            print()
        print("%d cells (%d admissible), %d candidates%s" % (
            result.cells, result.admissible, len(docs), ", TRUNCATED" if result.truncated else ""))
    return EXIT_LIMIT if result.truncated else EXIT_OK


def cmd_report(args):
    rs = _root_system(args)
    lam, mu, u = _lambda(rs, args), _mu(rs, args), _u(args)
    cones = int(args.cones or 0)
    sections = _ints(args.sections or "", "sections")
    amb = hilbert_series(rs, lam, mu, u)
    if variety_dimension(rs, lam) + cones - len(sections) != 3:
        raise ConfigError("dimension %d + %d cones - %d sections is not 3"
                          % (variety_dimension(rs, lam), cones, len(sections)))
    try:
        c = build_candidate(rs, lam, mu, u, cones, sections, amb)
    except ValueError as exc:
        raise ConfigError(str(exc))
    if c is None:
        raise ArithmeticError("degree of the section is not defined")
    c.evidence = stratum_evidence(c)
    doc = candidate_report(c, _positive(args, "order") or 10)
    emit(args, doc, format_report(doc))
    return EXIT_OK


COMMANDS = {"hilbert": cmd_hilbert, "weights": cmd_weights, "strata": cmd_strata,
            "equations": cmd_equations, "verify": cmd_verify, "search": cmd_search,
            "report": cmd_report}


# --------------------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; command-line flags take precedence")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--json", dest="format", action="store_const", const="json")
    common.add_argument("-v", "--verbose", action="count")
    common.add_argument("--group", help="G2 or GL3..GL8")
    common.add_argument("--lambda", dest="lam", help="omega2, e1+e2, or coordinates")
    common.add_argument("--mu", help="comma-separated coweight")
    common.add_argument("--u", help="integer shift")
    common.add_argument("--max-monomials", type=int)

    p = argparse.ArgumentParser(prog="wflag", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version="wflag " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", parents=[common], help="Hilbert series and canonical class")
    h.add_argument("--order", help="number of coefficients to print")
    sub.add_parser("weights", parents=[common], help="weight system and embedding weights")
    s = sub.add_parser("strata", parents=[common], help="singular strata of a weighted P")
    s.add_argument("--weights", help="explicit weight list (otherwise from group data)")
    s.add_argument("--codim", type=int, help="codimension of a subvariety to flag strata for")
    e = sub.add_parser("equations", parents=[common], help="weighted quadrics and checks")
    e.add_argument("--restrict", help="set variables of weight not divisible by r to zero")
    e.add_argument("--oracle", help="compare the Hilbert function with the series up to this degree")
    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--suite", help="comma list of %s, or all" % ", ".join(SUITES))
    v.add_argument("--trials", type=int)
    v.add_argument("--degree", type=int, help="oracle degree for appendixA")
    v.add_argument("--seed", type=int, default=0)
    q = sub.add_parser("search", parents=[common], help="candidate threefold search")
    q.add_argument("--target", help="cy3 or fano[:index]")
    q.add_argument("--mu-box", help="lo:hi, or lo:hi;lo:hi;... per coordinate")
    q.add_argument("--u-range", help="a:b or comma list")
    q.add_argument("--max-cones")
    q.add_argument("--max-candidates")
    q.add_argument("--no-screen", action="store_true", default=None,
                   help="keep Fano candidates that fail the stratum evidence screen")
    q.add_argument("--threads", type=int)
    q.add_argument("--output", help="also write JSON lines here")
    r = sub.add_parser("report", parents=[common], help="report for one candidate")
    r.add_argument("--sections", help="comma list of section degrees")
    r.add_argument("--cones")
    r.add_argument("--order", help="h0 coefficients to print")
    return p


def _merge_config(args):
    if not args.config:
        return args
    conf = read_config(args.config)
    for key, value in conf.items():
        key = {"lambda": "lam"}.get(key, key)
        if not hasattr(args, key):
            raise ConfigError("unknown config key %r" % key)
        if getattr(args, key) is None:
            if key in ("trials", "degree", "seed", "codim", "threads", "max_monomials"):
                value = int(value)
            elif key == "no_screen":
                value = value.lower() in ("1", "true", "yes")
            setattr(args, key, value)
    return args


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        args = _merge_config(args)
        args.format = args.format or "text"
        level = logging.WARNING - 10 * (int(args.verbose or 0))
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except (LatticeError, SearchError, EquationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimit as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_LIMIT
    except PositivityError as exc:
        print("positivity violated: %s" % exc, file=sys.stderr)
        return EXIT_MATH
    except ArithmeticError as exc:
        print("failed: %s" % exc, file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
