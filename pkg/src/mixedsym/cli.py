"""Command-line surface: symmetry computation by each method, graded
prolongations, tableau rendering, solution-space identities, derived
flags, and the full cross-validation suite.

Exit codes: 0 success, 1 a mathematical assertion failed, 2 bad input.
"""

import argparse
import json
import sys
import time

from .eds import (NonlinearSystem, StabilizationError, TableauSpec,
                  UncoveredCaseError, derived_flag, known_basis,
                  solve_determining)
from .exact import Subspace, ZERO
from .jet import (JetSpace, flat_solution_space, g_function,
                  g_identity_residual, poly_span_subspace)
from .liealg import compare
from .poly import Poly, PolyParseError, parse_poly
from .sternberg import (build_symbol, flag_symbol_prolong,
                        sternberg_prolong, transpose_algebra)
from .tanaka import build_gnla, stab, tanaka_prolong

OK, ASSERT_FAILED, BAD_INPUT = 0, 1, 2


class InputError(ValueError):
    """Invalid parameters or unparsable polynomial input (exit code 2)."""


class AssertionFailed(RuntimeError):
    """A cross-check the command promises did not hold (exit code 1)."""


def _spec(k, l, shift):
    try:
        return TableauSpec(k, l, shift)
    except ValueError as e:
        raise InputError(str(e))


def _report(spec, method, dimension=None, graded_dims=None, basis=None,
            invariants=None, agreements=None, timing=None, **extra):
    rep = {
        "spec": {"k": spec.k, "l": spec.l, "shift": spec.delta},
        "method": method,
        "dimension": dimension,
        "graded_dims": {str(d): n for d, n in sorted((graded_dims or {}).items())},
        "basis": basis or [],
        "invariants": invariants,
        "agreements": agreements or {},
        "timing": timing,
    }
    rep.update(extra)
    return rep


def _emit(rep, fmt, out=None):
    out = out if out is not None else sys.stdout
    if fmt == "json":
        print(json.dumps(rep, indent=2, sort_keys=False), file=out)
        return
    sp = rep.get("spec")
    if sp:
        print("spec: k=%d l=%d shift=%d" % (sp["k"], sp["l"], sp["shift"]),
              file=out)
    print("method: %s" % rep["method"], file=out)
    if rep.get("dimension") is not None:
        print("dimension: %d" % rep["dimension"], file=out)
    if rep.get("graded_dims"):
        print("graded dims: %s"
              % " ".join("%s:%d" % kv for kv in rep["graded_dims"].items()),
              file=out)
    for key, val in rep.items():
        if key in ("spec", "method", "dimension", "graded_dims", "basis",
                   "invariants", "agreements", "timing"):
            continue
        if isinstance(val, str) and "\n" in val:
            print("%s:\n%s" % (key, val), file=out)
        else:
            print("%s: %s" % (key, val), file=out)
    if rep.get("invariants"):
        print("invariants: %s" % json.dumps(rep["invariants"]), file=out)
    for name, val in (rep.get("agreements") or {}).items():
        print("%s: %s" % (name, val), file=out)
    for b in rep.get("basis") or ():
        print("  %s" % b, file=out)
    if rep.get("timing") is not None:
        print("timing: %.3fs" % rep["timing"], file=out)


def _span_of_fields(fields):
    """Fields as vectors over a shared (component, monomial) index."""
    keys = sorted({(c, m) for f in fields
                   for c, p in f.coeffs.items() for m in p.terms})
    index = {key: i for i, key in enumerate(keys)}
    vecs = []
    for f in fields:
        v = [ZERO] * len(keys)
        for c, p in f.coeffs.items():
            for m, coef in p.terms.items():
                v[index[(c, m)]] = coef
        vecs.append(v)
    return Subspace.from_vectors(len(keys), vecs), index


def _same_span(fields_a, fields_b):
    if not fields_a and not fields_b:
        return True
    span, index = _span_of_fields(list(fields_a) + list(fields_b))
    sub_a, _ = _span_of_fields(fields_a)
    sub_b, _ = _span_of_fields(fields_b)
    # both were rebuilt on the shared index, so compare there
    def on_shared(fields):
        vecs = []
        for f in fields:
            v = [ZERO] * len(index)
            for c, p in f.coeffs.items():
                for m, coef in p.terms.items():
                    v[index[(c, m)]] = coef
            vecs.append(v)
        return Subspace.from_vectors(len(index), vecs)
    a, b = on_shared(fields_a), on_shared(fields_b)
    return a.dim == b.dim and all(b.contains(row) for row in a.basis.entries)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_symmetries(args):
    spec = _spec(args.k, args.l, args.shift)
    t0 = time.perf_counter()
    agreements = {}
    if args.method in ("determining", "both"):
        sol = solve_determining(spec, degree_bound=args.degree_bound)
        alg = sol.to_lie_algebra()
        rep = _report(spec, "determining", sol.dim, sol.graded_dims(),
                      [str(f) for f in sol.fields],
                      alg.invariants().as_dict())
    if args.method in ("known", "both"):
        try:
            fields = known_basis(spec)
        except UncoveredCaseError as e:
            raise InputError(str(e))
        if args.method == "known":
            rep = _report(spec, "known-basis", len(fields),
                          basis=[str(f) for f in fields])
        else:
            agreements["dimension_equal"] = (sol.dim == len(fields))
            agreements["span_equal"] = _same_span(sol.fields, fields)
            rep["method"] = "both"
            rep["agreements"] = agreements
    rep["timing"] = time.perf_counter() - t0
    _emit(rep, args.format)
    if agreements and not all(agreements.values()):
        raise AssertionFailed("determining/known-basis span disagreement")
    return OK


def cmd_prolong(args):
    spec = _spec(args.k, args.l, args.shift)
    t0 = time.perf_counter()
    if args.engine == "tanaka":
        if args.transpose:
            raise InputError("--transpose applies to the sternberg engine")
        m = build_gnla(spec)
        g = tanaka_prolong(m, stab(m, [m.d_line()]))
        alg = g.algebra()
        rep = _report(spec, "tanaka", g.dim, g.layer_dims(),
                      invariants=alg.invariants().as_dict())
    else:
        a = flag_symbol_prolong(build_symbol(spec))
        if args.transpose:
            a = transpose_algebra(a)
        try:
            p = sternberg_prolong(a)
        except StabilizationError as e:
            raise AssertionFailed(str(e))
        alg = p.to_lie_algebra()
        rep = _report(spec, "sternberg", p.dim(), p.graded_dims(),
                      [str(f) for _, _, f in p.fields],
                      alg.invariants().as_dict(),
                      layer_dims={str(d): n
                                  for d, n in sorted(p.layer_dims().items())})
    rep["timing"] = time.perf_counter() - t0
    _emit(rep, args.format)
    return OK


def _algebra_of(spec):
    return solve_determining(spec).to_lie_algebra()


def cmd_compare(args):
    spec = _spec(args.k, args.l, args.shift)
    t0 = time.perf_counter()
    sol = solve_determining(spec)
    m = build_gnla(spec)
    tan = tanaka_prolong(m, stab(m, [m.d_line()]))
    stern = sternberg_prolong(flag_symbol_prolong(build_symbol(spec)))
    dims = {"determining": sol.dim, "tanaka": tan.dim,
            "sternberg": stern.dim()}
    agreements = {"dimensions": dims,
                  "dimension_agreement": len(set(dims.values())) == 1}
    if args.against_shift is not None:
        other = _spec(args.k, args.l, args.against_shift)
        verdict, details = compare(sol.to_lie_algebra(), _algebra_of(other))
        agreements["against"] = {"k": other.k, "l": other.l,
                                 "shift": other.delta}
        agreements["verdict"] = verdict
        agreements["details"] = details
    rep = _report(spec, "compare", sol.dim, sol.graded_dims(),
                  agreements=agreements, timing=time.perf_counter() - t0)
    _emit(rep, args.format)
    if not agreements["dimension_agreement"]:
        raise AssertionFailed("method dimensions disagree: %r" % dims)
    return OK


def cmd_tableau(args):
    spec = _spec(args.k, args.l, args.shift)
    chain = ["J^{%d,%d}" % (spec.k, spec.l)]
    chain += ["J^{%d,%d}" % ab for ab in spec.projection_chain()]
    rep = _report(spec, "tableau",
                  tableau=spec.ascii_tableau(),
                  projection_chain="\u2192".join(chain))
    _emit(rep, args.format)
    return OK


def _g_product_span(p, q, r):
    """x^i * products of j factors g_{r-q,q+2}^(s), i + (q+1)j <= p,
    as vectors on the chart of flat_solution_space(p, q, r)."""
    sub, monos, space = flat_solution_space(p, q, r)
    tbl = space.table
    gs = [g_function(r - q, q + 2, s).embed(tbl) for s in range(r - q + 1)]
    prods = [[Poly.const(tbl, 1)]]           # products of j factors
    while (q + 1) * len(prods) <= p:
        prods.append([gp * g for gp in prods[-1] for g in gs])
    polys = []
    x = Poly.var(tbl, "x")
    for j, batch in enumerate(prods):
        xi = Poly.const(tbl, 1)
        for i in range(p - (q + 1) * j + 1):
            polys.extend(xi * f for f in batch)
            xi = xi * x
    return sub, poly_span_subspace(polys, monos)


def cmd_lemma(args):
    t0 = time.perf_counter()
    checks = {}
    if args.part == "a":
        bound = max(args.r or 3, 1)
        for i in range(1, bound + 1):
            for j in range(1, bound + 1):
                checks["i=%d,j=%d" % (i, j)] = \
                    g_identity_residual(i, j).is_zero()
    elif args.part == "b":
        if args.r is None:
            raise InputError("part b needs --r")
        sub, span = _g_product_span(1, 0, args.r)
        checks["dim == r+3"] = (sub.dim == args.r + 3)
        checks["spanned by 1, x, g^(s)"] = _subspaces_equal(sub, span)
    else:
        if args.r is None or args.p is None:
            raise InputError("parts c and d need --p and --r")
        q = 0 if args.part == "c" else (args.q if args.q is not None else 1)
        sub, span = _g_product_span(args.p, q, args.r)
        checks["solution dim"] = sub.dim
        checks["product span matches"] = _subspaces_equal(sub, span)
    rep = {"spec": None, "method": "lemma-%s" % args.part, "dimension": None,
           "graded_dims": {}, "basis": [], "invariants": None,
           "agreements": checks, "timing": time.perf_counter() - t0}
    _emit(rep, args.format)
    if not all(v is not False for v in checks.values()):
        raise AssertionFailed("solution-space identity failed: %r" % checks)
    return OK


def _subspaces_equal(a, b):
    return (a.dim == b.dim
            and all(a.contains(row) for row in b.basis.entries))


def cmd_flags(args):
    if not (2 <= args.k <= args.l):
        raise InputError("orders must satisfy 2 <= k <= l")
    space = JetSpace(args.k - 1, args.l - 1)
    try:
        f = parse_poly(args.f, space.table)
        g = parse_poly(args.g, space.table)
    except PolyParseError as e:
        raise InputError(str(e))
    sysm = NonlinearSystem(args.k, args.l, f=f, g=g)
    flag = derived_flag(sysm)
    ranks = [rank for rank, _ in flag]
    rep = {"spec": {"k": args.k, "l": args.l, "f": str(f), "g": str(g)},
           "method": "derived-flag", "dimension": None, "graded_dims": {},
           "basis": [], "invariants": None,
           "agreements": {}, "ranks": ranks, "timing": None}
    if args.format == "json":
        print(json.dumps(rep, indent=2))
    else:
        print("ranks: %s" % ",".join(str(r) for r in ranks))
    return OK


def _grid():
    specs = []
    for k in range(2, 5):
        for l in range(k, 10 - k):
            for d in range(-k + 2, l - 1):
                specs.append(TableauSpec(k, l, d))
    return specs


def cmd_suite(args):
    rows = []
    failed = False
    for spec in _grid():
        t0 = time.perf_counter()
        sol = solve_determining(spec)
        m = build_gnla(spec)
        tan = tanaka_prolong(m, stab(m, [m.d_line()]))
        stern = sternberg_prolong(flag_symbol_prolong(build_symbol(spec)))
        try:
            kn = len(known_basis(spec))
        except UncoveredCaseError:
            kn = None
        dims = [sol.dim, tan.dim, stern.dim()] + ([] if kn is None else [kn])
        ok = len(set(dims)) == 1
        failed = failed or not ok
        rows.append({"k": spec.k, "l": spec.l, "shift": spec.delta,
                     "determining": sol.dim, "tanaka": tan.dim,
                     "sternberg": stern.dim(), "known": kn,
                     "pass": ok, "timing": time.perf_counter() - t0})
        if args.format == "text":
            print("(%d,%d,%+d)  det=%3d tanaka=%3d sternberg=%3d known=%s  %s"
                  % (spec.k, spec.l, spec.delta, sol.dim, tan.dim,
                     stern.dim(), "%3d" % kn if kn is not None else "  -",
                     "PASS" if ok else "FAIL"), flush=True)
    if args.format == "json":
        print(json.dumps({"cases": rows,
                          "pass": not failed}, indent=2))
    else:
        print("suite: %s (%d cases)"
              % ("FAIL" if failed else "PASS", len(rows)))
    if failed:
        raise AssertionFailed("method dimensions disagree on the grid")
    return OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_spec_args(p, shift=True):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    if shift:
        p.add_argument("--shift", type=int, required=True)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="mixedsym",
        description="symmetry algebras of pairs of trivial scalar equations "
                    "of mixed order, by three independent methods")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symmetries", help="solve the determining equations "
                       "and/or produce the closed-form basis")
    _add_spec_args(p)
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--method", choices=("determining", "known", "both"),
                   default="determining")
    p.set_defaults(func=cmd_symmetries)

    p = sub.add_parser("prolong", help="graded prolongation of the symbol")
    _add_spec_args(p)
    p.add_argument("--engine", choices=("tanaka", "sternberg"),
                   default="tanaka")
    p.add_argument("--transpose", action="store_true",
                   help="prolong the transposed matrix algebra instead")
    p.set_defaults(func=cmd_prolong)

    p = sub.add_parser("compare", help="cross-check all methods; optionally "
                       "compare invariants against another shift")
    _add_spec_args(p)
    p.add_argument("--against-shift", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("tableau", help="render the skew tableau and its "
                       "projection chain")
    _add_spec_args(p)
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("lemma", help="verify the flat solution-space "
                       "identities (parts a-d)")
    p.add_argument("--part", choices=("a", "b", "c", "d"), required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("flags", help="derived flag of a nonlinear system "
                       "y^(k)=f, z^(l)=g")
    _add_spec_args(p, shift=False)
    p.add_argument("--f", default="0")
    p.add_argument("--g", default="0")
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("suite", help="run the full cross-validation grid "
                       "(all shifts with k+l <= 9)")
    p.set_defaults(func=cmd_suite)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return BAD_INPUT
    except AssertionFailed as e:
        print("assertion failed: %s" % e, file=sys.stderr)
        return ASSERT_FAILED


if __name__ == "__main__":
    sys.exit(main())
