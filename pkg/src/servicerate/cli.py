"""Command-line front end.

Exit codes: 0 success / feasible, 1 infeasible or not contained, 2 usage or
malformed input, 3 resource limit, 4 invariant or hypothesis violation.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import bounds as bd
from .errors import (
    InvalidArgumentError,
    InvariantViolation,
    PreconditionError,
    ResourceLimitError,
    ServiceRateError,
    UnboundedPolytopeError,
)
from .gfmatrix import GenMatrix, is_systematic
from .io import dumps, load_matrix, point_strs, polytope_dict, set_list, vertices_csv
from .lincode import dual_code, extend, min_distance, object_profiles
from .ratpoly import Polytope, frac_str
from .recovery import RecoverySystem, full_system, minimal_system
from .region import exact_region, membership, section

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(InvalidArgumentError):
    pass


def parse_fraction(tok: str) -> Fraction:
    tok = tok.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", tok):
        raise UsageError(f"not a rational number: {tok!r} (use integers or num/den)")
    v = Fraction(tok)
    return v


def parse_rates(text: str, k: int) -> tuple[Fraction, ...]:
    vals = tuple(parse_fraction(t) for t in text.split(","))
    if len(vals) != k:
        raise UsageError(f"--rates needs {k} comma-separated values, got {len(vals)}")
    if any(v < 0 for v in vals):
        raise UsageError("rates must be nonnegative")
    return vals


def parse_section(text: str | None, k: int) -> dict[int, Fraction]:
    """``l2=0,l3=1/2`` to a 0-based coordinate map."""
    if not text:
        return {}
    out: dict[int, Fraction] = {}
    for part in text.split(","):
        m = re.fullmatch(r"\s*(?:l|lambda|λ|x)(\d+)\s*=\s*(\S+)\s*", part)
        if not m:
            raise UsageError(f"bad section term {part!r}; expected e.g. l2=0")
        j = int(m.group(1)) - 1
        if not 0 <= j < k:
            raise UsageError(f"variable l{j + 1} out of range for k={k}")
        if j in out:
            raise UsageError(f"variable l{j + 1} fixed twice")
        v = parse_fraction(m.group(2))
        if v < 0:
            raise UsageError(f"rates are nonnegative; l{j + 1}={v} is not")
        out[j] = v
    return out


def _system(G: GenMatrix, use_all: bool) -> RecoverySystem:
    return full_system(G) if use_all else minimal_system(G)


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, set_list(mask))) + "}"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _free_names(k: int, fixed: dict[int, Fraction]) -> list[str]:
    return [f"l{j + 1}" for j in range(k) if j not in fixed]


# -- commands ----------------------------------------------------------------

def cmd_info(args) -> int:
    G = load_matrix(args.matrix)
    f = G.field
    d, dp = min_distance(G), dual_code(G).d_perp
    objects = []
    for p in object_profiles(G):
        row = p.as_dict()
        row["extended_d_perp"] = dual_code(extend(G, p.object)).d_perp
        objects.append(row)
    report = {
        "q": f.q,
        "p": f.p,
        "m": f.m,
        "modulus": f.modulus,
        "k": G.k,
        "n": G.n,
        "systematic": is_systematic(G),
        "d": d,
        "d_perp": dp,
        "mds": d == G.n - G.k + 1,
        "objects": objects,
    }
    _emit(dumps(report), args.output)
    return EXIT_OK


def cmd_recovery(args) -> int:
    G = load_matrix(args.matrix)
    sys_ = _system(G, args.all)
    if args.json:
        out = {
            "kind": sys_.kind,
            "families": [
                {"object": i + 1, "sets": [set_list(R) for R in fam]} for i, fam in enumerate(sys_.families)
            ],
        }
        _emit(dumps(out), args.output)
    else:
        lines = [f"object {i + 1}: " + " ".join(_fmt_set(R) for R in fam) for i, fam in enumerate(sys_.families)]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    G = load_matrix(args.matrix)
    lam = parse_rates(args.rates, G.k)
    mu = parse_fraction(args.mu)
    if mu <= 0:
        raise UsageError(f"--mu must be positive, got {frac_str(mu)}")
    if mu < 1:
        print(f"warning: mu={frac_str(mu)} < 1; servers are usually normalized to capacity >= 1", file=sys.stderr)
    sys_ = _system(G, args.all)
    alloc = membership(sys_, lam, mu)
    if alloc is None:
        if args.json:
            _emit(dumps({"feasible": False, "rates": point_strs(lam), "mu": frac_str(mu)}), args.output)
        else:
            _emit("INFEASIBLE\n", args.output)
        return EXIT_NO
    bad = alloc.violations(lam)
    if bad:
        raise InvariantViolation("allocation failed its recheck: " + "; ".join(bad))
    table = [(i, R, alloc.weights.get((i, R), Fraction(0))) for i, R in sys_.variables()]
    loads = alloc.server_loads()
    if args.json:
        out = {
            "feasible": True,
            "rates": point_strs(lam),
            "mu": frac_str(mu),
            "allocation": [{"object": i + 1, "set": set_list(R), "rate": frac_str(w)} for i, R, w in table],
            "loads": point_strs(loads),
        }
        _emit(dumps(out), args.output)
        return EXIT_OK
    lines = [f"FEASIBLE rates=({', '.join(point_strs(lam))}) mu={frac_str(mu)}", "object\tset\trate"]
    lines += [f"{i + 1}\t{_fmt_set(R)}\t{frac_str(w)}" for i, R, w in table]
    lines.append("server\tload")
    lines += [f"{j + 1}\t{frac_str(v)}" for j, v in enumerate(loads)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _region(G: GenMatrix, args) -> Polytope:
    try:
        return exact_region(_system(G, args.all), method=args.method)
    except ResourceLimitError as e:
        raise ResourceLimitError(f"{e}; try --method cuts") from None


def cmd_region(args) -> int:
    G = load_matrix(args.matrix)
    fixed = parse_section(args.section, G.k)
    P = _region(G, args)
    if fixed:
        P = section(P, fixed)
    if args.format == "csv":
        if P.vertices is None:
            raise UsageError(f"CSV needs a vertex list; fix {P.dim - 3} or more variables with --section")
        _emit(vertices_csv(P), args.output)
    else:
        out = {"variables": _free_names(G.k, fixed), **polytope_dict(P)}
        _emit(dumps(out), args.output)
    return EXIT_OK


def _bound_entries(G: GenMatrix, kinds: Sequence[str], explicit: bool):
    """(kind, polytope, parameters, inequality) for each requested bound; skipped ones carry a reason."""
    out = []
    for kind in kinds:
        if kind == "tcb":
            M = minimal_system(G).min_size()
            P = bd.tcb_region(G.k, G.n, M)
            out.append((kind, P, {"n": G.n, "M": M}, None, None))
        elif kind == "ddb1":
            try:
                ineq = bd.ddb1_for(G)
            except PreconditionError as e:
                if explicit:
                    raise
                out.append((kind, None, None, None, str(e)))
                continue
            out.append((kind, ineq.region(), {"n": G.n, "d_perp": dual_code(G).d_perp}, ineq, None))
        elif kind == "ddb2":
            profs = object_profiles(G)
            ineq = bd.ddb2(profs, G.n)
            params = {"n": G.n, "profiles": [[p.delta1, p.omega, p.delta2] for p in profs]}
            out.append((kind, ineq.region(), params, ineq, None))
    return out


def cmd_bounds(args) -> int:
    G = load_matrix(args.matrix)
    fixed = parse_section(args.section, G.k)
    kinds = ["tcb", "ddb1", "ddb2"] if args.bound == "all" else [args.bound]
    entries = _bound_entries(G, kinds, explicit=args.bound != "all")
    exact = None
    if args.compare:
        exact = _region(G, args)
        if fixed:
            exact = section(exact, fixed)
    status = EXIT_OK
    reports = []
    for kind, P, params, ineq, skipped in entries:
        if skipped is not None:
            reports.append({"kind": kind, "skipped": skipped})
            continue
        if fixed:
            P = section(P, fixed)
        if exact is not None:
            rep = bd.compare(exact, P, kind, ineq).as_dict()
            if not rep["contains_exact"]:
                status = EXIT_NO
        else:
            rep = {"kind": kind, "halfspaces": polytope_dict(P)["halfspaces"]}
            if ineq is not None:
                rep["inequality"] = ineq.as_dict()
        rep["parameters"] = params
        reports.append(rep)
    out = {"variables": _free_names(G.k, fixed), "bounds": reports}
    if exact is not None:
        out["exact"] = polytope_dict(exact)
    _emit(dumps(out), args.output)
    return status


def cmd_plot(args) -> int:
    from .plotting import LAYERS, PlotSpec, render

    G = load_matrix(args.matrix)
    fixed = parse_section(args.section, G.k)
    free = _free_names(G.k, fixed)
    if len(free) != 2:
        raise UsageError(f"a plot needs exactly 2 free axes, got {len(free)} ({', '.join(free)}); use --section")
    names = [s.strip() for s in args.layers.split(",") if s.strip()]
    for n in names:
        if n not in LAYERS:
            raise UsageError(f"unknown layer {n!r}; choose from {', '.join(LAYERS)}")
    layers: dict[str, Polytope] = {}
    if "exact" in names:
        layers["exact"] = _region(G, args)
    for kind, P, _, _, skipped in _bound_entries(G, [n for n in names if n != "exact"], explicit=False):
        if skipped is not None:
            print(f"warning: layer {kind} skipped: {skipped}", file=sys.stderr)
            continue
        layers[kind] = P
    layers = {name: section(P, fixed) if fixed else P for name, P in layers.items()}
    try:
        w, h = (float(v) for v in args.size.lower().split("x"))
    except ValueError:
        raise UsageError(f"--size must look like 5x5, got {args.size!r}") from None
    clip = None
    if args.clip:
        clip = tuple(parse_fraction(v) for v in args.clip.split(","))
        if len(clip) != 2:
            raise UsageError("--clip takes two values: xmax,ymax")
    spec = PlotSpec(axes=(free[0], free[1]), size=(w, h), clip=clip, title=args.title, layers=layers)
    svg, csv_path = render(spec, args.output)
    print(f"wrote {svg} and {csv_path}")
    return EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="servicerate", description="Service rate regions of linear codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("matrix", help="generator matrix file")
        p.set_defaults(fn=fn)
        return p

    def add_system(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--minimal", action="store_true", help="minimal recovery sets (default)")
        g.add_argument("--all", action="store_true", help="every recovery set")

    p = add("info", cmd_info, "field, distances and per-object dual profiles as JSON")
    p.add_argument("-o", "--output")

    p = add("recovery", cmd_recovery, "list recovery sets per object")
    add_system(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")

    p = add("check", cmd_check, "is a rate vector servable? prints an allocation")
    p.add_argument("--rates", required=True, help="r1,...,rk (integers or num/den)")
    p.add_argument("--mu", default="1", help="server capacity (default 1)")
    add_system(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")

    def add_region_opts(p):
        add_system(p)
        p.add_argument("--section", help="fix variables, e.g. l2=0,l3=0")
        p.add_argument("--method", choices=("auto", "fm", "cuts"), default="auto")

    p = add("region", cmd_region, "exact service rate region")
    add_region_opts(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")

    p = add("bounds", cmd_bounds, "outer bound regions, optionally compared with the exact region")
    add_region_opts(p)
    p.add_argument("--bound", choices=("all", "tcb", "ddb1", "ddb2"), default="all")
    p.add_argument("--compare", action="store_true")
    p.add_argument("-o", "--output")

    p = add("plot", cmd_plot, "draw a 2-D view of the region and bounds")
    add_region_opts(p)
    p.add_argument("--layers", default="exact,tcb,ddb1,ddb2",
                   help="comma list from exact,tcb,ddb1,ddb2")
    p.add_argument("-o", "--output", required=True, help="image path (.svg recommended)")
    p.add_argument("--size", default="5x5", help="canvas in inches, WxH")
    p.add_argument("--clip", help="xmax,ymax of the drawing box")
    p.add_argument("--title")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvariantViolation, PreconditionError, UnboundedPolytopeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidArgumentError, ServiceRateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
