"""``modsurf`` command line: subgroup analysis, the G_k family, genus-1 curves.

Every command builds a JSON-able report; ``--json`` prints it verbatim and
the default text mode is a flat rendering of the same object.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 coset
budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import genus1
from .fibers import summarize_lifts
from .gamma_family import FamilyCheckFailed, build_gamma_k, fundamental_domain_svg
from .psl2 import Mat, format_cusp, half_plane, parabolic_normal_form
from .subgroup import (
    BUDGET_ENV, IndexBoundExceeded, NotGenusZeroTorsionFree, RelationViolation,
    cusps, from_generators, from_permutations, invariants, parabolic_generator_system,
)
from .surface import all_star_model, hodge_invariants, models, report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _emit(obj, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        _render_text(obj, out)


def _render_text(obj, out, prefix: str = "") -> None:
    if isinstance(obj, dict):
        for key in sorted(obj):
            v = obj[key]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                out.write(f"{prefix}{key}:\n")
                _render_text(v, out, prefix + "  ")
            else:
                out.write(f"{prefix}{key}: {_scalar(v)}\n")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, list) and not any(isinstance(x, (dict, list)) for x in v):
                out.write(f"{prefix}- {_scalar(v)}\n")
            elif isinstance(v, (dict, list)):
                out.write(f"{prefix}[{i}]\n")
                _render_text(v, out, prefix + "  ")
            else:
                out.write(f"{prefix}- {_scalar(v)}\n")
    else:
        out.write(f"{prefix}{_scalar(obj)}\n")


def _scalar(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(v[k])}" for k in sorted(v))
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


# -- analyze -------------------------------------------------------------------

def load_subgroup(path: str, budget: int | None = None):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top level must be an object with 'generators' or 'cosets'")
    if "generators" in data:
        try:
            gens = [Mat.from_list(g) for g in data["generators"]]
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad generator matrix: {exc}") from exc
        return from_generators(gens, budget=budget)
    if "cosets" in data:
        c = data["cosets"]
        try:
            return from_permutations([int(x) for x in c["perm_s"]], [int(x) for x in c["perm_t"]])
        except (KeyError, TypeError) as exc:
            raise InputError(f"'cosets' needs integer lists perm_s and perm_t: {exc}") from exc
    raise InputError("expected a 'generators' or 'cosets' entry")


def analyze_report(R) -> dict:
    inv = invariants(R)
    out = {"subgroup": inv.to_json(), "cusps": [c.to_json() for c in cusps(R)],
           "cosets": R.to_json()}
    try:
        loops = parabolic_generator_system(R)
    except NotGenusZeroTorsionFree as exc:
        out.update({"loops": None, "lifts": None, "lift_summary": None,
                    "lifts_unavailable": str(exc)})
        return out
    out["loops"] = [{"matrix": g.matrix.tolist(), "cusp": g.cusp, "fixed_point": format_cusp(g.point),
                     "normal_form": list(parabolic_normal_form(g.matrix))} for g in loops]
    ms = models(R)
    rows = []
    for M in ms:
        try:
            h = hodge_invariants(M)
            chi, h11 = h.chi_O, h.h11
        except ValueError as exc:  # 12 does not divide mu + 6 nu
            chi, h11 = None, str(exc)
        row = {"signs": list(M.lift.assignment.signs), "fibers": M.config.to_json(),
               "nu_star": M.config.nu_star, "chi_O": chi, "h11": h11}
        rows.append(row)
    out["lifts"] = rows
    out["lift_summary"] = summarize_lifts([M.lift for M in ms]).to_json()
    return out


def cmd_analyze(args, out) -> int:
    R = load_subgroup(args.file, budget=args.budget)
    _emit(analyze_report(R), args.json, out)
    return EXIT_OK


# -- gamma-k / verify ------------------------------------------------------------

def gamma_k_report(k: int, budget: int | None = None) -> dict:
    G = build_gamma_k(k, budget=budget)
    M = all_star_model(G.representation, k)
    r = report(M, G.invariants())
    r["genus"] = G.invariants().genus
    r["generators"] = [g.tolist() for g in G.generators]
    return r


def cmd_gamma_k(args, out) -> int:
    if args.k < 2:
        raise InputError(f"k must be at least 2, got {args.k}")
    r = gamma_k_report(args.k, args.budget)
    if args.svg:
        G = build_gamma_k(args.k, budget=args.budget)
        Path(args.svg).write_text(fundamental_domain_svg(G), encoding="utf-8")
    _emit(r, args.json, out)
    return EXIT_OK


def verify_row(k: int, budget: int | None = None) -> dict:
    checks: dict[str, bool] = {}
    try:
        r = gamma_k_report(k, budget)
    except (FamilyCheckFailed, LookupError, AssertionError) as exc:
        return {"k": k, "pass": False, "checks": {}, "error": str(exc)}
    checks["mu = 6(k-1)"] = r["mu"] == 6 * (k - 1)
    checks["genus 0"] = r["genus"] == 0
    checks["k+1 cusps, even widths"] = (len(r["cusps"]) == k + 1
                                        and all(c["width"] % 2 == 0 for c in r["cusps"]))
    checks["all-I* lift"] = all(f.startswith("I*") for f in r["fibers"])
    checks["chi = k"] = r["chi_O"] == k
    checks["h11 = 10k"] = r["h11"] == 10 * k
    checks["h1 = h1_alg = 10k"] = r["h1"] == r["h1_alg"] == 10 * k
    checks["connected"] = r["components"] == 1
    checks["type"] = r["type"] == (f"S_{5 * k}" if k % 2 == 0 else f"V_{10 * k}")
    checks["extremal"] = bool(r.get("extremal"))
    return {"k": k, "pass": all(checks.values()), "checks": checks, "type": r["type"]}


def cmd_verify(args, out) -> int:
    a, b = args.k_from, args.k_to
    if not 2 <= a <= b:
        raise InputError(f"need 2 <= from <= to, got {a}..{b}")
    rows = [verify_row(k, args.budget) for k in range(a, b + 1)]
    ok = all(r["pass"] for r in rows)
    if args.json:
        _emit({"rows": rows, "pass": ok}, True, out)
    else:
        for r in rows:
            status = "PASS" if r["pass"] else "FAIL"
            detail = r.get("type") or r.get("error", "")
            failed = [name for name, v in r["checks"].items() if not v]
            out.write(f"k={r['k']:>3}  {status}  {detail}" + (f"  failed: {', '.join(failed)}" if failed else "") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- curve --------------------------------------------------------------------------

def cmd_curve(args, out) -> int:
    try:
        re = Fraction(args.tau[0])
        im = mpmath.mpf(args.tau[1])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad tau: {exc}") from exc
    with mpmath.workdps(genus1.DPS):
        tau = half_plane(mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, im))
    _emit(genus1.classify(tau, args.tol), args.json, out)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modsurf", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=None,
                   help=f"coset enumeration budget (default: ${BUDGET_ENV} or 10000)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="invariants and lifts of a subgroup given in a JSON file")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gamma-k", help="build G_k and report its all-I* surface")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--svg", metavar="PATH", help="also write the fundamental domain as SVG")
    g.set_defaults(func=cmd_gamma_k)

    v = sub.add_parser("verify", help="check every invariant of G_k for a range of k")
    v.add_argument("--from", dest="k_from", type=int, required=True)
    v.add_argument("--to", dest="k_to", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curve", help="j-invariant and real forms of C/(Z + tau Z)")
    c.add_argument("--tau", nargs=2, metavar=("RE", "IM"), required=True,
                   help="real part (a fraction like 1/2 is kept exact) and imaginary part")
    c.add_argument("--tol", type=float, default=genus1.TOL)
    c.set_defaults(func=cmd_curve)

    for sp in (a, g, v, c):
        sp.add_argument("--json", action="store_true", help="print the JSON report")
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except IndexBoundExceeded as exc:
        print(f"modsurf: coset budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FamilyCheckFailed as exc:
        print(f"modsurf: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, RelationViolation, ValueError) as exc:
        print(f"modsurf: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
