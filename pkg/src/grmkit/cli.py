"""Command-line front end.

Exit codes: 0 success (flagged checks included), 1 a verification check
failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import oracle
from .constructions import (Arrangement, HyperplaneBlock, NormFormSpec, arrangement_poly,
                            arrangement_zeros, config_S, config_T, maximal_codeword, norm_form)
from .gf import extension
from .grm import count_zeros_affine, grm_params, kth_weight, min_distance_affine
from .pgrm import count_zeros_proj, pgrm_params, proj_length
from .poly import AffineForm, affine_points, eval_vector, poly_from_json, reduce


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, default=str) + "\n")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _vectors(text: str) -> list[list[int]]:
    return [_int_list(chunk) for chunk in text.split(";") if chunk.strip()]


def _grid_point(args, variant) -> oracle.GridPoint:
    return oracle.GridPoint(args.q, args.n, args.d, variant)


# --- params -------------------------------------------------------------------------

def cmd_params(args) -> int:
    if args.variant == "affine":
        out = grm_params(args.q, args.n, args.d).to_json()
        if args.oracle:
            dist = oracle.enum_spectrum(_grid_point(args, "affine"), args.workers, args.budget)
            out["w1_enumerated"] = kth_weight(dist, 1)
            out["w2_enumerated"] = kth_weight(dist, 2)
    else:
        out = pgrm_params(args.q, args.n, args.d).to_json()
        if args.oracle:
            ws = oracle.enum_spectrum(_grid_point(args, "projective"), args.workers, args.budget).weights()
            out["w1_enumerated"] = ws[0]
            out["w2_enumerated"] = ws[1] if len(ws) > 1 else None
    _emit(out)
    return 0


# --- spectrum -------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    gp = _grid_point(args, args.variant)
    dist = oracle.enum_spectrum(gp, args.workers, args.budget)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "count"])
        w.writerows(dist.rows())
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"variant": gp.variant, "q": gp.q, "n": gp.n, "d": gp.d,
               "distribution": [{"weight": w, "count": c} for w, c in dist.rows()]})
    return 0


# --- construct ---------------------------------------------------------------------------

def _construct_maximal(args):
    forms = _vectors(args.forms) if args.forms else [
        [1 if j == i else 0 for j in range(args.n)] for i in range(args.n)]
    w = _int_list(args.w) if args.w is not None else None
    wp = _int_list(args.w_prime) if args.w_prime is not None else None
    f = maximal_codeword(args.q, args.n, args.d, forms, w, wp, args.w0)
    return f, args.q**args.n - min_distance_affine(args.q, args.n, args.d)


def _construct_arrangement(args):
    if not args.block:
        raise UsageError("--block DIRECTION:SHIFTS is required, e.g. --block 1,0:0,1")
    blocks = []
    for spec in args.block:
        if ":" not in spec:
            raise UsageError(f"block {spec!r} is not DIRECTION:SHIFTS")
        direction, shifts = spec.split(":", 1)
        blocks.append(HyperplaneBlock(AffineForm(tuple(_int_list(direction))), tuple(_int_list(shifts))))
    arr = Arrangement(args.q, args.n, tuple(blocks))
    return arrangement_poly(arr), arrangement_zeros(arr)


def _construct_config(args):
    arr = (config_S if args.family == "config-s" else config_T)(args.q, args.n, args.d)
    return arrangement_poly(arr), arrangement_zeros(arr)


def _construct_norm(args):
    emap = extension(args.q, args.s)
    if args.g:
        obj = json.loads(args.g)
        if int(obj.get("q", emap.ext.q)) != emap.ext.q:
            raise UsageError(f"g must be over GF({emap.ext.q})")
        obj["q"] = emap.ext.q
        g = poly_from_json(obj)
    else:
        # X1 + w X2 with w the first element outside the prime field
        n = args.n
        g = reduce(emap.ext, n, {tuple(1 if j == 0 else 0 for j in range(n)): 1,
                                 tuple(1 if j == 1 else 0 for j in range(n)): args.q})
    spec = NormFormSpec(emap, g, int(g.degree))
    f = norm_form(spec)
    predicted = int((eval_vector(g, affine_points(args.q, g.n)) == 0).sum())
    return f, predicted


FAMILIES = {
    "maximal": _construct_maximal,
    "arrangement": _construct_arrangement,
    "config-s": _construct_config,
    "config-t": _construct_config,
    "norm-form": _construct_norm,
}


def cmd_construct(args) -> int:
    if args.family != "norm-form" and (args.n is None or (args.d is None and args.family != "arrangement")):
        raise UsageError(f"--family {args.family} needs --n and --d")
    if args.n is None:
        args.n = 2
    f, predicted = FAMILIES[args.family](args)
    _emit({"family": args.family, "poly": f.to_json(), "predicted_zeros": predicted,
           "zeros": count_zeros_affine(f), "weight": f.spec.q**f.n - count_zeros_affine(f)})
    return 0


# --- weight-of --------------------------------------------------------------------------------

def _read_poly_text(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    return text


def cmd_weight_of(args) -> int:
    try:
        obj = json.loads(_read_poly_text(args.poly))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed polynomial JSON: {exc}") from exc
    if isinstance(obj, dict) and "poly" in obj:
        obj = obj["poly"]
    if args.projective:
        F = poly_from_json(obj, homogeneous=True)
        zeros = count_zeros_proj(F)
        length = proj_length(F.spec.q, F.n)
    else:
        f = poly_from_json(obj)
        zeros = count_zeros_affine(f)
        length = f.spec.q**f.n
    _emit({"length": length, "zeros": zeros, "weight": length - zeros})
    return 0


# --- verify -------------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    names = list(oracle.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        variant = "projective" if name in oracle.PROJECTIVE_SUITES else "affine"
        grid = oracle.parse_grid(args.grid, variant)
        reports.append(oracle.run_suite(name, grid, workers=args.workers, budget=args.budget))
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for i, rep in enumerate(reports):
            w.writerows(rep.csv_rows()[0 if i == 0 else 1:])
        sys.stdout.write(buf.getvalue())
    else:
        payload = [r.to_json() for r in reports]
        _emit(payload[0] if len(payload) == 1 else payload)
    return 0 if all(r.ok for r in reports) else 1


# --- parser ----------------------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _budget(text: str) -> int:
    v = int(float(text))
    if v <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grmkit", description="Generalized Reed-Muller code toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def qnd(sp, required=True):
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--n", type=int, required=required)
        sp.add_argument("--d", type=int, required=required)

    def enum_opts(sp):
        sp.add_argument("--workers", type=_positive, default=1)
        sp.add_argument("--budget", type=_budget, default=None,
                        help=f"point-evaluation budget (default ${oracle.BUDGET_ENV} or 1e10)")

    sp = sub.add_parser("params", help="code parameters")
    sp.add_argument("variant", choices=["affine", "projective"])
    qnd(sp)
    sp.add_argument("--oracle", action="store_true", help="also enumerate the first two weights")
    enum_opts(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("spectrum", help="exact weight distribution by enumeration")
    sp.add_argument("variant", choices=["affine", "projective"])
    qnd(sp)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    enum_opts(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("construct", help="build an extremal codeword")
    sp.add_argument("--family", required=True, choices=list(FAMILIES))
    qnd(sp, required=False)
    sp.add_argument("--forms", help="maximal: directions as 'c,c;c,c'")
    sp.add_argument("--w", help="maximal: shifts w_i as 'u,u'")
    sp.add_argument("--w-prime", dest="w_prime", help="maximal: distinct shifts w'_j as 'u,u'")
    sp.add_argument("--w0", type=int, default=1)
    sp.add_argument("--block", action="append", help="arrangement: DIRECTION:SHIFTS, repeatable")
    sp.add_argument("--s", type=int, default=2, help="norm-form: extension degree")
    sp.add_argument("--g", help="norm-form: polynomial JSON over GF(q^s)")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("weight-of", help="weight of a polynomial given as JSON")
    sp.add_argument("--poly", required=True, help="JSON text, @file, or - for stdin")
    sp.add_argument("--projective", action="store_true")
    sp.set_defaults(func=cmd_weight_of)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=["all", *oracle.SUITES])
    sp.add_argument("--grid", default="default", help="'default' or 'q,n,d;q,n,d'")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    enum_opts(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except oracle.BudgetExceeded as exc:
        print(f"grmkit: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        print(f"grmkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
