"""Command line front end.

Exit status is 0 on success or a passing verification, 1 when a verification
returns false, and 2 for precondition or usage errors (printed as
``ErrorClass: message`` on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import affine_weyl as aw
from . import bm_recon as br
from . import gkm
from .errors import BMError, CapExceeded, OracleGap, SchemaError
from .genericity import DESCRIPTIONS, Policy, threshold
from .rep_mult import rank1_oracle, table_oracle, weight_multiplicities, weyl_dimension, weyl_identity_check
from .root_data import RootDatum, build_root_datum, height
from .serialize import dumps, dumps_pretty
from .tame_param import (
    Presentation,
    compatible_presentation,
    is_lowest_alcove,
    presentation_point,
    presentation_to_json,
    zeta_from_index,
)

PASS, FALSE, ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    datum: str
    p: Optional[int]
    zeta: int
    oracle: Optional[str]
    region: str
    format: str
    verbose: bool

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_json(obj: dict) -> "RunConfig":
        return RunConfig(**obj)

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        return RunConfig(
            datum=args.datum,
            p=getattr(args, "p", None),
            zeta=getattr(args, "zeta", 0),
            oracle=getattr(args, "oracle", None),
            region=getattr(args, "region", "default"),
            format=args.format,
            verbose=args.verbose,
        )


# -- argument parsing ------------------------------------------------------------


def parse_weight(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(",") if c != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def parse_fin(datum: RootDatum, text: str):
    """``word:i,j,...`` (1-based simple reflections) or a one-line permutation ``2,1``."""
    if text in ("e", "id"):
        return datum.identity
    if text.startswith("word:"):
        return datum.fin_from_word(i - 1 for i in parse_weight(text[5:]))
    return aw.fin_from_json(datum, list(parse_weight(text)))


def parse_elt(datum: RootDatum, text: str) -> aw.ExtAffWeyl:
    """JSON ``{"w": ..., "nu": ...}`` or ``w;nu`` with both parts comma separated."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return aw.from_json(datum, json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise SchemaError(f"bad element: {exc}") from None
    w, _, nu = text.partition(";")
    return aw.ExtAffWeyl(parse_fin(datum, w), parse_weight(nu) if nu else datum.zero())


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


def _emit(args, obj, lines: Optional[List[str]] = None) -> None:
    text = "\n".join(lines) if args.format == "table" and lines is not None else dumps_pretty(obj)
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps_pretty(obj) + "\n")
        if args.format == "table" and lines is not None:
            print(text)
    else:
        print(text)


def _datum(args) -> RootDatum:
    return build_root_datum(args.datum)


def _oracle(args, datum: RootDatum):
    if getattr(args, "oracle", None):
        o = table_oracle(args.oracle, datum)
        if args.p is not None and o.p != args.p:
            raise OracleGap(f"oracle table is for p={o.p}, not {args.p}")
        return o
    if datum.ss_rank != 1:
        raise OracleGap(f"no built-in oracle for {datum.name}; pass --oracle with a table")
    return rank1_oracle(args.p, datum)


# -- commands --------------------------------------------------------------------


def cmd_adm(args) -> int:
    d = _datum(args)
    lam = args.lam
    elts = aw.adm_reg(d, lam) if args.regular else aw.adm(d, lam)
    if args.translations:
        elts = [x for x in elts if x.is_translation]
    if len(elts) > args.cap:
        raise CapExceeded(f"{len(elts)} elements exceed --cap {args.cap}")
    elts = sorted(elts, key=lambda x: aw.sort_key(d, x))
    obj = {
        "lambda": list(lam),
        "count": len(elts),
        "elements": [{"elt": aw.to_json(x), "length": aw.length(d, x)} for x in elts],
    }
    lines = [f"{len(elts)} elements"] + [f"  l={aw.length(d, x)}  {dumps(aw.to_json(x))}" for x in elts]
    _emit(args, obj, lines)
    return PASS


def cmd_genericity(args) -> int:
    d = _datum(args)
    x = args.lam
    m = args.m if args.m is not None else threshold(args.threshold, d, h_lam=height(d, args.hlam or d.zero()))
    ok = aw.is_m_generic(d, x, args.p, m)
    pairings = [d.pair(x, a) for a in d.positive_roots]
    best = -1
    while best + 1 < args.p and aw.is_m_generic(d, x, args.p, best + 1):
        best += 1
    obj = {"weight": list(x), "p": args.p, "m": m, "generic": ok, "pairings": pairings, "max_m": best}
    if args.m is None:
        obj["threshold"] = DESCRIPTIONS[args.threshold]
    _emit(args, obj, [f"{'generic' if ok else 'not generic'} at m={m} (largest m: {best})"])
    return PASS if ok else FALSE


def cmd_weights(args) -> int:
    d = _datum(args)
    ch = weight_multiplicities(d, args.lam)
    obj = {"lambda": list(args.lam), "dimension": weyl_dimension(d, args.lam), "weights": ch.to_json()}
    lines = [f"dim {obj['dimension']}"] + [f"  {k}: {v}" for k, v in sorted(ch.terms.items(), reverse=True)]
    _emit(args, obj, lines)
    return PASS


def _build_class(d: RootDatum, kind: str, lam) -> gkm.GKMClass:
    if kind == "flag":
        return gkm.flag_class(d)
    if kind == "rho":
        return gkm.rho_limit_class(d)
    if lam is None:
        raise SchemaError("--lambda is required for the lambda class")
    return gkm.lambda_class(d, lam)


def cmd_localize(args) -> int:
    d = _datum(args)
    c = _build_class(d, args.kind, args.lam)
    obj = gkm.class_to_json(d, c)
    lines = [f"{len(c)} fixed points"] + [
        f"  {dumps(aw.to_json(x))}: {f!r}" for x, f in sorted(c.items(), key=lambda kv: aw.sort_key(d, kv[0]))
    ]
    _emit(args, obj, lines)
    return PASS


def cmd_oracle(args) -> int:
    d = _datum(args)
    o = _oracle(args, d)
    o.validate()
    obj = o.to_json()
    obj["valid"] = True
    obj["pi_symmetric"] = o.pi_symmetric()
    lines = [f"oracle p={o.p} ({o.source}): {len(o.entries)} entries, valid, pi-symmetric={obj['pi_symmetric']}"]
    _emit(args, obj, lines)
    return PASS


def cmd_reconstruct(args) -> int:
    d = _datum(args)
    policy = Policy(args.genericity)
    zeta = zeta_from_index(d, args.zeta)
    o = _oracle(args, d)
    o.validate()
    if args.region != "default":
        raise SchemaError("only --region default is supported")
    table = br.reconstruct(d, args.p, o, zeta, policy=policy)
    results = []
    for pres in br.sweep_presentations(d, args.p, o, zeta, table, policy=policy):
        ok, rep = br.verify_bm_relations(d, args.p, o, zeta, pres, table, policy)
        results.append({"presentation": presentation_to_json(pres), "holds": ok, "discrepancies": rep})
    bad_support = br.check_support_bounds(d, table)
    all_ok = all(r["holds"] for r in results) and not bad_support
    obj = {
        "table": table.to_json(),
        "report": {
            "relations": results,
            "relations_checked": len(results),
            "support_bounds": not bad_support,
            "all_pass": all_ok,
        },
    }
    lines = [
        f"{len(table.entries)} cycles over the default region (p={args.p}, zeta={args.zeta}, genericity={policy.value})",
        f"{sum(r['holds'] for r in results)}/{len(results)} relations hold; support bounds {'ok' if not bad_support else 'violated'}",
    ]
    _emit(args, obj, lines)
    return PASS if all_ok else FALSE


def _load_table(args, d: RootDatum, o, zeta, policy) -> br.CycleTable:
    if args.table:
        obj = _read_json(args.table)
        if isinstance(obj, dict) and "table" in obj and "entries" not in obj:
            obj = obj["table"]
        return br.table_from_json(obj, d)
    return br.reconstruct(d, args.p, o, zeta, policy=policy)


def cmd_verify(args) -> int:
    d = _datum(args)
    kind = args.kind
    if kind in ("recognition", "residues"):
        if not args.cls:
            raise SchemaError("--class is required")
        if args.cls in ("flag", "rho", "lambda"):
            c = _build_class(d, args.cls, args.lam)
        else:
            c = gkm.class_from_json(d, _read_json(args.cls))
        if kind == "recognition":
            v = gkm.recognition_check(d, c)
            _emit(args, v.to_json(), [str(v)])
            return PASS if v.passed else FALSE
        ok, rep = gkm.check_residues(d, c, gkm.gen_rho_orbit_triples(d))
        _emit(args, {"verdict": "pass" if ok else "fail", "report": rep}, ["pass" if ok else "fail"])
        return PASS if ok else FALSE
    if kind == "weyl":
        ok = weyl_identity_check(d, args.lam)
        _emit(args, {"verdict": "pass" if ok else "fail", "lambda": list(args.lam)}, ["pass" if ok else "fail"])
        return PASS if ok else FALSE
    policy = Policy(args.genericity)
    zeta = zeta_from_index(d, args.zeta)
    o = _oracle(args, d)
    pres = Presentation(parse_fin(d, args.w), args.mu, args.p)
    table = _load_table(args, d, o, zeta, policy)
    if kind == "relation":
        ok, rep = br.verify_bm_relations(d, args.p, o, zeta, pres, table, policy)
    else:
        ok, rep = br.verify_bm_ht(d, args.p, o, zeta, pres, args.lam or d.zero(), table, policy)
    _emit(args, {"verdict": "pass" if ok else "fail", "report": rep}, ["pass" if ok else "fail"])
    return PASS if ok else FALSE


def cmd_factor(args) -> int:
    d = _datum(args)
    u = parse_elt(d, args.elt)
    v, w1 = aw.factor_regular(d, u)
    obj = {"elt": aw.to_json(u), "v": aw.to_json(v), "w1": aw.to_json(w1)}
    _emit(args, obj, [f"v = {dumps(obj['v'])}", f"w1 = {dumps(obj['w1'])}"])
    return PASS


def cmd_present(args) -> int:
    d = _datum(args)
    pres = Presentation(parse_fin(d, args.w), args.mu, args.p)
    x = presentation_point(d, pres)
    zeta = zeta_from_index(d, args.zeta)
    obj = presentation_to_json(pres)
    obj.update(
        {
            "point": [str(c) for c in x],
            "lowest_alcove": is_lowest_alcove(d, pres),
            "compatible": compatible_presentation(d, zeta, pres),
            "omega": aw.to_json(aw.omega_part(d, pres.element(d))),
        }
    )
    lines = [f"point ({', '.join(obj['point'])})", f"lowest alcove: {obj['lowest_alcove']}", f"compatible with zeta={args.zeta}: {obj['compatible']}"]
    _emit(args, obj, lines)
    return PASS


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", default="GL_2", help="preset name (GL_n, GSp_2n, sc:Xn+Tk)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write JSON output to this file")
    common.add_argument("--verbose", action="store_true")

    prime = argparse.ArgumentParser(add_help=False)
    prime.add_argument("--p", type=int, required=True)
    prime.add_argument("--zeta", type=int, default=0, help="central character index k, the image of t^{k omega_1}")
    prime.add_argument("--genericity", choices=[x.value for x in Policy], default=Policy.STRICT.value)
    prime.add_argument("--oracle", help="multiplicity table JSON (defaults to the built-in rank one oracle)")

    parser = argparse.ArgumentParser(prog="bmcycles", description="Exact affine Weyl, GKM and cycle computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adm", parents=[common], help="admissible sets")
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.add_argument("--regular", action="store_true")
    p.add_argument("--translations", action="store_true")
    p.add_argument("--cap", type=int, default=100000)
    p.set_defaults(func=cmd_adm)

    p = sub.add_parser("genericity", parents=[common], help="m-genericity of a weight")
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--threshold", choices=sorted(DESCRIPTIONS), default="bm_relation")
    p.add_argument("--hlam", type=parse_weight, help="Hodge-Tate weight for the bm_ht threshold")
    p.set_defaults(func=cmd_genericity)

    p = sub.add_parser("weights", parents=[common], help="weight multiplicities")
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("localize", parents=[common], help="standard localized classes")
    p.add_argument("--class", dest="kind", choices=("flag", "rho", "lambda"), required=True)
    p.add_argument("--lambda", dest="lam", type=parse_weight)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("oracle", parents=[common], help="build or validate a multiplicity oracle")
    p.add_argument("--p", type=int)
    p.add_argument("--in", dest="oracle", help="table to validate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reconstruct", parents=[common, prime], help="reconstruct cycles and sweep relations")
    p.add_argument("--region", default="default")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", parents=[common], help="run a verifier")
    p.add_argument("kind", choices=("recognition", "residues", "weyl", "relation", "ht"))
    p.add_argument("--class", dest="cls", help="flag, rho, lambda or a class JSON file")
    p.add_argument("--lambda", dest="lam", type=parse_weight)
    p.add_argument("--p", type=int)
    p.add_argument("--zeta", type=int, default=0)
    p.add_argument("--genericity", choices=[x.value for x in Policy], default=Policy.STRICT.value)
    p.add_argument("--oracle")
    p.add_argument("--mu", type=parse_weight)
    p.add_argument("--w", default="e")
    p.add_argument("--table", help="cycle table JSON (computed when omitted)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factor", parents=[common], help="factor a regular box element")
    p.add_argument("--elt", required=True, help='element as {"w":..,"nu":..} or "w;nu"')
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("present", parents=[common], help="tame presentation data")
    p.add_argument("--w", default="e")
    p.add_argument("--mu", type=parse_weight, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--zeta", type=int, default=0)
    p.set_defaults(func=cmd_present)
    return parser


def _check_args(args) -> None:
    if args.command == "weights" or (args.command == "verify" and args.kind == "weyl"):
        if args.lam is None:
            raise SchemaError("--lambda is required")
    if args.command == "verify" and args.kind in ("relation", "ht"):
        if args.p is None or args.mu is None:
            raise SchemaError("--p and --mu are required")
    if args.command == "oracle" and args.p is None and not args.oracle:
        raise SchemaError("--p or --in is required")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_args(args)
        return args.func(args)
    except BMError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
