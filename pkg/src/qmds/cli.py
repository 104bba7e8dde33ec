"""Command-line interface.

Every subcommand prints one JSON document (``--format json``, the default)
or a plain-text rendering of the same record.  Exit status: 0 success,
1 negative result (criterion fails, search not found), 2 usage or internal
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Callable

from qmds.code import DEFAULT_DISTANCE_CAP, DistanceBudgetError, LinearCode, hull_dim
from qmds.constructions import (
    DEFAULT_TRIAL_CAP,
    ConstructionError,
    VerificationError,
    compare_table_one,
    construction_one_params,
    construction_one_range,
    construction_two,
    hull_search,
    hull_to_quantum,
    table_two_ranges,
)
from qmds.css import (
    CriterionError,
    SingletonViolation,
    css_params,
    exact_params,
    singleton_check,
    squeeze,
    verify_criteria,
)
from qmds.field import FieldError, gf, prime_power
from qmds.grs import GrsError, GrsSpec, dual_multipliers, grs_code, grs_dual_spec, grs_generator

SCHEMA = "1"

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class NegativeResult(Exception):
    """A well-formed query whose answer is "no"; carries the record to print."""

    def __init__(self, record: dict) -> None:
        super().__init__(record.get("reason", "negative result"))
        self.record = record


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=_seed, default=0, help="PRNG seed (default 0)")
    p.add_argument("--cap", type=_positive, default=DEFAULT_DISTANCE_CAP, help="codeword enumeration cap")
    p.add_argument("--trial-cap", type=_positive, default=DEFAULT_TRIAL_CAP, help="hull-search trial cap")
    p.add_argument("--verify", action="store_true", help="run redundant oracle cross-checks")
    p.add_argument("--jobs", type=_positive, default=1, help="worker threads for enumeration")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qmds", description="Quantum MDS codes from GRS codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("grs", parents=[common], help="emit a GRS code as JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="number of evaluation points")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--v", nargs="+", help="multipliers (indices or polynomials like 1+x)")
    p.add_argument("--a", nargs="+", help="evaluation points (default: first n elements)")
    p.add_argument("--extended", action="store_true", help="append the point at infinity")
    p.add_argument("--distance", action="store_true", help="enumerate the minimum distance")

    p = sub.add_parser("grs-dual-mult", parents=[common], help="dual multipliers u for points a")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", nargs="+", help="evaluation points")
    p.add_argument("--n", type=int, help="use the first n field elements as points")

    p = sub.add_parser("css-check", parents=[common], help="test C2^perp_s <= C1 and derive parameters")
    p.add_argument("--c1", required=True, help="code JSON file or inline JSON")
    p.add_argument("--c2", required=True, help="code JSON file or inline JSON")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--exact-distance", action="store_true")

    p = sub.add_parser("construct1", parents=[common], help="length q+1 family")
    p.add_argument("--q", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--all", action="store_true")

    p = sub.add_parser("construct2", parents=[common], help="GRS pair family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="enumerate the quantum distance")

    p = sub.add_parser("hull-search", parents=[common], help="search GRS codes with a given hull dimension")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--budget", type=_positive, help="number of trials (default: --trial-cap)")
    p.add_argument("--quantum", action="store_true", help="also derive the CSS code when l >= n - k")

    p = sub.add_parser("tables", parents=[common], help="parameter tables")
    p.add_argument("--which", choices=("1", "2"), required=True)
    p.add_argument("--q", type=int, help="field size (table 2: q = l^2)")
    p.add_argument("--l", type=int, help="table 2: l with q = l^2")
    return parser


# ---------------------------------------------------------------------------
# handlers return the "result" payload


def _load_code(text: str) -> LinearCode:
    if os.path.exists(text):
        with open(text) as fh:
            obj = json.load(fh)
    else:
        obj = json.loads(text)
    return LinearCode.from_json(obj)


def _cmd_grs(args) -> dict:
    spec = gf(args.q)
    a = args.a if args.a is not None else list(range(args.n))
    if len(a) != args.n:
        raise GrsError(f"--n {args.n} but {len(a)} points given")
    g = GrsSpec.default(spec, args.n, args.k, v=args.v, a=a, extended=args.extended)
    code = grs_code(g)
    out = code.to_json()
    out["a"] = list(g.a)
    out["v"] = list(g.v)
    out["extended"] = g.extended
    # the code JSON stores the canonical basis; keep the evaluation form too
    out["grs_generator"] = grs_generator(g).tolist()
    out["design_distance"] = code.design_distance
    if args.distance:
        from qmds.code import minimum_distance

        out["minimum_distance"] = minimum_distance(code, args.cap, args.jobs)
    if args.verify and not g.extended and g.k < len(g.a) and all(v == 1 for v in g.v):
        from qmds.code import galois_dual

        if galois_dual(code, 0) != grs_code(grs_dual_spec(g)):
            raise VerificationError("kernel dual differs from the dual-multiplier formula")
        out["dual_formula_checked"] = True
    return out


def _cmd_dual_mult(args) -> dict:
    spec = gf(args.q)
    if args.a is None and args.n is None:
        raise GrsError("give --a or --n")
    a = args.a if args.a is not None else list(range(args.n))
    pts = [spec.element(x).index for x in a]
    u = dual_multipliers(spec, pts)
    return {"q": spec.q, "a": pts, "u": list(u), "u_text": [str(spec.element(x)) for x in u]}


def _cmd_css_check(args) -> dict:
    c1, c2 = _load_code(args.c1), _load_code(args.c2)
    t = verify_criteria(c1, c2, args.s) if args.verify else None
    if t is not None and not t.agree:
        raise VerificationError(f"containment checks disagree: {t.to_json()}")
    try:
        params = css_params(c1, c2, args.s, args.cap, args.jobs)
    except CriterionError as exc:
        rec = {"holds": False, "reason": str(exc)}
        if t is not None:
            rec["criteria"] = t.to_json()
        raise NegativeResult(rec) from None
    params = squeeze(params)
    if args.exact_distance:
        exact = exact_params(c1, c2, args.s, args.cap, args.jobs)
        if exact.d < params.d or (params.d_kind == "exact" and exact.d != params.d):
            raise VerificationError(f"enumerated {exact.label} contradicts {params.label}")
        params = exact
    chk = singleton_check(params)
    out = {"holds": True, "params": _params_json(params), "singleton_slack": chk.slack,
           "quantum_mds": chk.is_quantum_mds}
    if t is not None:
        out["criteria"] = t.to_json()
    return out


def _params_json(p) -> dict:
    d = p.to_json()
    d.pop("witnesses", None)
    return d


def _cmd_construct1(args) -> dict:
    ks = list(construction_one_range(args.q)) if args.all else [args.k]
    entries = []
    for k in ks:
        params = construction_one_params(args.q, k)
        chk = singleton_check(params)
        entries.append({"classical_k": k, "params": _params_json(params), "singleton_slack": chk.slack,
                        "quantum_mds": chk.is_quantum_mds})
    return {"q": args.q, "entries": entries}


def _cmd_construct2(args) -> dict:
    try:
        res = construction_two(args.q, args.n, args.k1, args.k2, args.exact, args.cap, args.jobs, args.verify)
    except CriterionError as exc:
        raise NegativeResult({"holds": False, "reason": str(exc)}) from None
    chk = singleton_check(res.params)
    out = res.to_json()
    out["params"] = _params_json(res.params)
    out["singleton_slack"] = chk.slack
    out["quantum_mds"] = chk.is_quantum_mds
    return out


def _cmd_hull_search(args) -> dict:
    budget = args.budget or args.trial_cap
    if budget > args.trial_cap:
        raise ConstructionError(f"--budget {budget} exceeds --trial-cap {args.trial_cap}")
    res = hull_search(args.q, args.n, args.k, args.l, budget, args.seed, args.cap)
    out = {"q": args.q, "n": args.n, "k": args.k, "l": args.l, "seed": args.seed, **res.to_json()}
    if not res.found:
        raise NegativeResult(out)
    if args.verify:
        out["hull_dim_rechecked"] = hull_dim(res.witness.code, verify=True)
    if args.quantum:
        qr = hull_to_quantum(res.witness, args.cap, args.verify)
        out["quantum"] = {"params": _params_json(qr.params), "transcript": qr.transcript}
    return out


def _cmd_tables(args) -> dict:
    if args.which == "1":
        if args.q is None:
            raise ConstructionError("tables --which 1 needs --q")
        cmp = compare_table_one(args.q)
        out = cmp.to_json()
        for e in out["entries"]:
            e.pop("witnesses", None)
        return {"table": 1, **out}
    if args.l is not None:
        l = args.l
    elif args.q is not None:
        l = math.isqrt(args.q)
        if l * l != args.q:
            raise ConstructionError(f"q={args.q} is not a square")
    else:
        raise ConstructionError("tables --which 2 needs --q or --l")
    prime_power(l)
    return {"table": 2, "l": l, "q": l * l, "rows": [r.to_json() for r in table_two_ranges(l)]}


HANDLERS: dict[str, Callable] = {
    "grs": _cmd_grs,
    "grs-dual-mult": _cmd_dual_mult,
    "css-check": _cmd_css_check,
    "construct1": _cmd_construct1,
    "construct2": _cmd_construct2,
    "hull-search": _cmd_hull_search,
    "tables": _cmd_tables,
}


# ---------------------------------------------------------------------------
# rendering


def render_text(doc: dict) -> str:
    """Human-readable rendering derived from the JSON record."""
    cmd, res = doc["command"], doc.get("result", {})
    lines = [f"# qmds {cmd} (schema {doc['schema']}, status {doc['status']})"]
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
        return "\n".join(lines)
    if cmd == "tables" and res.get("table") == 1:
        lines.append(f"q = {res['q']}  reference match: {res['reference_match']}")
        lines.append(f"{'code':<22}{'d':>4}  kind")
        for e in res["entries"]:
            lines.append(f"{e['label']:<22}{e['d']:>4}  {e['provenance']}")
        lines.extend(f"note: {n}" for n in res["notes"])
    elif cmd == "tables":
        lines.append(f"q = l^2 = {res['q']}")
        lines.append(f"{'family':<18}{'params':<18}{'n':>4}  {'d range':<10}printed max")
        for r in res["rows"]:
            ps = ",".join(f"{k}={v}" for k, v in r["params"].items())
            dr = f"[{r['d_range'][0]},{r['d_range'][1]}]"
            flag = "" if r["printed_matches"] else "  *"
            lines.append(f"{r['family']:<18}{ps:<18}{r['n']:>4}  {dr:<10}{r['printed_d_max']}{flag}")
    elif cmd == "construct1":
        for e in res["entries"]:
            lines.append(f"k={e['classical_k']:<4}{e['params']['label']:<22}slack={e['singleton_slack']}")
    elif "params" in res and isinstance(res["params"], dict):
        p = res["params"]
        lines.append(f"{p['label']}  ({p['d_kind']}, {p['provenance']})")
        if "singleton_slack" in res:
            lines.append(f"singleton slack {res['singleton_slack']}, quantum MDS: {res['quantum_mds']}")
    else:
        for key, val in res.items():
            if not isinstance(val, (dict, list)):
                lines.append(f"{key}: {val}")
            elif key in ("u", "a", "v"):
                lines.append(f"{key}: {' '.join(map(str, val))}")
        if "generator" in res:
            lines.append("generator:")
            lines.extend("  " + " ".join(f"{x:>3}" for x in row) for row in res["generator"])
        if res.get("quantum"):
            lines.append(f"quantum: {res['quantum']['params']['label']}")
    return "\n".join(lines)


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "text":
        print(render_text(doc))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    doc: dict = {"schema": SCHEMA, "command": args.command}
    try:
        doc["result"] = HANDLERS[args.command](args)
        doc["status"] = "ok"
        code = EXIT_OK
    except NegativeResult as neg:
        doc["result"] = neg.record
        doc["status"] = "negative"
        code = EXIT_NEGATIVE
    except (SingletonViolation, VerificationError) as exc:
        print(f"qmds: internal check failed: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (FieldError, GrsError, ConstructionError, DistanceBudgetError, ValueError, OSError) as exc:
        print(f"qmds: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (KeyError, TypeError) as exc:
        # malformed JSON documents surface here
        print(f"qmds: error: malformed input ({exc!r})", file=sys.stderr)
        return EXIT_ERROR
    _emit(doc, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
