"""Command line interface.

Every subcommand builds a JSON-serialisable result; ``--json`` prints it as
``{"schema": 1, "command": ..., "result": ...}`` with sorted keys, text mode
prints an indented rendering of the same structure.

Exit codes: 0 ok, 1 assertion failure, 2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .closures import (
    CLOSURE_NAMES,
    ClosureAxiomError,
    UnsupportedInput,
    audit_instance_log,
    closure_axiom_audit,
    colon_profile,
    get_closure,
    integral_member_bounded,
    newton_closure_monomial,
    tc_evidence,
)
from .frobenius import ChainError, bracket_power, frobenius_closure, frobenius_root
from .groebner import BudgetExceeded, Ideal, NotLocalError, groebner_basis, step_budget
from .nakayama import (
    EnumerationBudgetExceeded,
    NakayamaViolation,
    ReductionError,
    enumerate_minimal_reductions,
    independence,
    is_reduction,
    minimize_reduction,
    nakayama_audit,
    spread_consistency_audit,
    strong_independence,
)
from .ring_core import RingError
from .ringfile import ParseError, parse_ring_file
from .special_part import SpecialPartError, decomposition_check, sp_lemma_audit, sptc_approx_ideal, sptc_member

SCHEMA = 1
EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ASSERTION_ERRORS = (ClosureAxiomError, NakayamaViolation, SpecialPartError, ChainError, AssertionError)
USAGE_ERRORS = (ParseError, RingError, UnsupportedInput, ReductionError, NotLocalError, ValueError, OSError)
BUDGET_ERRORS = (BudgetExceeded, EnumerationBudgetExceeded)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# helpers


def load_ring(path):
    p = Path(path)
    return parse_ring_file(p.read_text(encoding="utf-8"), name=p.stem)


def _elem(rf, text):
    return rf.ring(text)


def _closure(args):
    kw = {"n_max": args.n_max or 6, "radical_bound": getattr(args, "radical_bound", False)}
    kw["e_max"] = args.e_max if args.e_max is not None else 2
    return get_closure(args.closure, **kw)


def _emax(args, default=4):
    return args.e_max if args.e_max is not None else default


# --------------------------------------------------------------------------
# handlers: each returns (result, ok)


def cmd_gb(rf, a):
    I = rf.ideal(a.ideal)
    return {"ideal": a.ideal, "basis": [str(g) for g in groebner_basis(I.generators, rf.ring)]}, True


def cmd_member(rf, a):
    I = rf.ideal(a.ideal)
    if a.closure == "frobenius":
        cl = get_closure("frobenius", e_max=_emax(a))
    else:
        cl = _closure(a)
    v = cl.member(_elem(rf, a.elem), I)
    return {"ideal": a.ideal, "elem": a.elem, "closure": cl.describe(), **v.to_json()}, True


def cmd_bracket(rf, a):
    I = rf.ideal(a.ideal)
    return {"ideal": a.ideal, "e": a.e, "bracket_power": bracket_power(I, a.e).to_json()}, True


def cmd_froot(rf, a):
    I = rf.ideal(a.ideal)
    return {"ideal": a.ideal, "e": a.e, "root": frobenius_root(I, a.e).to_json()}, True


def cmd_fclosure(rf, a):
    ch = frobenius_closure(rf.ideal(a.ideal), e_max=_emax(a), confirm=a.confirm)
    return {"ideal_name": a.ideal, **ch.to_json()}, True


def cmd_intmember(rf, a):
    v = integral_member_bounded(_elem(rf, a.elem), rf.ideal(a.ideal), a.n_max or 6)
    return {"ideal": a.ideal, "elem": a.elem, **v.to_json()}, True


def cmd_newton(rf, a):
    I = rf.ideal(a.ideal)
    return {"ideal": a.ideal, "closure": newton_closure_monomial(I).to_json()}, True


def cmd_tcevidence(rf, a):
    c = rf.ring(a.c) if a.c else None
    v = tc_evidence(_elem(rf, a.elem), rf.ideal(a.ideal), c=c, e_range=(a.e_lo, a.e_hi))
    return {"ideal": a.ideal, "elem": a.elem, **v.to_json()}, True


def cmd_colonprofile(rf, a):
    return colon_profile(_elem(rf, a.elem), rf.ideal(a.ideal), e_range=(a.e_lo, a.e_hi)), True


def cmd_reduce(rf, a):
    rep = is_reduction(rf.ideal(a.sub), rf.ideal(a.ideal), _closure(a))
    return rep.to_json(), True


def cmd_minreduce(rf, a):
    I = rf.ideal(a.ideal)
    J = rf.ideal(a.sub) if a.sub else I
    return minimize_reduction(J, I, _closure(a), mode=a.mode).to_json(), True


def cmd_spread(rf, a):
    I = rf.ideal(a.ideal)
    cl = _closure(a)
    rep = enumerate_minimal_reductions(I, cl, dim_bound=a.dim_bound, detail=a.detail)
    audit = spread_consistency_audit(I, cl, rep)
    out = rep.to_json()
    out["audit"] = audit
    return out, True


def cmd_independent(rf, a):
    if not a.elem:
        raise UsageError("give at least one --elem")
    R = rf.ring
    rep = independence([R(e) for e in a.elem], _closure(a), R.maximal_ideal())
    return rep, True


def cmd_strongindependent(rf, a):
    v = strong_independence(rf.ideal(a.ideal), _closure(a))
    return {"ideal": a.ideal, **v.to_json()}, True


def cmd_sptc(rf, a):
    v = sptc_member(_elem(rf, a.elem), rf.ideal(a.ideal), _emax(a))
    return {"ideal": a.ideal, "elem": a.elem, **v.to_json()}, True


def cmd_sptcideal(rf, a):
    return sptc_approx_ideal(rf.ideal(a.ideal), _emax(a), a.confirm).to_json(), True


def cmd_decompose(rf, a):
    rep = decomposition_check(rf.ideal(a.ideal), _emax(a), sp_depth=a.sp_depth)
    return rep, rep["status"] == "found"


def cmd_audit(rf, a):
    I = rf.ideal(a.ideal)
    J = rf.ideal(a.sub) if a.sub else I
    if a.kind == "axioms":
        cl = _closure(a)
        rep = closure_axiom_audit(cl, [(J, I)])
        rep["log"] = audit_instance_log(cl)
    elif a.kind == "nakayama":
        rep = nakayama_audit(I, J, _closure(a))
    else:
        rep = sp_lemma_audit(I, _emax(a, 3), J=J if a.sub else None)
    return rep, True


def cmd_corpus(rf, a):
    from .corpus import list_cases, run_corpus

    if a.action == "list":
        return {"cases": list_cases()}, True
    sel = None if (not a.cases or a.cases == ["all"]) else a.cases
    rep = run_corpus(sel, jobs=a.jobs, root=a.root)
    return rep, rep["status"] == "pass"


HANDLERS = {
    "gb": cmd_gb, "member": cmd_member, "bracket": cmd_bracket, "froot": cmd_froot,
    "fclosure": cmd_fclosure, "intmember": cmd_intmember, "newton": cmd_newton,
    "tcevidence": cmd_tcevidence, "colonprofile": cmd_colonprofile, "reduce": cmd_reduce,
    "minreduce": cmd_minreduce, "spread": cmd_spread, "independent": cmd_independent,
    "strongindependent": cmd_strongindependent, "sptc": cmd_sptc, "sptcideal": cmd_sptcideal,
    "decompose": cmd_decompose, "audit": cmd_audit, "corpus": cmd_corpus,
}


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help="ring description file")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--budget", type=int, default=None, help="reduction step budget")
    common.add_argument("--e-max", type=int, default=None)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--confirm", type=int, default=2)
    common.add_argument("--closure", choices=CLOSURE_NAMES, default="identity")
    common.add_argument("--radical-bound", action="store_true",
                        help="let the bounded integral oracle certify OUT through the radical")

    p = _Parser(prog="charp", description="Ideal closures in characteristic p.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *opts):
        s = sub.add_parser(name, parents=[common], help=help_)
        for o in opts:
            if o == "ideal":
                s.add_argument("--ideal", required=True)
            elif o == "elem":
                s.add_argument("--elem", required=True)
            elif o == "e":
                s.add_argument("--e", type=int, required=True)
            elif o == "sub":
                s.add_argument("--sub", default=None, help="name of the smaller ideal J")
            elif o == "erange":
                s.add_argument("--e-lo", type=int, default=1)
                s.add_argument("--e-hi", type=int, default=4)
        return s

    add("gb", "reduced Gröbner basis of ideal + relations", "ideal")
    add("member", "membership in cl(I) (default: I itself)", "ideal", "elem")
    add("bracket", "Frobenius bracket power I^[p^e]", "ideal", "e")
    add("froot", "Frobenius root {f : f^(p^e) in I}", "ideal", "e")
    add("fclosure", "Frobenius closure chain", "ideal")
    add("intmember", "bounded search for integral dependence", "ideal", "elem")
    add("newton", "integral closure of a monomial ideal", "ideal")
    s = add("tcevidence", "tight closure evidence", "ideal", "elem", "erange")
    s.add_argument("--c", default=None, help="test element candidate (default 1)")
    add("colonprofile", "colon ideals I^[q] : f^q and their depth", "ideal", "elem", "erange")
    add("reduce", "is SUB a cl-reduction of IDEAL", "ideal", "sub")
    s = add("minreduce", "minimal cl-reduction inside SUB (default IDEAL)", "ideal", "sub")
    s.add_argument("--mode", choices=("exhaustive", "greedy", "descent"), default="exhaustive")
    s = add("spread", "enumerate minimal reductions and the spread", "ideal")
    s.add_argument("--dim-bound", type=int, default=6)
    s.add_argument("--detail", action="store_true", help="list every subspace")
    s = sub.add_parser("independent", parents=[common], help="cl-independence of elements")
    s.add_argument("--elem", action="append", default=[])
    add("strongindependent", "strong cl-independence of an ideal", "ideal")
    add("sptc", "special part membership", "ideal", "elem")
    add("sptcideal", "special part approximation stages", "ideal")
    s = add("decompose", "search q' for the decomposition of the closure", "ideal")
    s.add_argument("--sp-depth", type=int, default=1)
    s = add("audit", "axiom / Nakayama / special-part audits", "ideal", "sub")
    s.add_argument("--kind", choices=("axioms", "nakayama", "sp"), default="axioms")
    s = sub.add_parser("corpus", parents=[common], help="run the bundled example corpus")
    s.add_argument("action", choices=("run", "list"))
    s.add_argument("cases", nargs="*")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--root", default=None, help="corpus directory (default: bundled)")
    return p


# --------------------------------------------------------------------------
# execution


def execute(argv, ring_override=None):
    """Run one command; returns (exit_code, payload dict).  Never raises."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, {"schema": SCHEMA, "error": {"type": "usage", "message": str(exc)}}
    cmd = args.command
    try:
        for k in ("e_max", "n_max", "budget"):
            v = getattr(args, k)
            if v is not None and v < (0 if k == "e_max" else 1):
                raise UsageError(f"--{k.replace('_', '-')} must be positive")
        if args.confirm < 1:
            raise UsageError("--confirm must be positive")
        rf = None
        if cmd != "corpus":
            ring = ring_override or args.ring
            if not ring:
                raise UsageError("--ring is required")
            rf = load_ring(ring)
        if args.budget is not None:
            with step_budget(args.budget):
                result, ok = HANDLERS[cmd](rf, args)
        else:
            result, ok = HANDLERS[cmd](rf, args)
        code = EXIT_OK if ok else EXIT_ASSERT
        return code, {"schema": SCHEMA, "command": cmd, "result": result}
    except BUDGET_ERRORS as exc:
        return EXIT_BUDGET, _err(cmd, "budget", exc)
    except ASSERTION_ERRORS as exc:
        payload = _err(cmd, "assertion", exc)
        dump = getattr(exc, "dump", None) or getattr(exc, "counterexample", None)
        if dump:
            payload["error"]["dump"] = dump
        return EXIT_ASSERT, payload
    except UsageError as exc:
        return EXIT_USAGE, _err(cmd, "usage", exc)
    except USAGE_ERRORS as exc:
        return EXIT_USAGE, _err(cmd, "input", exc)


def _err(cmd, kind, exc):
    return {"schema": SCHEMA, "command": cmd, "error": {"type": kind, "class": type(exc).__name__,
                                                        "message": str(exc)}}


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=str)


def render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, list) and v and all(not isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}: " + render_text(v).strip())
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + "[" + ", ".join(_scalar(v) for v in obj) + "]"
        return "\n".join(pad + "-\n" + render_text(v, indent + 1) for v in obj)
    return pad + _scalar(obj)


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    want_json = "--json" in argv
    code, payload = execute(argv)
    if "error" in payload:
        if want_json:
            print(dumps(payload), file=sys.stderr)
        else:
            print(f"error: {payload['error']['message']}", file=sys.stderr)
        if code == EXIT_ASSERT and not want_json and "dump" in payload["error"]:
            print(render_text(payload["error"]["dump"]), file=sys.stderr)
        return code
    if want_json:
        print(dumps(payload))
    else:
        print(render_text(payload["result"]))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
