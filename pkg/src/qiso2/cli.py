"""Command line surface.

Every subcommand resolves its parameters the same way: --mode exact works
symbolically (s and r stay indeterminates unless given as exact
expressions), --mode numeric needs --q and takes complex literals.  Output
rows render as text, json, or csv; exact scalars always travel as strings.

Exit codes: 0 clean, 1 a verification found a violation, 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .analysis import (
    block_params_equivalent,
    canonical_weight_params,
    classify_weight_parameter,
    find_intertwiner,
    spectrum_of_rotation,
    weight_params_equivalent,
)
from .errors import ParseError, QError, WindowError
from .exprs import format_element, format_scalar, normal_form, parse_element, scalar_from_text
from .freealg import (
    ISO2,
    check_confluence,
    iso2_cubic_relations,
    iso2_defining_relations,
    iso2_rules_broken,
    letter_name,
    m2hat_defining_relations,
    nf_iso2,
)
from .morphism import build_psi, check_homomorphism_samples, verify_relations
from .repmod import (
    EXACT,
    Field,
    Window,
    casimir_of,
    casimir_single_vector,
    check_relations_on_rep,
    compare_ops,
    decompose_degenerate,
    nonclassical_rep,
    reconstruct_from_seed,
    weight_rep_iso2,
    weight_rep_m2hat,
)
from .scalars import RVAR, SVAR, Scalar


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parameter resolution


def _field(args) -> Field:
    if args.mode == "exact":
        return EXACT
    if args.q is None:
        raise UsageError("--mode numeric needs --q")
    return Field.numeric(_numeric(args.q), tol=args.tol)


def _numeric(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise UsageError("cannot read %r as a number" % (text,))


def _value(text, args, name, default=None):
    if text is None:
        if default is None:
            raise UsageError("%s is required in numeric mode" % name)
        return default
    if args.mode == "exact":
        return scalar_from_text(text)
    return _numeric(text)


def _s_value(args):
    return _value(args.s, args, "--s", SVAR if args.mode == "exact" else None)


def _r_value(args):
    return _value(args.r, args, "--r", RVAR if args.mode == "exact" else None)


def _window(args) -> Window:
    # a bad --window value is a usage mistake, not a library refusal
    try:
        return Window.from_string(args.window)
    except WindowError as exc:
        raise UsageError(str(exc))


def _fmt_val(v) -> str:
    return str(v) if isinstance(v, complex) else format_scalar(v)


def _fmt_witness(w) -> str:
    # str() on a tuple would show the scalars inside in raw t-form
    if isinstance(w, tuple):
        return "(%s)" % ", ".join(_fmt_witness(x) for x in w)
    if isinstance(w, Scalar):
        return format_scalar(w)
    return str(w)


# ---------------------------------------------------------------------------
# output


def _emit(rows, fmt):
    if fmt == "json":
        print(json.dumps(rows, indent=2, default=str))
        return
    if fmt == "csv":
        if not rows:
            return
        keys = list(rows[0])
        w = csv.writer(sys.stdout)
        w.writerow(keys)
        for row in rows:
            w.writerow([str(row.get(k, "")) for k in keys])
        return
    for row in rows:
        print("  ".join("%s=%s" % (k, v) for k, v in row.items()))


def _report(rows, fmt) -> int:
    _emit(rows, fmt)
    return 0 if all(r.get("status", "pass") == "pass" for r in rows) else 1


# ---------------------------------------------------------------------------
# subcommands


def _cmd_nf(args) -> int:
    x = normal_form(args.expr, args.algebra)
    print(format_element(x))
    return 0


def _cmd_confluence(args) -> int:
    algebra = ISO2 if args.algebra == "iso2" else "m2hat"
    rules = iso2_rules_broken() if args.ruleset == "broken" else None
    failures = check_confluence(algebra, rules=rules)
    rows = [{"check": "confluence:%s" % (args.algebra,),
             "status": "pass" if not failures else "fail",
             "witness": "" if not failures else repr([f[0] for f in failures])}]
    return _report(rows, args.fmt)


def _cmd_psi(args) -> int:
    psi = build_psi()
    if args.expr is not None:
        img = psi.apply(nf_iso2(parse_element(args.expr, "iso2")))
        print(format_element(img))
        return 0
    rows = [{"generator": g, "image": format_element(psi.images[g])}
            for g in ("I", "T1", "T2")]
    rows.append({"generator": "(selection)",
                 "image": "binding=%s ladder_sign=%d" % (psi.meta["binding"], psi.meta["ladder_sign"])})
    _emit(rows, args.fmt)
    return 0


def _verify_relations(args) -> list:
    field = _field(args)
    w = _window(args)
    s, r = _s_value(args), _r_value(args)
    if args.algebra == "iso2":
        ops = weight_rep_iso2(w, s, r, field)
        rels = iso2_defining_relations() + iso2_cubic_relations()
    else:
        ops = weight_rep_m2hat(w, s, r, field)
        rels = m2hat_defining_relations(kmin=-2, kmax=2)
    sn = s if field.kind == "numeric" else None
    rn = r if field.kind == "numeric" else None
    out = []
    for row in check_relations_on_rep(rels, ops, w, field, s=sn, r=rn):
        out.append({"check": "relation:%s" % row["name"],
                    "status": "pass" if row["ok"] else "fail",
                    "witness": "" if row["ok"] else _fmt_witness(row["witness"])})
    return out


def _verify_psi(args) -> list:
    psi = build_psi()
    rows = []
    for row in verify_relations(psi):
        rows.append({"check": "psi-relation:%s" % row["name"],
                     "status": "pass" if row["ok"] else "fail",
                     "witness": row["witness"] or ""})
    fails = check_homomorphism_samples(psi, n=args.samples, seed=23)
    rows.append({"check": "psi-multiplicative:%d-samples" % args.samples,
                 "status": "pass" if not fails else "fail",
                 "witness": "" if not fails else format_element(fails[0][0])})
    rows.append({"check": "psi-selection",
                 "status": "pass" if psi.meta["binding"] == "natural" else "fail",
                 "witness": "ladder_sign=%d" % psi.meta["ladder_sign"]})
    return rows


def _verify_casimir(args) -> list:
    field = _field(args)
    w = _window(args)
    s, r = _s_value(args), _r_value(args)
    sn = s if field.kind == "numeric" else None
    rn = r if field.kind == "numeric" else None
    ops = weight_rep_iso2(w, s, r, field)
    value, ok, _ = casimir_of(ops, w, field, s=sn, r=rn)
    rows = [{"check": "casimir-scalar", "status": "pass" if ok else "fail",
             "witness": _fmt_val(value) if value is not None else ""}]
    oracle = casimir_single_vector(field, s, r, (w.lo + w.hi) // 2)
    rows.append({"check": "casimir-oracle-match",
                 "status": "pass" if value is not None and field.eq(oracle, value) else "fail",
                 "witness": _fmt_val(oracle)})
    w2 = Window(w.lo - 2, w.hi + 2)
    ops2 = weight_rep_iso2(w2, s, r, field)
    value2, ok2, _ = casimir_of(ops2, w2, field, s=sn, r=rn)
    same = ok2 and value is not None and value2 is not None and field.eq(value2, value)
    rows.append({"check": "casimir-window-independent",
                 "status": "pass" if same else "fail",
                 "witness": _fmt_val(value2) if value2 is not None else ""})
    return rows


def _verify_decompose(args) -> list:
    field = _field(args)
    if args.s is None:
        cls = {"kind": "reducible", "m": 0, "sign": 1}
    else:
        cls = classify_weight_parameter(_s_value(args), field)
    if cls["kind"] != "reducible":
        raise UsageError("decompose needs s on the half-odd ladder (got %s)" % cls["kind"])
    r = None if field.kind == "exact" else _r_value(args)
    dec = decompose_degenerate(cls["m"], cls["sign"], r=r, j_max=args.jmax, field=field)
    rows = [{"check": "decompose-pairing",
             "status": "pass" if dec["pairing_consistent"] else "fail", "witness": ""}]
    rr = RVAR if r is None else r
    for et in (1, -1):
        ref = nonclassical_rep(args.jmax, rr, cls["sign"], et, field)
        ok_all = True
        wit = ""
        for g in ("I", "T1", "T2"):
            ok, w = compare_ops(dec["blocks"][et][g], ref[g], cols=dec["block_cols"])
            if not ok:
                ok_all = False
                wit = "%s %r" % (g, w)
        rows.append({"check": "decompose-block-match:%+d" % et,
                     "status": "pass" if ok_all else "fail", "witness": wit})
    return rows


def _verify_reconstruct(args) -> list:
    field = _field(args)
    s = _s_value(args)
    r = _r_value(args) if args.r is not None else None
    if args.c is not None:
        c = scalar_from_text(args.c) if field.kind == "exact" else _numeric(args.c)
    else:
        rr = r if r is not None else _r_value(args)
        c = rr * rr
    rec = reconstruct_from_seed(c, s, steps_up=args.steps, steps_down=args.steps,
                                r_val=r, field=field)
    rows = []
    ok_rel = all(row["ok"] for row in rec["relations"])
    rows.append({"check": "reconstruct-relations",
                 "status": "pass" if ok_rel else "fail", "witness": ""})
    rows.append({"check": "reconstruct-casimir-seed",
                 "status": "pass" if rec["casimir_matches_seed"] else "fail",
                 "witness": _fmt_val(rec["casimir_value"])})
    rows.append({"check": "reconstruct-rescale",
                 "status": "pass" if rec["rescaled_matches"] else "fail",
                 "witness": "" if rec["rescaled_matches"]
                else _fmt_witness(rec["rescale_witness"])})
    rows.append({"check": "reconstruct-mirrored-variant-breaks",
                 "status": "pass" if rec["mirrored_lowering_breaks_relations"] else "fail",
                 "witness": ""})
    return rows


def _cmd_verify(args) -> int:
    which = args.what
    rows = []
    if which in ("relations", "all"):
        rows += _verify_relations(args)
    if which in ("psi", "all"):
        rows += _verify_psi(args)
    if which in ("casimir", "all"):
        rows += _verify_casimir(args)
    if which in ("decompose", "all"):
        rows += _verify_decompose(args)
    if which in ("reconstruct", "all"):
        rows += _verify_reconstruct(args)
    return _report(rows, args.fmt)


def _cmd_rep(args) -> int:
    field = _field(args)
    w = _window(args)
    s, r = _s_value(args), _r_value(args)
    what = args.what
    if what == "matrix":
        if args.algebra == "iso2":
            ops = weight_rep_iso2(w, s, r, field)
        else:
            ops = weight_rep_m2hat(w, s, r, field)
        rows = []
        for g in sorted(ops, key=str):
            for col in ops[g].valid_cols():
                for row_i in sorted(ops[g].cols[col]):
                    rows.append({"generator": letter_name(g), "row": row_i, "col": col,
                                 "value": _fmt_val(ops[g].cols[col][row_i])})
        _emit(rows, args.fmt)
        return 0
    if what == "spectrum":
        eigs = spectrum_of_rotation(s, r, w, field)
        rows = [{"index": m, "value": _fmt_val(v)} for m, v in sorted(eigs.items())]
        _emit(rows, args.fmt)
        return 0
    if what == "casimir":
        return _report(_verify_casimir(args), args.fmt)
    if what == "decompose":
        return _report(_verify_decompose(args), args.fmt)
    if what == "reconstruct":
        return _report(_verify_reconstruct(args), args.fmt)
    raise UsageError("unknown rep action %r" % (what,))


def _cmd_classify(args) -> int:
    field = _field(args)
    cls = classify_weight_parameter(_s_value(args), field)
    _emit([cls], args.fmt)
    return 0


def _cmd_equiv(args) -> int:
    field = _field(args)
    if args.s2 is None or args.r2 is None:
        raise UsageError("equiv needs --s2 and --r2")
    ok = weight_params_equivalent(
        _s_value(args), _r_value(args),
        _value(args.s2, args, "--s2"), _value(args.r2, args, "--r2"), field)
    _emit([{"equivalent": ok}], args.fmt)
    return 0


def _cmd_canon(args) -> int:
    field = _field(args)
    s_can, r_can = canonical_weight_params(_s_value(args), _r_value(args), field)
    _emit([{"s": _fmt_val(s_can), "r": _fmt_val(r_can)}], args.fmt)
    return 0


def _cmd_intertwine(args) -> int:
    if args.mode != "numeric":
        raise UsageError("intertwine is numeric; pass --mode numeric --q ...")
    if args.q is None or args.s is None or args.r is None or args.s2 is None or args.r2 is None:
        raise UsageError("intertwine needs --q --s --r --s2 --r2")
    w = _window(args)
    res = find_intertwiner(
        (_numeric(args.s), _numeric(args.r)),
        (_numeric(args.s2), _numeric(args.r2)),
        (w.lo, w.hi), _numeric(args.q), tol=args.tol)
    _emit([{"residual": res["residual"], "found": res["matrix"] is not None}], args.fmt)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _common(sub):
    sub.add_argument("--algebra", choices=["iso2", "m2", "m2hat"], default="iso2")
    sub.add_argument("--mode", choices=["exact", "numeric"], default="exact")
    sub.add_argument("--q", default=None)
    sub.add_argument("--s", default=None)
    sub.add_argument("--r", default=None)
    sub.add_argument("--s2", default=None)
    sub.add_argument("--r2", default=None)
    sub.add_argument("--c", default=None, help="seed constant for reconstruction")
    sub.add_argument("--window", default="-8:8")
    sub.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="text")
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--samples", type=int, default=20)
    sub.add_argument("--steps", type=int, default=6)
    sub.add_argument("--jmax", type=int, default=6)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qiso2",
        description="exact computation in the q-deformed euclidean algebra and its localized partner",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    s_nf = sub.add_parser("nf", help="normal form of an expression")
    s_nf.add_argument("expr")
    _common(s_nf)
    s_nf.set_defaults(run=_cmd_nf)

    s_conf = sub.add_parser("confluence", help="overlap check of the rewriting rules")
    s_conf.add_argument("--ruleset", choices=["standard", "broken"], default="standard")
    _common(s_conf)
    s_conf.set_defaults(run=_cmd_confluence)

    s_psi = sub.add_parser("psi", help="the embedding into the localized algebra")
    s_psi.add_argument("expr", nargs="?", default=None)
    _common(s_psi)
    s_psi.set_defaults(run=_cmd_psi)

    s_ver = sub.add_parser("verify", help="machine verification suites")
    s_ver.add_argument("what", choices=["relations", "psi", "casimir", "decompose", "reconstruct", "all"])
    _common(s_ver)
    s_ver.set_defaults(run=_cmd_verify)

    s_rep = sub.add_parser("rep", help="weight family data")
    s_rep.add_argument("what", choices=["matrix", "spectrum", "casimir", "decompose", "reconstruct"])
    _common(s_rep)
    s_rep.set_defaults(run=_cmd_rep)

    s_cls = sub.add_parser("classify", help="position of s relative to the degenerate ladders")
    _common(s_cls)
    s_cls.set_defaults(run=_cmd_classify)

    s_eq = sub.add_parser("equiv", help="equivalence of two parameter pairs")
    _common(s_eq)
    s_eq.set_defaults(run=_cmd_equiv)

    s_can = sub.add_parser("canon", help="canonical parameter representative")
    _common(s_can)
    s_can.set_defaults(run=_cmd_canon)

    s_int = sub.add_parser("intertwine", help="numeric intertwiner search")
    _common(s_int)
    s_int.set_defaults(run=_cmd_intertwine)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, ParseError) as e:
        print("usage error: %s" % (e,), file=sys.stderr)
        return 2
    except QError as e:
        print("error: %s" % (e,), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
