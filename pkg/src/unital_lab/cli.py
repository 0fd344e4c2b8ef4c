"""Command line interface: ``unital-lab <command> --q Q ...``.

Every command prints one JSON document (to stdout or ``--out``).  Exit codes:
0 success, 2 invalid parameters, 3 invariant violation, 4 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import construct, onan, search, serial
from .gfield import FieldCtx, FieldError, OrderTooLarge, ctx_for_order
from .unital import InvalidParamsError, Unital, equivalence_classes, equivalent_params, is_valid, validate

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT, EXIT_CAP = 0, 2, 3, 4


class InvariantFailure(Exception):
    def __init__(self, message: str, doc: dict | None = None):
        super().__init__(message)
        self.doc = doc


@dataclass
class RunConfig:
    command: str
    q: int
    a_spec: str = "square"
    b_spec: str = "auto"
    out: str | None = None
    threads: int = 1
    seed: int = 0


def parse_q(text: str) -> int:
    if "^" in text:
        p, e = text.split("^")
        return int(p) ** int(e)
    return int(text)


def parse_elem(ctx: FieldCtx, text: str) -> int:
    """'c0,c1' or 'c0' (an element of GF(q))."""
    parts = [int(v) for v in text.split(",")]
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2:
        raise InvalidParamsError(f"cannot parse element {text!r}")
    try:
        return ctx.index(*parts)
    except ValueError as exc:
        raise InvalidParamsError(str(exc)) from exc


def resolve_a(ctx: FieldCtx, text: str) -> int:
    if text in ("conic", "nonsquare"):
        return ctx.g
    if text == "square":
        return 1
    return parse_elem(ctx, text)


def resolve_b(ctx: FieldCtx, a: int, a_spec: str, b_spec: str) -> int:
    if a_spec == "conic":
        if b_spec not in ("auto", "0", "0,0"):
            raise InvalidParamsError("the conic unital has b = 0")
        return 0
    if b_spec != "auto":
        return parse_elem(ctx, b_spec)
    # least valid b, trying 0 first and then b1*e
    for b in [0] + [ctx.index(0, b1) for b1 in range(1, ctx.q)]:
        if is_valid(ctx, a, b):
            return b
    raise InvalidParamsError(f"no valid b of the form b1*e for a = {ctx.coords(a)} at q = {ctx.q}")


def _unital(cfg: RunConfig) -> tuple[FieldCtx, Unital]:
    ctx = ctx_for_order(cfg.q)
    a = resolve_a(ctx, cfg.a_spec)
    b = resolve_b(ctx, a, cfg.a_spec, cfg.b_spec)
    return ctx, Unital(validate(ctx, a, b))


def _envelope(ctx: FieldCtx, command: str, **body) -> dict:
    return {"command": command, "ctx": ctx.header(), **body}


# -- commands --

def cmd_unital(cfg: RunConfig) -> dict:
    ctx, U = _unital(cfg)
    census = U.line_census()
    sizes, counts = np.unique(census, return_counts=True)
    profile = {str(int(s)): int(n) for s, n in zip(sizes, counts)}
    doc = _envelope(
        ctx,
        "unital",
        params=U.params.describe(),
        points=len(U),
        line_profile=profile,
    )
    if len(U) != ctx.q**3 + 1 or set(profile) - {"1", str(ctx.q + 1)}:
        raise InvariantFailure("unital integrity check failed", doc)
    return doc


def cmd_construct(cfg: RunConfig, method: str, b1: int | None = None) -> dict:
    ctx = ctx_for_order(cfg.q)
    if method == "fengli":
        return _fengli(cfg)
    if method == "conic":
        tp = construct.conic_construction(ctx)
    elif method == "asq14":
        tp = construct.asq14_construction(ctx, b1)
    elif method == "q3asq":
        tp = construct.q3_construction(ctx, b1)
    else:
        raise InvalidParamsError(f"unknown method {method}")
    U = Unital.from_params(ctx, tp.a, tp.b)
    v = onan.verify_params(U, tp)
    eq_ok, failed = onan.check_equations(tp)
    cfgd = onan.realize(tp)
    cfgd.bm_special = v.bm_special
    doc = serial.config_to_dict(
        ctx, tp.a, tp.b, cfgd, tp,
        command="construct",
        method=method,
        verified=bool(v),
        reasons=v.reasons,
        equations_ok=eq_ok,
    )
    if not (v and eq_ok):
        raise InvariantFailure(f"construction did not verify: {v.reasons + failed}", doc)
    return doc


def _fengli(cfg: RunConfig) -> dict:
    a_spec = cfg.a_spec
    ctx, U = _unital(cfg)
    if U.params.classical:
        raise InvalidParamsError("the construction needs a non-classical unital")
    items = []
    for fl in onan.feng_li_scan(U):
        diag = onan.fl_diagonals(U, fl)
        ext = onan.extend_onan(U, fl.config)
        items.append(
            serial.onan_to_dict(
                ctx, U.a, U.b, fl.config,
                lam=[fl.lam1, fl.lam2],
                diagonals={n: serial.enc_triple(ctx, getattr(diag, n)) for n in ("I0", "I1", "I2")},
                diagonals_in_unital=list(diag.in_unital),
                diagonal_closed_forms=diag.closed_form_ok,
                extends=bool(ext),
            )
        )
    doc = _envelope(
        ctx,
        "construct",
        method="fengli",
        a_spec=a_spec,
        params=U.params.describe(),
        count=len(items),
        extends=any(i["extends"] for i in items),
        onans=items,
    )
    if doc["extends"] or any(any(i["diagonals_in_unital"]) for i in items):
        raise InvariantFailure("a Feng-Li O'Nan extends to a Triple O'Nan", doc)
    return doc


def cmd_search(cfg: RunConfig, with_configs: bool = False) -> dict:
    ctx, U = _unital(cfg)
    try:
        reps, report = search.canonical_search(U, cfg.threads)
    except search.InvarianceViolation as exc:
        raise InvariantFailure(str(exc)) from exc
    doc = _envelope(ctx, "search", params=U.params.describe(), report=report.to_dict())
    doc["count"] = report.config_count
    if with_configs:
        out = []
        for tp in reps:
            c = onan.realize(tp)
            c.bm_special = True
            out.append(serial.config_to_dict(ctx, tp.a, tp.b, c, tp))
        doc["configs"] = out
    return doc


def cmd_count(cfg: RunConfig, character: str) -> dict:
    ctx = ctx_for_order(cfg.q)
    a = 1 if character == "square" else ctx.g
    pairs = [(a, b) for b in [0] + [ctx.index(0, b1) for b1 in range(1, ctx.q)] if is_valid(ctx, a, b)]
    if not pairs:
        raise InvalidParamsError(f"no valid b for a {character} at q = {ctx.q}")
    try:
        n = search.count_invariance_check(ctx, pairs, cfg.threads)
    except search.InvarianceViolation as exc:
        raise InvariantFailure(str(exc)) from exc
    return _envelope(
        ctx,
        "count",
        a=serial.enc(ctx, a),
        a_square=character == "square",
        b_values=[serial.enc(ctx, b) for _, b in pairs],
        count=n,
        total=ctx.q**3 * n,
    )


def cmd_cyclotomic(cfg: RunConfig, order: int) -> dict:
    ctx = ctx_for_order(cfg.q)
    if order == 4 and ctx.q % 4 != 1:
        raise InvalidParamsError("order-4 numbers need q = 1 mod 4")
    tab = construct.cyclotomic(ctx, order)
    bad = construct.baumert_violations(tab)
    doc = _envelope(ctx, "cyclotomic", order=order, table=tab.matrix.tolist(), violations=bad)
    if order == 4:
        formula, direct = construct.count_conic_xy_pairs(ctx)
        doc.update(ells=list(construct.ells(tab)), n_formula=formula, n_direct=direct)
        if formula != direct:
            bad.append("n formula != direct count")
    else:
        doc["multiset"] = sorted(int(v) for v in tab.matrix.ravel())
        if ctx.q % 4 == 3:
            doc["q3_type_pairs"] = construct.q3_type_pair_count(ctx)
    if bad:
        raise InvariantFailure("; ".join(bad), doc)
    return doc


def cmd_equiv(cfg: RunConfig, other: tuple[str, str] | None) -> dict:
    ctx = ctx_for_order(cfg.q)
    if other is None:
        classes = equivalence_classes(ctx)
        return _envelope(
            ctx,
            "equiv",
            classes=len(classes),
            representatives=[
                {"a": serial.enc(ctx, a), "b": serial.enc(ctx, b), "size": len(cl)}
                for cl in classes
                for a, b in [cl[0]]
            ],
        )
    _, U = _unital(cfg)
    a2 = parse_elem(ctx, other[0])
    b2 = parse_elem(ctx, other[1])
    validate(ctx, a2, b2)
    wit = equivalent_params(ctx, U.a, U.b, a2, b2)
    return _envelope(
        ctx,
        "equiv",
        source={"a": serial.enc(ctx, U.a), "b": serial.enc(ctx, U.b)},
        target={"a": serial.enc(ctx, a2), "b": serial.enc(ctx, b2)},
        equivalent=wit is not None,
        witness=None if wit is None else {
            "v": serial.enc(ctx, wit.v), "gamma": serial.enc(ctx, wit.gamma),
            "u": serial.enc(ctx, wit.u), "tau": wit.tau,
        },
    )


def cmd_points(cfg: RunConfig) -> dict:
    """F and E points over every canonical configuration of the unital."""
    ctx, U = _unital(cfg)
    reps, _ = search.canonical_search(U, cfg.threads)
    f_ok = all(onan.f_point(U, tp).in_unital for tp in reps)
    f_closed = all(onan.f_point(U, tp).matches_closed_form for tp in reps)
    rows = onan.e_point_experiment(U, reps)
    doc = _envelope(
        ctx,
        "points",
        params=U.params.describe(),
        configs=len(reps),
        f_in_unital=f_ok,
        f_closed_form=f_closed,
        e_in_unital=sum(bool(r["E_in_unital"]) for r in rows),
        e_closed_form=all(r["matches_closed_form"] for r in rows),
        e_variant_form=sum(bool(r["matches_variant_form"]) for r in rows),
    )
    if not f_ok:
        raise InvariantFailure("F outside the unital", doc)
    return doc


# -- entry point --

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unital-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, unital=True):
        p.add_argument("--q", required=True, type=parse_q, help="odd prime power, e.g. 7 or 3^2")
        if unital:
            p.add_argument("--a", default="square", help="square | nonsquare | conic | c0[,c1]")
            p.add_argument("--b", default="auto", help="auto | c0[,c1]")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("unital", help="build a unital and check its line profile"))
    p = sub.add_parser("construct", help="run one of the explicit constructions")
    common(p)
    p.add_argument("--method", required=True, choices=["conic", "asq14", "q3asq", "fengli"])
    p.add_argument("--b1", type=int, default=None)
    p = sub.add_parser("search", help="exhaustive canonical-frame search")
    common(p)
    p.add_argument("--configs", action="store_true", help="include every configuration")
    p = sub.add_parser("count", help="check the count depends only on the character of a")
    common(p, unital=False)
    p.add_argument("--character", choices=["square", "nonsquare"], default="square")
    p = sub.add_parser("cyclotomic", help="cyclotomic numbers and their identities")
    common(p, unital=False)
    p.add_argument("--order", type=int, choices=[2, 4], default=2)
    p = sub.add_parser("equiv", help="equivalence classes of (a, b)")
    common(p)
    p.add_argument("--with", dest="other", nargs=2, metavar=("A2", "B2"))
    common(sub.add_parser("points", help="F and E point report over all configurations"))
    return ap


def run(args: argparse.Namespace) -> dict:
    cfg = RunConfig(
        command=args.command,
        q=args.q,
        a_spec=getattr(args, "a", "square"),
        b_spec=getattr(args, "b", "auto"),
        out=args.out,
        threads=args.threads,
        seed=args.seed,
    )
    if args.command == "unital":
        return cmd_unital(cfg)
    if args.command == "construct":
        if args.method == "fengli" and args.a == "square" and args.b == "auto":
            cfg.a_spec = "conic"
        return cmd_construct(cfg, args.method, args.b1)
    if args.command == "search":
        return cmd_search(cfg, args.configs)
    if args.command == "count":
        return cmd_count(cfg, args.character)
    if args.command == "cyclotomic":
        return cmd_cyclotomic(cfg, args.order)
    if args.command == "equiv":
        return cmd_equiv(cfg, args.other)
    return cmd_points(cfg)


def _emit(doc: dict, out: str | None) -> None:
    text = serial.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = run(args)
    except (OrderTooLarge, search.ResourceCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantFailure as exc:
        if exc.doc is not None:
            _emit(exc.doc, args.out)
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (FieldError, InvalidParamsError, search.ClassicalUnitalError, construct.NoConstruction, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(doc, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
