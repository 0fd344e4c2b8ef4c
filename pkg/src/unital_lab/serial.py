"""JSON encoding of field elements, configurations and reports.

Every document carries the field header (p, exp, q, w, g, poly), so a reader
can rebuild the context and re-verify.  Field elements are coordinate pairs
[c0, c1] meaning c0 + c1*e; for exp > 1 each coordinate is the base-p digit
encoding of a polynomial modulo ``poly``.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .gfield import FieldCtx, FieldError, make_ctx
from .onan import LABELS, LINE_NAMES, TripleOnanConfig, TripleOnanParams
from .plane import ProjLine, ProjPoint

_PAIR = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}
_TRIPLE = {"type": "array", "items": _PAIR, "minItems": 3, "maxItems": 3}

CTX_SCHEMA = {
    "type": "object",
    "required": ["p", "exp", "q", "w", "g", "poly"],
    "properties": {
        "p": {"type": "integer"},
        "exp": {"type": "integer", "minimum": 1},
        "q": {"type": "integer"},
        "w": {"type": "integer"},
        "g": _PAIR,
        "poly": {"type": ["array", "null"], "items": {"type": "integer"}},
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["ctx", "q", "p", "exp", "a", "b", "points", "lines", "bm_special"],
    "properties": {
        "ctx": CTX_SCHEMA,
        "q": {"type": "integer"},
        "p": {"type": "integer"},
        "exp": {"type": "integer"},
        "a": _PAIR,
        "b": _PAIR,
        "points": {
            "type": "object",
            "required": list(LABELS),
            "properties": {n: _TRIPLE for n in LABELS},
            "additionalProperties": False,
        },
        "lines": {"type": "array", "items": _TRIPLE, "minItems": 6, "maxItems": 6},
        "bm_special": {"type": "boolean"},
        "params": {"type": "object", "properties": {n: _PAIR for n in "abxkhst"}},
        "verified": {"type": "boolean"},
    },
}

ONAN_SCHEMA = {
    "type": "object",
    "required": ["ctx", "a", "b", "lines", "points"],
    "properties": {
        "ctx": CTX_SCHEMA,
        "a": _PAIR,
        "b": _PAIR,
        "lines": {"type": "array", "items": _TRIPLE, "minItems": 4, "maxItems": 4},
        "points": {"type": "object", "additionalProperties": _TRIPLE},
    },
}


class SchemaError(ValueError):
    pass


def enc(ctx: FieldCtx, x: int) -> list[int]:
    return list(ctx.coords(x))


def dec(ctx: FieldCtx, pair) -> int:
    c0, c1 = pair
    if not (0 <= c0 < ctx.q and 0 <= c1 < ctx.q):
        raise SchemaError(f"coordinate pair {pair} out of range for q = {ctx.q}")
    return ctx.index(c0, c1)


def enc_triple(ctx: FieldCtx, v) -> list[list[int]]:
    return [enc(ctx, c) for c in v]


def dec_triple(ctx: FieldCtx, v) -> tuple[int, int, int]:
    return tuple(dec(ctx, c) for c in v)


def ctx_from_header(h: dict) -> FieldCtx:
    jsonschema.validate(h, CTX_SCHEMA)
    ctx = make_ctx(h["p"], h["exp"])
    if ctx.header() != h:
        raise FieldError(f"header {h} does not match the rebuilt context {ctx.header()}")
    return ctx


def _validate(doc: dict, schema: dict) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc


def config_to_dict(ctx: FieldCtx, a: int, b: int, cfg: TripleOnanConfig, params: TripleOnanParams | None = None, **extra) -> dict:
    doc = {
        "ctx": ctx.header(),
        "q": ctx.q,
        "p": ctx.p,
        "exp": ctx.exp,
        "a": enc(ctx, a),
        "b": enc(ctx, b),
        "points": {n: enc_triple(ctx, cfg.points[n]) for n in LABELS},
        "lines": [enc_triple(ctx, cfg.lines[n]) for n in LINE_NAMES],
        "bm_special": cfg.bm_special,
    }
    if params is not None:
        doc["params"] = params.as_dict()
    doc.update(extra)
    return doc


def config_from_dict(doc: dict) -> tuple[FieldCtx, int, int, TripleOnanConfig]:
    _validate(doc, CONFIG_SCHEMA)
    ctx = ctx_from_header(doc["ctx"])
    points = {n: ProjPoint(*dec_triple(ctx, doc["points"][n])) for n in LABELS}
    lines = {n: ProjLine(*dec_triple(ctx, v)) for n, v in zip(LINE_NAMES, doc["lines"])}
    cfg = TripleOnanConfig(points, lines, doc["bm_special"])
    return ctx, dec(ctx, doc["a"]), dec(ctx, doc["b"]), cfg


def params_from_dict(ctx: FieldCtx, d: dict) -> TripleOnanParams:
    return TripleOnanParams(ctx, *(dec(ctx, d[n]) for n in "abxkhst"))


def onan_to_dict(ctx: FieldCtx, a: int, b: int, onan, **extra) -> dict:
    doc = {
        "ctx": ctx.header(),
        "a": enc(ctx, a),
        "b": enc(ctx, b),
        "lines": [enc_triple(ctx, l) for l in onan.lines],
        "points": {f"{i}{j}": enc_triple(ctx, P) for (i, j), P in sorted(onan.points.items())},
    }
    doc.update(extra)
    return doc


def onan_from_dict(doc: dict):
    from .onan import OnanConfig

    _validate(doc, ONAN_SCHEMA)
    ctx = ctx_from_header(doc["ctx"])
    lines = tuple(ProjLine(*dec_triple(ctx, l)) for l in doc["lines"])
    points = {(int(k[0]), int(k[1])): ProjPoint(*dec_triple(ctx, v)) for k, v in doc["points"].items()}
    return ctx, dec(ctx, doc["a"]), dec(ctx, doc["b"]), OnanConfig(lines, points)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
