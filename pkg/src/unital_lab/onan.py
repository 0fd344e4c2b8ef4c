"""O'Nan and Triple O'Nan configurations in a BM unital.

A Triple O'Nan is given by a quadrangle P, Q, X, Y of unital points whose
diagonal points V = PQ^XY, M = PX^QY, N = PY^QX are also unital points.
It is BM-special when one of its six lines passes through T_inf.

In the canonical frame the special line is [1,0,0], V = (0,0,1),
X = (0,s,1), Y = (0,t,1), P = (x*j, j, 1), Q = (x*k, k, 1) with j = h*k.
The coefficient quantities of M and N are called W, U, Vh, Zh here
(Vh, Zh to keep them apart from the point V).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import plane
from .gfield import FieldCtx, Fq2Elem
from .plane import DegenerateError, ProjLine, ProjPoint
from .unital import T_INF, Unital

LABELS = ("P", "Q", "X", "Y", "V", "M", "N")
LINE_NAMES = ("PX", "QY", "PY", "QX", "PQ", "XY")
SUB_ONANS = (("PX", "QY", "PY", "QX"), ("PX", "QY", "PQ", "XY"), ("PY", "QX", "PQ", "XY"))


@dataclass(frozen=True)
class TripleOnanParams:
    """Canonical-frame data (a, b, x, k, h, s, t); j = h*k."""

    ctx: FieldCtx
    a: int
    b: int
    x: int
    k: int
    h: int
    s: int
    t: int

    def __post_init__(self):
        c = self.ctx
        if 0 in (self.x, self.k, self.h, self.s, self.t):
            raise ValueError("x, k, h, s, t must be nonzero")
        if not (c.in_base(self.s) and c.in_base(self.t)):
            raise ValueError("s, t must lie in GF(q)")
        if self.s == self.t:
            raise ValueError("s == t")
        if c.in_base(self.h):
            raise ValueError("h must lie outside GF(q)")

    @property
    def j(self) -> int:
        return self.ctx.mul(self.h, self.k)

    def elems(self):
        E = lambda v: Fq2Elem(self.ctx, v)  # noqa: E731
        return tuple(E(v) for v in (self.a, self.b, self.x, self.k, self.h, self.s, self.t))

    def swap_pq(self) -> TripleOnanParams:
        c = self.ctx
        return TripleOnanParams(c, self.a, self.b, self.x, self.j, c.inv(self.h), self.s, self.t)

    def swap_xy(self) -> TripleOnanParams:
        return TripleOnanParams(self.ctx, self.a, self.b, self.x, self.k, self.h, self.t, self.s)

    def as_dict(self) -> dict:
        c = self.ctx
        return {n: list(c.coords(getattr(self, n))) for n in ("a", "b", "x", "k", "h", "s", "t")}


@dataclass
class OnanConfig:
    lines: tuple[ProjLine, ...]
    points: dict[tuple[int, int], ProjPoint]  # (i, j) -> lines[i] ^ lines[j]

    def identity(self, ctx) -> frozenset[int]:
        return frozenset(plane.index_of(ctx, l) for l in self.lines)

    def opposite_pairs(self) -> list[tuple[ProjPoint, ProjPoint]]:
        """The three pairs of points sharing no line."""
        return [
            (self.points[(0, 1)], self.points[(2, 3)]),
            (self.points[(0, 2)], self.points[(1, 3)]),
            (self.points[(0, 3)], self.points[(1, 2)]),
        ]


@dataclass
class TripleOnanConfig:
    points: dict[str, ProjPoint]
    lines: dict[str, ProjLine]
    bm_special: bool = False

    def identity(self, ctx) -> frozenset[int]:
        return frozenset(plane.index_of(ctx, l) for l in self.lines.values())

    def sub_onan_lines(self) -> list[tuple[ProjLine, ...]]:
        return [tuple(self.lines[n] for n in names) for names in SUB_ONANS]


@dataclass
class Verdict:
    ok: bool
    reasons: list[str] = field(default_factory=list)
    bm_special: bool | None = None
    config: object = None

    def __bool__(self):
        return self.ok


# -- canonical-frame algebra --

def wuvz(ctx: FieldCtx, h: int, s: int, t: int) -> tuple[int, int, int, int]:
    """W = h(s-t)/(s-th), U = st(1-h)/(s-th) and the s<->t swaps Vh, Zh."""
    m, sub = ctx.mul, ctx.sub
    st = m(s, t)
    one_h = sub(1, h)
    den1 = sub(s, m(t, h))
    den2 = sub(t, m(s, h))
    assert den1 and den2, "h in GF(q)"
    W = ctx.div(m(h, sub(s, t)), den1)
    U = ctx.div(m(st, one_h), den1)
    Vh = ctx.div(m(h, sub(t, s)), den2)
    Zh = ctx.div(m(st, one_h), den2)
    return W, U, Vh, Zh


def canonical_points(tp: TripleOnanParams) -> dict[str, ProjPoint]:
    """P, Q, X, Y, V from the parameters (M, N left to :func:`realize`)."""
    c = tp.ctx
    j, k, x = tp.j, tp.k, tp.x
    return {
        "P": ProjPoint(c.mul(x, j), j, 1),
        "Q": ProjPoint(c.mul(x, k), k, 1),
        "X": ProjPoint(0, tp.s, 1),
        "Y": ProjPoint(0, tp.t, 1),
        "V": ProjPoint(0, 0, 1),
    }


def from_quadrangle(ctx: FieldCtx, P, Q, X, Y) -> TripleOnanConfig:
    """Lines and diagonal points of the quadrangle; raises DegenerateError."""
    pts = [P, Q, X, Y]
    if len(set(pts)) < 4:
        raise DegenerateError("repeated quadrangle vertex")
    for A, B, C in combinations(pts, 3):
        if plane.collinear(ctx, A, B, C):
            raise DegenerateError("three quadrangle vertices are collinear")
    L = {
        "PX": plane.join(ctx, P, X),
        "QY": plane.join(ctx, Q, Y),
        "PY": plane.join(ctx, P, Y),
        "QX": plane.join(ctx, Q, X),
        "PQ": plane.join(ctx, P, Q),
        "XY": plane.join(ctx, X, Y),
    }
    pts = {
        "P": P,
        "Q": Q,
        "X": X,
        "Y": Y,
        "V": plane.meet(ctx, L["PQ"], L["XY"]),
        "M": plane.meet(ctx, L["PX"], L["QY"]),
        "N": plane.meet(ctx, L["PY"], L["QX"]),
    }
    return TripleOnanConfig(pts, L)


def realize(tp: TripleOnanParams) -> TripleOnanConfig:
    """Geometric object for the parameters; membership of P, Q, M, N unchecked."""
    c = canonical_points(tp)
    cfg = from_quadrangle(tp.ctx, c["P"], c["Q"], c["X"], c["Y"])
    assert cfg.points["V"] == c["V"]
    return cfg


def closed_form_mn(tp: TripleOnanParams) -> tuple[ProjPoint, ProjPoint]:
    """M = (kxW, kW+U, 1), N = (kxVh, kVh+Zh, 1)."""
    c = tp.ctx
    W, U, Vh, Zh = wuvz(c, tp.h, tp.s, tp.t)
    kx = c.mul(tp.k, tp.x)
    M = ProjPoint(c.mul(kx, W), c.add(c.mul(tp.k, W), U), 1)
    N = ProjPoint(c.mul(kx, Vh), c.add(c.mul(tp.k, Vh), Zh), 1)
    return M, N


def _lhs(a, b, z):
    """a z^2 - a^q z^2q + (b - b^q) z^(q+1)."""
    z2 = z * z
    return a * z2 - a.frob() * z2.frob() + b.box() * z.norm()


def check_equations(tp: TripleOnanParams) -> tuple[bool, list[str]]:
    """Membership of Q, P, M, N written out as field equations.

    Returns (all hold, names of the failing points).
    """
    a, b, x, k, h, s, t = tp.elems()
    W, U, Vh, Zh = (Fq2Elem(tp.ctx, v) for v in wuvz(tp.ctx, tp.h, tp.s, tp.t))
    xk = x * k
    checks = {
        "Q": (xk, k),
        "P": (xk * h, k * h),
        "M": (xk * W, k * W + U),
        "N": (xk * Vh, k * Vh + Zh),
    }
    failed = [n for n, (xx, yy) in checks.items() if _lhs(a, b, xx) != yy.box()]
    return not failed, failed


def check_boxed(tp: TripleOnanParams) -> tuple[bool, list[str]]:
    """The same conditions in Delta/Theta form: Delta = a x^2 k^2, Theta = (xk)^(q+1).

        [Delta c^2] + [b] Theta c^(q+1) = [k c] + [offset]

    for (c, offset) = (1, 0), (h, 0), (W, U), (Vh, Zh), where [Y] = Y - Y^q.
    """
    a, b, x, k, h, s, t = tp.elems()
    W, U, Vh, Zh = (Fq2Elem(tp.ctx, v) for v in wuvz(tp.ctx, tp.h, tp.s, tp.t))
    delta = a * x * x * k * k
    theta = (x * k).norm()
    zero = Fq2Elem(tp.ctx, 0)
    checks = {"Q": (Fq2Elem(tp.ctx, 1), zero), "P": (h, zero), "M": (W, U), "N": (Vh, Zh)}
    failed = []
    for name, (c, off) in checks.items():
        lhs = (delta * c * c).box() + b.box() * theta * c.norm()
        if lhs != (k * c).box() + off.box():
            failed.append(name)
    return not failed, failed


# -- verification from raw points --

def verify_onan(U: Unital, lines) -> Verdict:
    ctx = U.ctx
    lines = tuple(plane.line(ctx, *l) for l in lines)
    reasons = []
    if len(set(lines)) != 4:
        return Verdict(False, ["lines not distinct"])
    pts = {}
    for i, j in combinations(range(4), 2):
        pts[(i, j)] = plane.meet(ctx, lines[i], lines[j])
    if len(set(pts.values())) != 6:
        reasons.append("three lines concurrent")
    for key, P in pts.items():
        if P not in U:
            reasons.append(f"meet {key} not in unital")
    ok = not reasons
    special = sum(plane.incident(ctx, l, T_INF) for l in lines)
    return Verdict(ok, reasons, special == 1, OnanConfig(lines, pts) if ok else None)


def verify_triple_onan(U: Unital, points) -> Verdict:
    """Check the seven labelled points form a Triple O'Nan of U.

    ``points`` maps at least P, Q, X, Y; V, M, N if given must agree with the
    diagonal points of the quadrangle.
    """
    ctx = U.ctx
    P, Q, X, Y = (plane.point(ctx, *points[n]) for n in "PQXY")
    try:
        cfg = from_quadrangle(ctx, P, Q, X, Y)
    except DegenerateError as exc:
        return Verdict(False, [f"not a quadrangle: {exc}"])
    reasons = []
    for n in "VMN":
        if n in points and plane.point(ctx, *points[n]) != cfg.points[n]:
            reasons.append(f"{n} is not the expected diagonal point")
    if len(set(cfg.points.values())) != 7:
        reasons.append("points not distinct")
    if len(set(cfg.lines.values())) != 6:
        reasons.append("lines not distinct")
    for n, pt in cfg.points.items():
        if pt == T_INF:
            reasons.append(f"{n} is the special point")
        elif pt not in U:
            reasons.append(f"{n} not in unital")
    n_special = sum(plane.incident(ctx, l, T_INF) for l in cfg.lines.values())
    if n_special > 1:
        reasons.append("more than one line through the special point")
    if not reasons:
        for names in SUB_ONANS:
            sub = verify_onan(U, [cfg.lines[n] for n in names])
            if not sub:
                reasons.append(f"sub-configuration {names} is not an O'Nan")
    cfg.bm_special = n_special == 1
    ok = not reasons
    return Verdict(ok, reasons, n_special == 1, cfg if ok else None)


def verify_params(U: Unital, tp: TripleOnanParams) -> Verdict:
    try:
        cfg = realize(tp)
    except DegenerateError as exc:
        return Verdict(False, [str(exc)])
    return verify_triple_onan(U, cfg.points)


# -- Feng-Li construction --

@dataclass
class FengLi:
    lam1: int
    lam2: int
    x1: int | None = None
    x2: int | None = None
    r: int | None = None
    points: dict[str, ProjPoint] = field(default_factory=dict)
    config: OnanConfig | None = None
    reason: str = ""


def feng_li_x(U: Unital, lam: int) -> int | None:
    """x_lam = (a^q + lam - b) / (a^(q+1) - (lam - b)^(q+1))."""
    c = U.ctx
    a, b = U.a, U.b
    lb = c.sub(lam, b)
    den = c.sub(c.norm(a), c.norm(lb))
    if den == 0:
        return None
    return c.div(c.add(c.frobenius(a), lb), den)


def feng_li_onan(U: Unital, lam1: int, lam2: int) -> FengLi:
    """Build the Feng-Li quadrilateral for (lam1, lam2); ``config`` is set iff it is an O'Nan.

    The unital point of [1,1,0] attached to lam is (-x_lam, x_lam, 1), so the
    construction runs on u = -x_lam: P_lam = (u, -u, 1), its sigma-image
    (-u, -u, 1) and R = (0, r, 1) with r = -2 u1 u2 / (u1 + u2).
    """
    c = U.ctx
    out = FengLi(lam1, lam2)
    if lam1 == lam2:
        out.reason = "lam1 == lam2"
        return out
    x1, x2 = feng_li_x(U, lam1), feng_li_x(U, lam2)
    if x1 is None or x2 is None:
        out.reason = "zero denominator"
        return out
    out.x1, out.x2 = x1, x2
    u1, u2 = c.neg(x1), c.neg(x2)
    if c.add(u1, u2) == 0:
        out.reason = "x1 + x2 = 0"
        return out
    two = 2 % c.p
    out.r = c.neg(c.div(c.mul(two, c.mul(u1, u2)), c.add(u1, u2)))
    n = c.neg
    pts = {
        "P": ProjPoint(0, 0, 1),
        "P1": ProjPoint(u1, n(u1), 1),
        "P2": ProjPoint(u2, n(u2), 1),
        "P1s": ProjPoint(n(u1), n(u1), 1),
        "P2s": ProjPoint(n(u2), n(u2), 1),
        "R": ProjPoint(0, out.r, 1),
    }
    out.points = pts
    try:
        lines = (
            plane.join(c, pts["P1"], pts["P2"]),
            plane.join(c, pts["P1s"], pts["P2s"]),
            plane.join(c, pts["P1"], pts["P2s"]),
            plane.join(c, pts["P1s"], pts["P2"]),
        )
    except DegenerateError as exc:
        out.reason = str(exc)
        return out
    v = verify_onan(U, lines)
    if not v:
        out.reason = "; ".join(v.reasons)
        return out
    if set(v.config.points.values()) != set(pts.values()):
        out.reason = "intersection points differ from the construction"
        return out
    out.config = v.config
    return out


def feng_li_scan(U: Unital) -> list[FengLi]:
    """Every unordered {lam1, lam2} in GF(q) whose quadrilateral is an O'Nan."""
    seen = set()
    found = []
    for l1 in range(U.ctx.q):
        for l2 in range(U.ctx.q):
            if l1 == l2:
                continue
            fl = feng_li_onan(U, l1, l2)
            if fl.config is None:
                continue
            key = fl.config.identity(U.ctx)
            if key not in seen:
                seen.add(key)
                found.append(fl)
    return found


@dataclass
class Diagonals:
    I0: ProjPoint
    I1: ProjPoint
    I2: ProjPoint
    in_unital: tuple[bool, bool, bool]
    closed_form_ok: bool


def fl_diagonals(U: Unital, fl: FengLi) -> Diagonals:
    c = U.ctx
    p = fl.points
    l11 = plane.join(c, p["P1"], p["P1s"])
    l22 = plane.join(c, p["P2"], p["P2s"])
    PR = plane.join(c, p["P"], p["R"])
    I0 = plane.meet(c, l11, l22)
    I1 = plane.meet(c, PR, l11)
    I2 = plane.meet(c, PR, l22)
    closed = (
        I0 == ProjPoint(1, 0, 0)
        and I1 == ProjPoint(0, fl.x1, 1)
        and I2 == ProjPoint(0, fl.x2, 1)
    )
    return Diagonals(I0, I1, I2, (I0 in U, I1 in U, I2 in U), closed)


def extend_onan(U: Unital, onan: OnanConfig) -> list[TripleOnanConfig]:
    """Triple O'Nans containing the given O'Nan (at most three)."""
    pairs = onan.opposite_pairs()
    out = []
    for i, j in combinations(range(3), 2):
        (A, A2), (B, B2) = pairs[i], pairs[j]
        v = verify_triple_onan(U, {"P": A, "Q": A2, "X": B, "Y": B2})
        if v:
            out.append(v.config)
    return out


# -- points F and E --

@dataclass
class FPoint:
    F: ProjPoint
    in_unital: bool
    closed_form: ProjPoint  # (0, 2st/(s+t), 1)
    matches_closed_form: bool
    matches_variant: bool  # (0, 2st/(s+1), 1)
    mn_line_ok: bool


def mn_line_closed_form(tp: TripleOnanParams) -> ProjLine:
    """[kh(s+t) - (1+h)st, -kxh(s+t), 2kxhst]."""
    c = tp.ctx
    m, add, sub = c.mul, c.add, c.sub
    k, h, s, t, x = tp.k, tp.h, tp.s, tp.t, tp.x
    spt, st = add(s, t), m(s, t)
    two = 2 % c.p
    return plane.line(
        c,
        sub(m(m(k, h), spt), m(add(1, h), st)),
        c.neg(m(m(k, x), m(h, spt))),
        m(two, m(m(k, x), m(h, st))),
    )


def f_point(U: Unital, tp: TripleOnanParams) -> FPoint:
    c = U.ctx
    cfg = realize(tp)
    MN = plane.join(c, cfg.points["M"], cfg.points["N"])
    F = plane.meet(c, MN, cfg.lines["XY"])
    two = 2 % c.p
    st2 = c.mul(two, c.mul(tp.s, tp.t))
    spt = c.add(tp.s, tp.t)
    closed = plane.point(c, 0, st2, spt)
    s1 = c.add(tp.s, 1)
    variant = plane.point(c, 0, st2, s1) if (st2 or s1) else None
    return FPoint(
        F,
        F in U,
        closed,
        F == closed,
        F == variant,
        MN == mn_line_closed_form(tp),
    )


@dataclass
class EPoint:
    E: ProjPoint
    in_unital: bool
    at_infinity: bool
    closed_form: ProjPoint  # (2khx, 2kh, 1+h)
    matches_closed_form: bool
    matches_variant: bool  # ((2khst)x, 2khst, (h+1)(s+t))


def e_point(U: Unital, tp: TripleOnanParams) -> EPoint:
    """E = MN ^ PQ, with the closed form and the variant form alongside."""
    c = U.ctx
    cfg = realize(tp)
    MN = plane.join(c, cfg.points["M"], cfg.points["N"])
    E = plane.meet(c, MN, cfg.lines["PQ"])
    m = c.mul
    two = 2 % c.p
    kh2 = m(two, m(tp.k, tp.h))
    closed = plane.point(c, m(kh2, tp.x), kh2, c.add(tp.h, 1))
    y = m(kh2, m(tp.s, tp.t))
    z = m(c.add(tp.h, 1), c.add(tp.s, tp.t))
    try:
        variant = plane.point(c, m(y, tp.x), y, z)
    except DegenerateError:
        variant = None
    return EPoint(E, E in U, E[2] == 0, closed, E == closed, E == variant)


def e_point_experiment(U: Unital, params) -> list[dict]:
    """One row per configuration: q, character of a, whether E is a unital point."""
    rows = []
    for tp in params:
        ep = e_point(U, tp)
        rows.append(
            {
                "q": U.ctx.q,
                "a_square": U.params.a_square,
                "params": tp.as_dict(),
                "E": [list(U.ctx.coords(v)) for v in ep.E],
                "E_in_unital": ep.in_unital,
                "E_at_infinity": ep.at_infinity,
                "matches_closed_form": ep.matches_closed_form,
                "matches_variant_form": ep.matches_variant,
            }
        )
    return rows
