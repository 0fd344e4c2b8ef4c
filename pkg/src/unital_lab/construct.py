"""Explicit BM-special Triple O'Nan constructions and cyclotomic numbers.

Three constructions, each returning canonical-frame :class:`TripleOnanParams`
that pass :func:`onan.check_equations`:

* :func:`conic_construction` -- conic unital (b = 0, a non-square), q >= 7;
* :func:`asq14_construction` -- a = 1, b = b1*e, q = 1 mod 4;
* :func:`q3_construction` -- a = 1, b = b1*e, q = 3 mod 4, q > 3.

:func:`transfer_b` moves a configuration of U_{a, b1 e} to U_{a, b2 e}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gfield import FieldCtx
from .onan import TripleOnanParams, check_equations
from .unital import InvalidParamsError, is_valid, valid_b1, validate


class NoConstruction(LookupError):
    """No parameters exist (or none were found) for the requested case."""


class TransferError(ArithmeticError):
    pass


# -- cyclotomic numbers --

@dataclass
class CyclotomicTable:
    q: int
    order: int
    w: int
    matrix: np.ndarray  # matrix[i, j] = (i, j)_order

    def __getitem__(self, ij):
        i, j = ij
        return int(self.matrix[i % self.order, j % self.order])


def residue_class(ctx: FieldCtx, x: int, order: int) -> int:
    """i with x in w^i * (order-th powers)."""
    return ctx.log_q(x) % order


def cyclotomic(ctx: FieldCtx, order: int) -> CyclotomicTable:
    q = ctx.q
    if order not in (2, 4):
        raise ValueError("order must be 2 or 4")
    if (q - 1) % order:
        raise ValueError(f"order {order} needs q = 1 mod {order}")
    mat = np.zeros((order, order), dtype=np.int64)
    for x in range(1, q):
        x1 = ctx.add(x, 1)
        if x1 == 0:
            continue
        mat[residue_class(ctx, x, order), residue_class(ctx, x1, order)] += 1
    return CyclotomicTable(q, order, ctx.w, mat)


def baumert_violations(tab: CyclotomicTable) -> list[str]:
    """Relations the order-4 (or order-2, q = 3 mod 4) table must satisfy."""
    q, out = tab.q, []
    if tab.order == 2:
        if q % 4 != 3:
            return out
        m = (q - 3) // 4
        for ij, want in [((1, 0), m), ((1, 1), m), ((0, 0), m), ((0, 1), m + 1)]:
            if tab[ij] != want:
                out.append(f"({ij[0]},{ij[1]})_2 = {tab[ij]} != {want}")
        return out
    n = (q - 1) // 4
    if q % 8 == 1:
        swap = lambda i, j: (j, i)  # noqa: E731
        extra = 0
    else:
        swap = lambda i, j: (j + 2, i + 2)  # noqa: E731
        extra = 2
    for i in range(4):
        for j in range(4):
            if tab[i, j] != tab[-i, j - i]:
                out.append(f"({i},{j}) != ({-i % 4},{(j - i) % 4})")
            if tab[i, j] != tab[swap(i, j)]:
                out.append(f"({i},{j}) != {tuple(v % 4 for v in swap(i, j))}")
        row = sum(tab[i, j] for j in range(4))
        if row != n - (1 if i == extra else 0):
            out.append(f"row {i} sums to {row}")
    # two-parameter solution in terms of l1, l2
    l1, l2 = ells(tab)
    if q % 8 == 1:
        groups = [
            ([(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)], l1),
            ([(0, 3), (3, 0), (1, 1)], l2),
            ([(0, 2), (2, 0), (2, 2)], (q - 1) // 8 - l1),
            ([(0, 1), (1, 0), (3, 3)], n - 2 * l1 - l2),
            ([(0, 0)], 3 * l1 - (q + 7) // 8),
        ]
    else:
        # the (0,1) class is the free one here; (0,3) = n - 2 l1 - (0,1)
        l2 = tab[0, 1]
        groups = [
            ([(1, 0), (1, 1), (2, 1), (2, 3), (3, 0), (3, 3)], l1),
            ([(0, 1), (1, 3), (3, 2)], l2),
            ([(0, 3), (1, 2), (3, 1)], n - 2 * l1 - l2),
            ([(0, 0), (2, 0), (2, 2)], (q - 5) // 8 - l1),
            ([(0, 2)], 3 * l1 - (q - 5) // 8),
        ]
    for cells, want in groups:
        for ij in cells:
            if tab[ij] != want:
                out.append(f"{ij} = {tab[ij]} != {want}")
    return out


def ells(tab: CyclotomicTable) -> tuple[int, int]:
    """(l1, l2) = ((1,2), (0,3)) for q = 1 mod 8, ((1,0), (0,3)) for q = 5 mod 8."""
    if tab.order != 4:
        raise ValueError("l1, l2 are defined for order 4")
    return (tab[1, 2], tab[0, 3]) if tab.q % 8 == 1 else (tab[1, 0], tab[0, 3])


def conic_xy_candidates(ctx: FieldCtx) -> list[tuple[int, int]]:
    """Ordered (X, Y) in GF(q) feeding the conic construction.

    q = 1 mod 4: X, Y in R1 with X+1 in R0+R2 and Y+1 in R1+R3, or the same
    with R1 and R3 exchanged (classes mod 4).
    q = 3 mod 4: X with X, X+1 both squares and Y a square with Y+1 a
    non-square, or the other way round.
    """
    q = ctx.q
    out = []
    if q % 4 == 1:
        cls = {x: residue_class(ctx, x, 4) for x in range(1, q)}
        for X in range(1, q):
            for Y in range(1, q):
                X1, Y1 = ctx.add(X, 1), ctx.add(Y, 1)
                if 0 in (X1, Y1):
                    continue
                cx, cy, cx1, cy1 = cls[X], cls[Y], cls[X1], cls[Y1]
                if cx == cy == 1 and cx1 % 2 == 0 and cy1 % 2 == 1:
                    out.append((X, Y))
                elif cx == cy == 3 and cx1 % 2 == 1 and cy1 % 2 == 0:
                    out.append((X, Y))
        return out
    sq = ctx.is_square_q
    for X in range(1, q):
        for Y in range(1, q):
            X1, Y1 = ctx.add(X, 1), ctx.add(Y, 1)
            if 0 in (X1, Y1) or not (sq(X) and sq(Y)):
                continue
            if (sq(X1) and not sq(Y1)) or (not sq(X1) and sq(Y1)):
                out.append((X, Y))
    return out


def count_conic_xy_pairs(ctx: FieldCtx) -> tuple[int, int]:
    """(formula value, direct count) for q = 1 mod 4.

    The formula is n = 2((q-1)/4 - l1 - l2)(l1 + l2) with l1, l2 read off the
    order-4 table.
    """
    q = ctx.q
    if q % 4 != 1:
        raise ValueError("needs q = 1 mod 4")
    l1, l2 = ells(cyclotomic(ctx, 4))
    formula = 2 * ((q - 1) // 4 - l1 - l2) * (l1 + l2)
    return formula, len(conic_xy_candidates(ctx))


def q3_type_pair_count(ctx: FieldCtx) -> int:
    """Pairs (X, Y), X, Y not in {0, -1}, with X, X+1 of equal quadratic
    character and Y, Y+1 of different character."""
    sq = ctx.is_square_q
    good_x = good_y = 0
    for X in range(1, ctx.q):
        X1 = ctx.add(X, 1)
        if X1 == 0:
            continue
        if sq(X) == sq(X1):
            good_x += 1
        else:
            good_y += 1
    return good_x * good_y


def conic_quantity(ctx: FieldCtx, h: int, s: int, t: int) -> int:
    """-(1 + 1/h^2) st/(s+t) + (1/h)(s^2+t^2)/(s+t); equals 2a(xk)^2 in the conic construction."""
    m, add, div = ctx.mul, ctx.add, ctx.div
    spt = add(s, t)
    first = ctx.neg(m(add(1, ctx.inv(m(h, h))), div(m(s, t), spt)))
    second = m(ctx.inv(h), div(add(m(s, s), m(t, t)), spt))
    return add(first, second)


def _conic_params(ctx: FieldCtx, a: int, h2: int, s: int, t: int) -> list[TripleOnanParams]:
    """Parameter tuples built from (h^2, s, t) by the sufficient conditions."""
    m, add = ctx.mul, ctx.add
    two = 2 % ctx.p
    c = ctx.div(add(m(s, s), m(t, t)), m(two, add(s, t)))
    out = []
    for h in ctx.roots(h2):
        R = conic_quantity(ctx, h, s, t)
        if R == 0 or ctx.is_square(R):
            continue
        k = m(c, add(1, ctx.inv(h)))
        for xk in ctx.roots(ctx.div(R, m(two, a))):
            out.append(TripleOnanParams(ctx, a, 0, ctx.div(xk, k), k, h, s, t))
    return out


def conic_construction(ctx: FieldCtx, a: int | None = None) -> TripleOnanParams:
    """Triple O'Nan in the conic unital U_{a,0}, found via the (X, Y) candidates."""
    q = ctx.q
    if a is None:
        a = ctx.g
    validate(ctx, a, 0)
    if q <= 5:
        raise NoConstruction(f"no conic construction for q = {q}")
    m = ctx.mul
    for X, Y in conic_xy_candidates(ctx):
        XY = m(X, Y)
        if not ctx.is_square_q(XY):
            continue
        r = ctx.sqrt_q(XY)
        for h2 in sorted({r, ctx.neg(r)}):
            if ctx.is_square_q(h2) or h2 == ctx.neg(1):
                continue
            u2 = ctx.neg(ctx.div(Y, h2))
            if not ctx.is_square_q(u2) or ctx.neg(ctx.div(h2, u2)) != X:
                continue
            u = ctx.sqrt_q(u2)
            if ctx.pow(u, 4) == 1:
                continue
            for tp in _conic_params(ctx, a, h2, u, 1):
                if check_equations(tp)[0]:
                    return tp
    raise NoConstruction(f"conic construction found nothing for q = {q}")


def _need_a1(ctx: FieldCtx, b1: int | None) -> tuple[int, int]:
    if b1 is None:
        choices = [v for v in valid_b1(ctx, 1) if v]
        if not choices:
            raise NoConstruction(f"no valid b1 for a = 1 at q = {ctx.q}")
        b1 = choices[0]
    b = ctx.mul(b1, ctx.e)
    validate(ctx, 1, b)
    return b1, b


def asq14_construction(ctx: FieldCtx, b1: int | None = None, h2: int | None = None) -> TripleOnanParams:
    """a = 1, b = b1 e, q = 1 mod 4.

    k = k0 + b1 e with k0 = -b1 e h, x = 1/k and
    t = 2h^2(+-i - 1)/(h^2 + 1), s = +-i t, i^2 = -1.
    """
    q = ctx.q
    if q % 4 != 1:
        raise NoConstruction("needs q = 1 mod 4")
    b1, b = _need_a1(ctx, b1)
    m, add = ctx.mul, ctx.add
    if h2 is None:
        h2 = ctx.w
    if ctx.is_square_q(h2):
        raise ValueError("h^2 must be a non-square of GF(q)")
    assert add(h2, 1) != 0
    i = ctx.sqrt_q(ctx.neg(1))
    two = 2 % ctx.p
    for h in ctx.roots(h2):
        k0 = ctx.neg(m(m(b1, ctx.e), h))
        assert ctx.in_base(k0)
        k = add(k0, m(b1, ctx.e))
        x = ctx.inv(k)
        for sign in (i, ctx.neg(i)):
            t = ctx.div(m(m(two, h2), ctx.sub(sign, 1)), add(h2, 1))
            s = m(sign, t)
            tp = TripleOnanParams(ctx, 1, b, x, k, h, s, t)
            if check_equations(tp)[0]:
                return tp
    raise NoConstruction(f"asq14 construction failed for q = {q}, b1 = {b1}")


def q3_st_solutions(ctx: FieldCtx, r: int) -> list[tuple[int, int]]:
    """(s, t) in GF(q)^* with s^2 != t^2 and -(s^2 + t^2) = 2r(s + t)."""
    m, add = ctx.mul, ctx.add
    two = 2 % ctx.p
    out = []
    for s in range(1, ctx.q):
        for t in range(1, ctx.q):
            spt = add(s, t)
            if spt == 0 or m(s, s) == m(t, t):
                continue
            if ctx.neg(add(m(s, s), m(t, t))) == m(m(two, r), spt):
                out.append((s, t))
    return out


def q3_construction(ctx: FieldCtx, b1: int | None = None) -> TripleOnanParams:
    """a = 1, b = b1 e, q = 3 mod 4, q > 3.

    theta^2 = e, r = theta^(q+1) (a root of -w), h = e/r,
    k = r(-1 + b1 r) + (1 + b1 r) e, x = theta/k, and (s, t) solving
    -(s^2 + t^2)/(2(s + t)) = r.
    """
    q = ctx.q
    if q % 4 != 3:
        raise NoConstruction("needs q = 3 mod 4")
    if q == 3:
        raise NoConstruction("no (s, t) exist for q = 3")
    b1, b = _need_a1(ctx, b1)
    m, add = ctx.mul, ctx.add
    for theta in ctx.roots(ctx.e):
        r = ctx.norm(theta)
        assert m(r, r) == ctx.neg(ctx.w)
        h = ctx.div(ctx.e, r)
        k0 = m(r, add(ctx.neg(1), m(b1, r)))
        k1 = add(1, m(b1, r))
        k = add(k0, m(k1, ctx.e))
        if k == 0:
            continue
        x = ctx.div(theta, k)
        for s, t in q3_st_solutions(ctx, r):
            tp = TripleOnanParams(ctx, 1, b, x, k, h, s, t)
            if check_equations(tp)[0]:
                return tp
    raise NoConstruction(f"q3 construction failed for q = {q}, b1 = {b1}")


@dataclass
class TransferWitness:
    m: int
    y: int


def transfer_b(tp: TripleOnanParams, b2: int) -> tuple[TripleOnanParams, TransferWitness]:
    """Carry a configuration of U_{a, b1 e} to U_{a, b2 e} (same a, h, s, t).

    m solves box(m) = box(k) - 2(b1 - b2) e Theta and
    box(h (k - m)) = 2(b1 - b2) e Theta h^(q+1) coordinatewise; then
    y^2 = Delta/(a m^2), with the root y = xk/m.
    """
    ctx = tp.ctx
    m_, add, sub = ctx.mul, ctx.add, ctx.sub
    b0, b1 = ctx.coords(tp.b)
    if b0 != 0:
        raise ValueError("source b must be of the form b1*e")
    if not is_valid(ctx, tp.a, m_(b2, ctx.e)):
        raise InvalidParamsError(f"(a, {b2} e) is not a valid unital")
    theta = ctx.norm(m_(tp.x, tp.k))
    db = sub(b1, b2)
    # D = k - m = D0 + D1 e
    D1 = m_(db, theta)
    h0, h1 = ctx.coords(tp.h)
    D0 = ctx.div(sub(m_(m_(db, theta), ctx.norm(tp.h)), m_(h0, D1)), h1)
    D = add(D0, m_(D1, ctx.e))
    mm = sub(tp.k, D)
    if mm == 0:
        raise TransferError("m = 0")
    # y^2 = Delta/(a m^2) = (xk/m)^2; take the root with y m = x k so that
    # b2 = b1 is the identity and round trips close up exactly
    y = ctx.div(m_(tp.x, tp.k), mm)
    out = TripleOnanParams(ctx, tp.a, m_(b2, ctx.e), y, mm, tp.h, tp.s, tp.t)
    return out, TransferWitness(mm, y)
