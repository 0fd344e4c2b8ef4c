"""The Desarguesian plane PG(2, q^2) over a :class:`FieldCtx`.

Points and lines are triples of GF(q^2) indices, normalized so the last
nonzero coordinate is 1.  Each normalized triple also has an integer index:

    (x, y, 1) -> x + Q*y
    (x, 1, 0) -> Q^2 + x
    (1, 0, 0) -> Q^2 + Q

with Q = q^2, giving Q^2 + Q + 1 indices.  Lines use the same scheme on
their coefficient vectors [l0, l1, l2]; a point is on a line iff
l0*x + l1*y + l2*z = 0.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .gfield import FieldCtx


class ProjPoint(NamedTuple):
    x: int
    y: int
    z: int


class ProjLine(NamedTuple):
    l0: int
    l1: int
    l2: int


class DegenerateError(ValueError):
    """Join of equal points, meet of equal lines, or the zero vector."""


def normalize(ctx: FieldCtx, v) -> tuple[int, int, int]:
    x, y, z = (int(c) for c in v)
    if z:
        return (ctx.div(x, z), ctx.div(y, z), 1)
    if y:
        return (ctx.div(x, y), 1, 0)
    if x:
        return (1, 0, 0)
    raise DegenerateError("zero vector is not a projective point")


def point(ctx: FieldCtx, x, y, z=1) -> ProjPoint:
    return ProjPoint(*normalize(ctx, (int(x), int(y), int(z))))


def line(ctx: FieldCtx, l0, l1, l2) -> ProjLine:
    return ProjLine(*normalize(ctx, (int(l0), int(l1), int(l2))))


def cross(ctx: FieldCtx, u, v) -> tuple[int, int, int]:
    m, s = ctx.mul, ctx.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def join(ctx: FieldCtx, P, Q) -> ProjLine:
    c = cross(ctx, P, Q)
    if c == (0, 0, 0):
        raise DegenerateError("join of a point with itself")
    return ProjLine(*normalize(ctx, c))


def meet(ctx: FieldCtx, l, m) -> ProjPoint:
    c = cross(ctx, l, m)
    if c == (0, 0, 0):
        raise DegenerateError("meet of a line with itself")
    return ProjPoint(*normalize(ctx, c))


def incident(ctx: FieldCtx, l, P) -> bool:
    m, a = ctx.mul, ctx.add
    return a(a(m(l[0], P[0]), m(l[1], P[1])), m(l[2], P[2])) == 0


def collinear(ctx: FieldCtx, A, B, C) -> bool:
    return incident(ctx, join(ctx, A, B), C)


def index_of(ctx: FieldCtx, v) -> int:
    """Index of a normalized triple."""
    x, y, z = v
    Q = ctx.Q
    if z == 1:
        return x + Q * y
    if y == 1:
        return Q * Q + x
    return Q * Q + Q


def from_index(ctx: FieldCtx, i: int) -> tuple[int, int, int]:
    Q = ctx.Q
    if i < Q * Q:
        return (i % Q, i // Q, 1)
    if i < Q * Q + Q:
        return (i - Q * Q, 1, 0)
    if i == Q * Q + Q:
        return (1, 0, 0)
    raise IndexError(i)


def size(ctx: FieldCtx) -> int:
    """Number of points (equivalently lines) of PG(2, q^2)."""
    return ctx.Q * ctx.Q + ctx.Q + 1


def all_points(ctx: FieldCtx):
    for i in range(size(ctx)):
        yield ProjPoint(*from_index(ctx, i))


def all_lines(ctx: FieldCtx):
    for i in range(size(ctx)):
        yield ProjLine(*from_index(ctx, i))


def points_on(ctx: FieldCtx, l) -> list[ProjPoint]:
    """The q^2 + 1 points of a line, in index order."""
    A, B = _two_points(ctx, l)
    out = {ProjPoint(*B)}
    for c in range(ctx.Q):
        v = tuple(ctx.add(A[i], ctx.mul(c, B[i])) for i in range(3))
        out.add(ProjPoint(*normalize(ctx, v)))
    return sorted(out, key=lambda P: index_of(ctx, P))


def _two_points(ctx: FieldCtx, l):
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts = []
    for b in basis:
        c = cross(ctx, l, b)
        if c != (0, 0, 0):
            c = normalize(ctx, c)
            if c not in pts:
                pts.append(c)
        if len(pts) == 2:
            return pts
    raise DegenerateError("line has fewer than two points")


# -- vectorized helpers --

def vnormalize_index(ctx: FieldCtx, x, y, z):
    """Indices of the normalized triples given coordinate arrays.

    Zero vectors map to -1.
    """
    x, y, z = (np.asarray(a, dtype=np.int64) for a in np.broadcast_arrays(x, y, z))
    Q = ctx.Q
    out = np.full(x.shape, -1, dtype=np.int64)
    zi = ctx.vinv(z)
    aff = z != 0
    out[aff] = (ctx.vmul(x, zi) + Q * ctx.vmul(y, zi))[aff]
    inf = (z == 0) & (y != 0)
    out[inf] = (Q * Q + ctx.vdiv(x, y))[inf]
    ideal = (z == 0) & (y == 0) & (x != 0)
    out[ideal] = Q * Q + Q
    return out


def vcross(ctx: FieldCtx, u, v):
    m, s = ctx.vmul, ctx.vsub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def vincident(ctx: FieldCtx, l, P):
    m, a = ctx.vmul, ctx.vadd
    return a(a(m(l[0], P[0]), m(l[1], P[1])), m(l[2], P[2])) == 0
