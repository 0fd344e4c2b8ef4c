"""Orthogonal Buekenhout-Metz unitals U_{a,b} in PG(2, q^2), q odd.

    U_{a,b} = {(x, a x^2 + b x^(q+1) + r, 1) : x in GF(q^2), r in GF(q)} + {T_inf}

with T_inf = (0, 1, 0), valid when d = (b - b^q)^2 + 4 a^(q+1) is a
non-square of GF(q).  The unital is classical iff a = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator

import numpy as np

from . import plane
from .gfield import FieldCtx
from .plane import ProjPoint

T_INF = ProjPoint(0, 1, 0)


class InvalidParamsError(ValueError):
    pass


class AutomorphismDomainError(ValueError):
    pass


@dataclass(frozen=True)
class UnitalParams:
    ctx: FieldCtx
    a: int
    b: int
    d: int

    @property
    def classical(self) -> bool:
        return self.a == 0

    @property
    def conic(self) -> bool:
        return self.b == 0

    @property
    def a_square(self) -> bool:
        """Quadratic character of a in GF(q^2) (zero counts as square)."""
        return self.ctx.is_square(self.a)

    def describe(self) -> dict:
        c = self.ctx
        return {
            "a": list(c.coords(self.a)),
            "b": list(c.coords(self.b)),
            "d": self.d,
            "classical": self.classical,
            "conic": self.conic,
            "a_square": self.a_square,
        }


def discriminant(ctx: FieldCtx, a: int, b: int) -> int:
    bb = ctx.box(b)
    return ctx.add(ctx.mul(bb, bb), ctx.mul(4 % ctx.p, ctx.norm(a)))


def validate(ctx: FieldCtx, a, b) -> UnitalParams:
    a, b = int(a), int(b)
    d = discriminant(ctx, a, b)
    assert ctx.in_base(d), "discriminant left GF(q)"
    if d == 0 or ctx.is_square_q(d):
        raise InvalidParamsError(
            f"discriminant {d} is {'zero' if d == 0 else 'a square'} in GF({ctx.q})"
        )
    return UnitalParams(ctx, a, b, d)


def is_valid(ctx: FieldCtx, a, b) -> bool:
    d = discriminant(ctx, int(a), int(b))
    return d != 0 and not ctx.is_square_q(d)


def valid_b1(ctx: FieldCtx, a) -> list[int]:
    """All b1 in GF(q) for which (a, b1*e) is valid."""
    return [b1 for b1 in range(ctx.q) if is_valid(ctx, a, ctx.mul(b1, ctx.e))]


class Unital:
    """Materialized point set of U_{a,b} with O(1) membership."""

    def __init__(self, params: UnitalParams):
        self.params = params
        self.ctx = ctx = params.ctx
        self.a, self.b = params.a, params.b
        q, Q = ctx.q, ctx.Q
        xs = np.arange(Q, dtype=np.int64)
        f = ctx.vadd(ctx.vmul(self.a, ctx.vmul(xs, xs)), ctx.vmul(self.b, ctx.vpow(xs, q + 1)))
        # (x, y, 1) is in U iff y - f(x) lies in GF(q), i.e. y and f(x) share c1
        self.fiber = f // q
        self._f = f

        member = np.zeros(plane.size(ctx), dtype=bool)
        r = np.arange(q, dtype=np.int64)
        ys = ctx.vadd(f[:, None], r[None, :])
        member[(xs[:, None] + Q * ys).ravel()] = True
        member[plane.index_of(ctx, T_INF)] = True
        self.member = member

    @classmethod
    def from_params(cls, ctx: FieldCtx, a, b) -> Unital:
        return cls(validate(ctx, a, b))

    def __len__(self):
        return int(self.member.sum())

    def __contains__(self, P) -> bool:
        return bool(self.member[plane.index_of(self.ctx, P)])

    @cached_property
    def point_indices(self) -> np.ndarray:
        return np.flatnonzero(self.member)

    def contains(self, P) -> bool:
        """Membership straight from the defining equation (no tables)."""
        return contains(self.params, P)

    def enumerate_points(self) -> list[ProjPoint]:
        return [ProjPoint(*plane.from_index(self.ctx, int(i))) for i in self.point_indices]

    def vcontains_affine(self, x, y):
        """Vectorized membership of affine points (x, y, 1)."""
        return self.fiber[x] == np.asarray(y) // self.ctx.q

    def vcontains_index(self, idx):
        idx = np.asarray(idx)
        ok = idx >= 0
        return ok & self.member[np.where(ok, idx, 0)]

    def line_profile(self, l) -> int:
        n = sum(1 for P in plane.points_on(self.ctx, l) if P in self)
        if n not in (1, self.ctx.q + 1):
            raise AssertionError(f"line {l} meets the unital in {n} points")
        return n

    def line_census(self) -> np.ndarray:
        """Number of unital points on every line, indexed by line index."""
        ctx = self.ctx
        Q = ctx.Q
        counts = np.zeros(plane.size(ctx), dtype=np.int64)
        pts = self.point_indices
        aff = pts[pts < Q * Q]
        x0, y0 = aff % Q, aff // Q
        m = np.arange(Q, dtype=np.int64)
        # lines [1, m, -(x0 + m*y0)] and [0, 1, -y0] through (x0, y0, 1)
        X0, M = np.broadcast_arrays(x0[:, None], m[None, :])
        Y0 = np.broadcast_to(y0[:, None], X0.shape)
        l2 = ctx.vneg(ctx.vadd(X0, ctx.vmul(M, Y0)))
        idx = plane.vnormalize_index(ctx, np.ones_like(M), M, l2)
        counts += np.bincount(idx.ravel(), minlength=counts.size)
        idx = plane.vnormalize_index(ctx, np.zeros_like(y0), np.ones_like(y0), ctx.vneg(y0))
        counts += np.bincount(idx, minlength=counts.size)
        # lines through T_inf: [1, 0, c] and [0, 0, 1]
        c = np.arange(Q, dtype=np.int64)
        idx = plane.vnormalize_index(ctx, np.ones_like(c), np.zeros_like(c), c)
        counts[idx] += 1
        counts[plane.index_of(ctx, (0, 0, 1))] += 1
        return counts

    # -- automorphisms --
    def phi(self, t: int) -> Callable:
        return phi(self.params, t)

    def psi(self, gamma: int) -> Callable:
        return psi(self.params, gamma)

    def mu(self, delta: int) -> Callable:
        return mu(self.params, delta)

    def image(self, f: Callable) -> np.ndarray:
        """Sorted point indices of f(U)."""
        pts = [plane.index_of(self.ctx, f(P)) for P in self.enumerate_points()]
        return np.sort(np.array(pts, dtype=np.int64))


def contains(params: UnitalParams, P) -> bool:
    ctx = params.ctx
    x, y, z = plane.normalize(ctx, P)
    if z == 0:
        return (x, y) == (0, 1)
    a, b = params.a, params.b
    m, s, fr = ctx.mul, ctx.sub, ctx.frobenius
    x2 = m(x, x)
    lhs = ctx.add(s(m(a, x2), m(fr(a), fr(x2))), m(ctx.box(b), ctx.norm(x)))
    return lhs == ctx.box(y)


def phi(params: UnitalParams, t: int) -> Callable:
    """(x, y, z) -> (x, y + t z, z), t in GF(q)."""
    ctx = params.ctx
    if not ctx.in_base(t):
        raise AutomorphismDomainError("phi_t needs t in GF(q)")

    def f(P):
        x, y, z = P
        return ProjPoint(*plane.normalize(ctx, (x, ctx.add(y, ctx.mul(t, z)), z)))

    return f


def psi(params: UnitalParams, gamma: int) -> Callable:
    """(x, y, z) -> (x + g z, (2ag - (b^q - b) g^q) x + y + (a g^2 + b g^(q+1)) z, z)."""
    ctx = params.ctx
    a, b = params.a, params.b
    m, add, sub = ctx.mul, ctx.add, ctx.sub
    two = 2 % ctx.p
    cx = sub(m(two, m(a, gamma)), m(sub(ctx.frobenius(b), b), ctx.frobenius(gamma)))
    cz = add(m(a, m(gamma, gamma)), m(b, ctx.norm(gamma)))

    def f(P):
        x, y, z = P
        return ProjPoint(
            *plane.normalize(ctx, (add(x, m(gamma, z)), add(add(m(cx, x), y), m(cz, z)), z))
        )

    return f


def mu(params: UnitalParams, delta: int) -> Callable:
    """(x, y, z) -> (d x, d^2 y, z); d^2 in GF(q)^* if b in GF(q), else d in GF(q)^*."""
    ctx = params.ctx
    d2 = ctx.mul(delta, delta)
    if delta == 0:
        raise AutomorphismDomainError("mu_delta needs delta != 0")
    if ctx.in_base(params.b):
        if not ctx.in_base(d2):
            raise AutomorphismDomainError("mu_delta needs delta^2 in GF(q) when b is in GF(q)")
    elif not ctx.in_base(delta):
        raise AutomorphismDomainError("mu_delta needs delta in GF(q) when b is not in GF(q)")

    def f(P):
        x, y, z = P
        return ProjPoint(*plane.normalize(ctx, (ctx.mul(delta, x), ctx.mul(d2, y), z)))

    return f


def mu_domain(params: UnitalParams) -> list[int]:
    ctx = params.ctx
    if ctx.in_base(params.b):
        return [d for d in range(1, ctx.Q) if ctx.in_base(ctx.mul(d, d))]
    return list(range(1, ctx.q))


def random_automorphism(params: UnitalParams, rng: random.Random, length: int = 4):
    """A random word in the generators; returns (callable, description)."""
    ctx = params.ctx
    deltas = mu_domain(params)
    maps, desc = [], []
    for _ in range(length):
        kind = rng.choice("ptm")
        if kind == "p":
            t = rng.randrange(ctx.q)
            maps.append(phi(params, t))
            desc.append(("phi", t))
        elif kind == "t":
            g = rng.randrange(ctx.Q)
            maps.append(psi(params, g))
            desc.append(("psi", g))
        else:
            d = rng.choice(deltas)
            maps.append(mu(params, d))
            desc.append(("mu", d))

    def f(P):
        for g in maps:
            P = g(P)
        return P

    return f, desc


def s_orbit(params: UnitalParams, start=ProjPoint(0, 0, 1)) -> list[ProjPoint]:
    """Images of ``start`` under every psi_gamma phi_t, one per group element."""
    ctx = params.ctx
    out = []
    for t in range(ctx.q):
        P = phi(params, t)(start)
        for g in range(ctx.Q):
            out.append(psi(params, g)(P))
    return out


# -- equivalence of parameter pairs --

@dataclass(frozen=True)
class EquivWitness:
    v: int
    gamma: int
    u: int
    tau: int  # x -> x^(p^tau) on GF(q^2)


def _transforms(ctx: FieldCtx, a: int, b: int) -> Iterator[tuple[int, int, EquivWitness]]:
    m = ctx.mul
    for tau in range(2 * ctx.exp):
        at, bt = ctx.field_automorphism(a, tau), ctx.field_automorphism(b, tau)
        for gamma in range(1, ctx.Q):
            ag, bg = m(at, m(gamma, gamma)), m(bt, ctx.norm(gamma))
            for v in range(1, ctx.q):
                a2, b2v = m(ag, v), m(bg, v)
                for u in range(ctx.q):
                    yield a2, ctx.add(b2v, u), EquivWitness(v, gamma, u, tau)


def equivalent_params(ctx: FieldCtx, a, b, a2, b2) -> EquivWitness | None:
    """Witness (v, gamma, u, tau) with (a2, b2) = (a^tau g^2 v, b^tau g^(q+1) v + u), or None."""
    a, b, a2, b2 = int(a), int(b), int(a2), int(b2)
    validate(ctx, a, b)
    validate(ctx, a2, b2)
    m = ctx.mul
    for tau in range(2 * ctx.exp):
        at, bt = ctx.field_automorphism(a, tau), ctx.field_automorphism(b, tau)
        for gamma in range(1, ctx.Q):
            ag = m(at, m(gamma, gamma))
            if ag == 0:
                if a2 != 0:
                    break
                vs = range(1, ctx.q)
            else:
                if a2 == 0:
                    break
                v = ctx.div(a2, ag)
                if not (ctx.in_base(v) and v != 0):
                    continue
                vs = [v]
            bg = m(bt, ctx.norm(gamma))
            for v in vs:
                u = ctx.sub(b2, m(bg, v))
                if ctx.in_base(u):
                    return EquivWitness(v, gamma, u, tau)
    return None


def apply_witness(ctx: FieldCtx, a: int, b: int, wit: EquivWitness) -> tuple[int, int]:
    m = ctx.mul
    at, bt = ctx.field_automorphism(a, wit.tau), ctx.field_automorphism(b, wit.tau)
    return (
        m(m(at, m(wit.gamma, wit.gamma)), wit.v),
        ctx.add(m(m(bt, ctx.norm(wit.gamma)), wit.v), wit.u),
    )


def equivalence_classes(ctx: FieldCtx) -> list[list[tuple[int, int]]]:
    """Partition all valid (a, b) into equivalence classes, by orbit closure."""
    valid = [(a, b) for a in range(ctx.Q) for b in range(ctx.Q) if is_valid(ctx, a, b)]
    seen: set[tuple[int, int]] = set()
    classes = []
    for ab in valid:
        if ab in seen:
            continue
        orbit = {(a2, b2) for a2, b2, _ in _transforms(ctx, *ab)}
        seen |= orbit
        classes.append(sorted(orbit))
    return classes
