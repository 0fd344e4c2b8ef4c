"""Exhaustive search for BM-special Triple O'Nans.

:func:`canonical_search` works in the canonical frame (special line [1,0,0],
V = (0,0,1)) and vectorizes over (j, k, s, t) for each slope x of the line
PQ.  The group S of order q^3 acts regularly on the affine unital points, so
the total number of BM-special Triple O'Nans is q^3 times the canonical count.

:func:`direct_enumeration_oracle` counts the same objects straight from the
point set, without the canonical frame or the closed forms for M and N.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from . import plane
from .onan import TripleOnanParams, realize
from .unital import T_INF, Unital


class ClassicalUnitalError(ValueError):
    pass


class InvarianceViolation(AssertionError):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass
class SearchReport:
    q: int
    a: list
    b: list
    a_square: bool
    tuple_count: int
    config_count: int
    total_count: int
    seconds: float
    bounds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _slice(U: Unital, xs) -> list[tuple[int, int, int, int, int]]:
    ctx = U.ctx
    q, Q = ctx.q, ctx.Q
    vm, va, vs, vd = ctx.vmul, ctx.vadd, ctx.vsub, ctx.vdiv
    s_, t_ = np.meshgrid(np.arange(1, q), np.arange(1, q), indexing="ij")
    keep = s_ != t_
    S, T = s_[keep], t_[keep]
    ST = vm(S, T)
    found = []
    cs = np.arange(1, Q, dtype=np.int64)
    for x in xs:
        on = cs[U.fiber[vm(x, cs)] == cs // q]
        J, K = np.meshgrid(on, on, indexing="ij")
        keep = J != K
        J, K = J[keep], K[keep]
        H = vd(J, K)
        # broadcast pairs (rows) against (s, t) (columns)
        Hb, Kb = H[:, None], K[:, None]
        d1 = vs(S[None, :], vm(T[None, :], Hb))
        d2 = vs(T[None, :], vm(S[None, :], Hb))
        ok = (d1 != 0) & (d2 != 0)
        one_h = vs(1, Hb)
        W = vd(vm(Hb, vs(S, T)[None, :]), d1)
        Uc = vd(vm(ST[None, :], one_h), d1)
        Vh = vd(vm(Hb, vs(T, S)[None, :]), d2)
        Zh = vd(vm(ST[None, :], one_h), d2)
        kx = vm(Kb, x)
        ok &= U.fiber[vm(kx, W)] == va(vm(Kb, W), Uc) // q
        ok &= U.fiber[vm(kx, Vh)] == va(vm(Kb, Vh), Zh) // q
        for r, c in zip(*np.nonzero(ok)):
            found.append((int(x), int(K[r]), int(H[r]), int(S[c]), int(T[c])))
    return found


def canonical_tuples(U: Unital, workers: int = 1) -> list[TripleOnanParams]:
    """Every canonical-frame tuple (x, k, h, s, t) whose seven points lie in U."""
    ctx = U.ctx
    if U.params.classical:
        raise ClassicalUnitalError("configuration search needs a non-classical unital")
    xs = list(range(1, ctx.Q))
    if workers > 1:
        chunks = [xs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_slice, [U] * workers, chunks))
        raw = [t for part in parts for t in part]
    else:
        raw = _slice(U, xs)
    raw.sort()
    return [TripleOnanParams(ctx, U.a, U.b, x, k, h, s, t) for x, k, h, s, t in raw]


def canonical_search(U: Unital, workers: int = 1) -> tuple[list[TripleOnanParams], SearchReport]:
    """Deduplicated canonical configurations (one tuple each) and a report.

    Raises InvarianceViolation unless every configuration is hit by exactly
    four tuples (the P<->Q and X<->Y relabellings).
    """
    t0 = time.perf_counter()
    ctx = U.ctx
    tuples = canonical_tuples(U, workers)
    groups: dict[frozenset, list[TripleOnanParams]] = {}
    for tp in tuples:
        groups.setdefault(realize(tp).identity(ctx), []).append(tp)
    bad = {len(v) for v in groups.values()} - {4}
    if bad:
        raise InvarianceViolation(f"dedup factor {bad} != 4")
    reps = sorted((min(v, key=_key) for v in groups.values()), key=_key)
    q = ctx.q
    report = SearchReport(
        q=q,
        a=list(ctx.coords(U.a)),
        b=list(ctx.coords(U.b)),
        a_square=U.params.a_square,
        tuple_count=len(tuples),
        config_count=len(reps),
        total_count=q**3 * len(reps),
        seconds=round(time.perf_counter() - t0, 3),
        bounds={
            "x": ctx.Q - 1,
            "jk_ordered_pairs": q * (q - 1),
            "st_ordered_pairs": (q - 1) * (q - 2),
            "workers": workers,
        },
    )
    return reps, report


def _key(tp: TripleOnanParams):
    return (tp.x, tp.k, tp.h, tp.s, tp.t)


def count_invariance_check(ctx, pairs, workers: int = 1) -> int:
    """Canonical counts for each (a, b); all must agree.  Returns the common count."""
    counts = {}
    chars = set()
    for a, b in pairs:
        U = Unital.from_params(ctx, a, b)
        chars.add(U.params.a_square)
        counts[(a, b)] = canonical_search(U, workers)[1].config_count
    if len(chars) > 1:
        raise ValueError("parameter pairs mix square and non-square a")
    if len(set(counts.values())) != 1:
        raise InvarianceViolation(f"counts differ: {counts}")
    return next(iter(counts.values()))


# -- independent oracle --

def direct_enumeration_oracle(U: Unital, cap: int | None = 2_000_000, diagonal_points=None) -> set[frozenset]:
    """All BM-special Triple O'Nans, as sets of six line indices.

    For every affine unital point D (or those in ``diagonal_points``), every
    pair {X, Y} of unital points on the line D T_inf and every pair {P, Q} on
    another secant through D, the quadrangle P, Q, X, Y has V = D and is kept
    when M and N are unital points too.
    """
    ctx = U.ctx
    q = ctx.q
    n_d = q**3 if diagonal_points is None else len(diagonal_points)
    work = n_d * (q - 1) * (q - 2) // 2 * (q * q - 1) * q * (q - 1) // 2
    if cap is not None and work > cap:
        raise ResourceCapExceeded(f"{work} quadrangles exceed cap {cap}")
    pts = [P for P in U.enumerate_points() if P != T_INF]
    if diagonal_points is None:
        diagonal_points = pts
    found = set()
    for D in diagonal_points:
        special = plane.join(ctx, D, T_INF)
        by_line: dict = {}
        for P in pts:
            if P != D:
                by_line.setdefault(plane.join(ctx, D, P), []).append(P)
        XYs = list(combinations(by_line.pop(special), 2))
        PQs = [pq for line_pts in by_line.values() if len(line_pts) > 1 for pq in combinations(line_pts, 2)]
        if not XYs or not PQs:
            continue
        quads = np.array([[P, Q, X, Y] for P, Q in PQs for X, Y in XYs], dtype=np.int64)
        P, Q, X, Y = (quads[:, i, :].T for i in range(4))
        M = plane.vcross(ctx, plane.vcross(ctx, P, X), plane.vcross(ctx, Q, Y))
        N = plane.vcross(ctx, plane.vcross(ctx, P, Y), plane.vcross(ctx, Q, X))
        ok = U.vcontains_index(plane.vnormalize_index(ctx, *M))
        ok &= U.vcontains_index(plane.vnormalize_index(ctx, *N))
        for row in np.flatnonzero(ok):
            P_, Q_, X_, Y_ = (tuple(int(v) for v in quads[row, i]) for i in range(4))
            lines = [plane.join(ctx, A, B) for A, B in ((P_, X_), (Q_, Y_), (P_, Y_), (Q_, X_), (P_, Q_), (X_, Y_))]
            found.add(frozenset(plane.index_of(ctx, l) for l in lines))
    return found
