import random
from itertools import combinations

import numpy as np
import pytest

from unital_lab import plane
from unital_lab.gfield import ctx_for_order
from unital_lab.plane import DegenerateError, ProjLine, ProjPoint


@pytest.fixture(scope="module")
def ctx3():
    return ctx_for_order(3)


def _random_point(ctx, rng):
    while True:
        v = [rng.randrange(ctx.Q) for _ in range(3)]
        if any(v):
            return plane.point(ctx, *v)


def test_join_examples(ctx3):
    assert plane.join(ctx3, (0, 0, 1), (0, 1, 0)) == ProjLine(1, 0, 0)
    assert plane.join(ctx3, (0, 0, 1), (1, 0, 0)) == ProjLine(0, 1, 0)


def test_meet_examples(ctx3):
    assert plane.meet(ctx3, (1, 0, 0), (0, 0, 1)) == ProjPoint(0, 1, 0)
    with pytest.raises(DegenerateError):
        plane.meet(ctx3, (1, 0, 0), (1, 0, 0))
    with pytest.raises(DegenerateError):
        plane.join(ctx3, (0, 0, 1), (0, 0, 1))


def test_incident_examples(ctx3):
    assert plane.incident(ctx3, (1, 0, 0), (0, 1, 0))
    for c in range(ctx3.Q):
        assert plane.incident(ctx3, (1, 0, 0), (0, c, 1))
    assert not plane.incident(ctx3, (1, 0, 0), (1, 0, 1))


def test_normalize():
    ctx = ctx_for_order(7)
    rng = random.Random(5)
    for _ in range(200):
        P = _random_point(ctx, rng)
        lam = rng.randrange(1, ctx.Q)
        scaled = tuple(ctx.mul(lam, c) for c in P)
        assert plane.normalize(ctx, scaled) == tuple(P)
        assert plane.normalize(ctx, P) == tuple(P)
        assert plane.from_index(ctx, plane.index_of(ctx, P)) == tuple(P)
    with pytest.raises(DegenerateError):
        plane.normalize(ctx, (0, 0, 0))


def test_random_join_meet():
    ctx = ctx_for_order(9)
    rng = random.Random(7)
    for _ in range(200):
        P, Q, R, S = (_random_point(ctx, rng) for _ in range(4))
        if len({P, Q, R, S}) < 4:
            continue
        l = plane.join(ctx, P, Q)
        assert plane.incident(ctx, l, P) and plane.incident(ctx, l, Q)
        m = plane.join(ctx, R, S)
        if l != m:
            X = plane.meet(ctx, l, m)
            assert plane.incident(ctx, l, X) and plane.incident(ctx, m, X)
        if not plane.collinear(ctx, P, Q, R):
            assert plane.meet(ctx, plane.join(ctx, P, Q), plane.join(ctx, P, R)) == P


def test_q3_plane_exhaustive(ctx3):
    """91 points, 10 per line, any two points on exactly one line."""
    pts = list(plane.all_points(ctx3))
    lines = list(plane.all_lines(ctx3))
    assert len(pts) == len(lines) == 91 == plane.size(ctx3)
    assert len(set(pts)) == 91
    inc = np.array([[plane.incident(ctx3, l, P) for P in pts] for l in lines])
    assert (inc.sum(axis=1) == 10).all()
    assert (inc.sum(axis=0) == 10).all()
    # two distinct points share exactly one line
    shared = inc.T.astype(int) @ inc.astype(int)
    off = shared[~np.eye(91, dtype=bool)]
    assert (off == 1).all()
    for l in lines:
        assert [P for P, on in zip(pts, inc[plane.index_of(ctx3, l)]) if on] == plane.points_on(ctx3, l)


def test_vectorized_helpers():
    ctx = ctx_for_order(5)
    rng = random.Random(2)
    P = [_random_point(ctx, rng) for _ in range(100)]
    Q = [_random_point(ctx, rng) for _ in range(100)]
    A = np.array(P).T
    B = np.array(Q).T
    C = plane.vcross(ctx, A, B)
    idx = plane.vnormalize_index(ctx, *C)
    for i in range(100):
        c = plane.cross(ctx, P[i], Q[i])
        if c == (0, 0, 0):
            assert idx[i] == -1
        else:
            assert idx[i] == plane.index_of(ctx, plane.normalize(ctx, c))
            assert plane.vincident(ctx, C, A)[i]


def test_mn_meet_formula():
    """PX ^ QY recomputed by meets equals M = (kxW, kW+U, 1)."""
    from unital_lab.onan import TripleOnanParams, canonical_points, closed_form_mn

    ctx = ctx_for_order(7)
    rng = random.Random(11)
    n = 0
    while n < 100:
        x, k, h = (rng.randrange(1, ctx.Q) for _ in range(3))
        s, t = rng.randrange(1, ctx.q), rng.randrange(1, ctx.q)
        if ctx.in_base(h) or s == t:
            continue
        tp = TripleOnanParams(ctx, 1, 0, x, k, h, s, t)
        c = canonical_points(tp)
        try:
            M = plane.meet(ctx, plane.join(ctx, c["P"], c["X"]), plane.join(ctx, c["Q"], c["Y"]))
            N = plane.meet(ctx, plane.join(ctx, c["P"], c["Y"]), plane.join(ctx, c["Q"], c["X"]))
        except DegenerateError:
            continue
        assert (M, N) == closed_form_mn(tp)
        n += 1


def test_all_pairs_of_points_on_line(ctx3):
    l = plane.line(ctx3, 1, 2, 3)
    for P, Q in combinations(plane.points_on(ctx3, l), 2):
        assert plane.join(ctx3, P, Q) == l
