import random
from itertools import combinations

import numpy as np
import pytest

from unital_lab import plane
from unital_lab.gfield import ctx_for_order
from unital_lab.plane import ProjPoint
from unital_lab.unital import (
    T_INF,
    AutomorphismDomainError,
    InvalidParamsError,
    Unital,
    apply_witness,
    discriminant,
    equivalence_classes,
    equivalent_params,
    is_valid,
    mu_domain,
    random_automorphism,
    s_orbit,
    valid_b1,
    validate,
)


def params_for(ctx, n=3):
    """Up to n valid (a, b) pairs covering the conic, square and non-square cases."""
    out = [(ctx.g, 0)]
    out += [(1, ctx.mul(b1, ctx.e)) for b1 in valid_b1(ctx, 1)][:1]
    for a in range(2, ctx.Q):
        for b in range(ctx.q, ctx.Q, ctx.q + 1):
            if len(out) >= n:
                return out
            if (a, b) not in out and is_valid(ctx, a, b):
                out.append((a, b))
    return out


# -- validity --

def test_q3_conic_valid():
    ctx = ctx_for_order(3)
    p = validate(ctx, ctx.g, 0)
    d = p.d
    assert d == ctx.mul(4 % 3, ctx.norm(ctx.g))
    # Euler criterion by hand in GF(3): non-square iff d^((q-1)/2) = -1
    assert pow(d, 1, 3) == 2
    assert p.conic and not p.classical and not p.a_square


def test_a_zero_is_classical():
    ctx = ctx_for_order(7)
    # (b - b^q)^2 = (2 b1 e)^2 = 4 b1^2 w is a non-square, so these params are valid
    p = validate(ctx, 0, ctx.e)
    assert p.classical
    assert not ctx.is_square_q(discriminant(ctx, 0, ctx.e))
    with pytest.raises(InvalidParamsError):
        validate(ctx, 0, 0)  # d = 0


def test_q7_valid_b1_scan():
    ctx = ctx_for_order(7)
    expected = []
    for b1 in range(7):
        d = (4 * (b1 * b1 * ctx.w + 1)) % 7
        if d and pow(d, 3, 7) == 6:
            expected.append(b1)
    assert valid_b1(ctx, 1) == expected == [2, 5]
    for b1 in range(7):
        assert discriminant(ctx, 1, ctx.mul(b1, ctx.e)) == (4 * (b1 * b1 * ctx.w + 1)) % 7


def test_invalid_params_raise():
    ctx = ctx_for_order(3)
    with pytest.raises(InvalidParamsError):
        Unital.from_params(ctx, 1, ctx.e)


# -- membership --

def test_contains_examples():
    ctx = ctx_for_order(5)
    U = Unital.from_params(ctx, 1, ctx.e)
    for r in range(ctx.q):
        assert ProjPoint(0, r, 1) in U and U.contains((0, r, 1))
    assert T_INF in U
    for x in range(ctx.Q):
        P = ProjPoint(x, 1, 0)
        assert (P in U) == (x == 0) == U.contains(P)
    assert ProjPoint(1, 0, 0) not in U
    assert ProjPoint(0, ctx.e, 1) not in U and not U.contains((0, ctx.e, 1))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_enumeration_matches_brute_force(q):
    ctx = ctx_for_order(q)
    for a, b in params_for(ctx):
        U = Unital.from_params(ctx, a, b)
        brute = {P for P in plane.all_points(ctx) if U.contains(P)}
        assert set(U.enumerate_points()) == brute
        assert len(U) == q**3 + 1


def test_sizes():
    assert len(Unital.from_params(ctx_for_order(3), ctx_for_order(3).g, 0)) == 28
    c7 = ctx_for_order(7)
    assert len(Unital.from_params(c7, 1, c7.mul(2, c7.e))) == 344


def test_line_profile_examples():
    ctx = ctx_for_order(5)
    U = Unital.from_params(ctx, 1, ctx.e)
    assert U.line_profile((0, 0, 1)) == 1
    assert U.line_profile((1, 0, 0)) == ctx.q + 1
    assert U.line_profile((0, 1, 0)) == 1


def test_line_census_matches_direct_count():
    ctx = ctx_for_order(3)
    U = Unital.from_params(ctx, ctx.g, 0)
    census = U.line_census()
    for l in plane.all_lines(ctx):
        assert census[plane.index_of(ctx, l)] == U.line_profile(l)


@pytest.mark.parametrize("q", [3, 5])
def test_design_property(q):
    ctx = ctx_for_order(q)
    U = Unital.from_params(ctx, ctx.g, 0)
    census = U.line_census()
    pts = U.enumerate_points()
    for P, Q in combinations(pts, 2):
        assert census[plane.index_of(ctx, plane.join(ctx, P, Q))] == q + 1
    n_secants = int((census == q + 1).sum())
    assert n_secants * (q + 1) * q == (q**3 + 1) * q**3


def test_classical_sanity():
    ctx = ctx_for_order(5)
    U = Unital.from_params(ctx, 0, ctx.e)
    assert len(U) == 126
    assert set(np.unique(U.line_census())) == {1, 6}


# -- automorphisms --

def test_phi_example():
    ctx = ctx_for_order(5)
    U = Unital.from_params(ctx, 1, ctx.e)
    for t in range(ctx.q):
        assert U.phi(t)((0, 0, 1)) == (0, t, 1)
    with pytest.raises(AutomorphismDomainError):
        U.phi(ctx.e)


def test_psi_preserves_unital():
    ctx = ctx_for_order(5)
    U = Unital.from_params(ctx, 1, ctx.e)
    rng = random.Random(0)
    for _ in range(10):
        assert np.array_equal(U.image(U.psi(rng.randrange(ctx.Q))), U.point_indices)


def test_mu_domain():
    ctx = ctx_for_order(5)
    conic = Unital.from_params(ctx, ctx.g, 0)
    other = Unital.from_params(ctx, 1, ctx.e)
    assert all(ctx.in_base(ctx.mul(d, d)) for d in mu_domain(conic.params))
    assert len(mu_domain(conic.params)) == 2 * (ctx.q - 1)
    assert mu_domain(other.params) == list(range(1, ctx.q))
    with pytest.raises(AutomorphismDomainError):
        other.mu(ctx.e)
    with pytest.raises(AutomorphismDomainError):
        conic.mu(0)
    for d in mu_domain(conic.params):
        assert np.array_equal(conic.image(conic.mu(d)), conic.point_indices)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_random_group_elements_preserve_unital(q):
    ctx = ctx_for_order(q)
    rng = random.Random(q)
    for a, b in params_for(ctx, 2):
        U = Unital.from_params(ctx, a, b)
        for _ in range(50):
            f, _ = random_automorphism(U.params, rng)
            assert np.array_equal(U.image(f), U.point_indices)


@pytest.mark.parametrize("q", [3, 5])
def test_s_regular(q):
    ctx = ctx_for_order(q)
    U = Unital.from_params(ctx, ctx.g, 0)
    orbit = s_orbit(U.params)
    assert len(orbit) == q**3 == len(set(orbit))
    assert set(orbit) == set(U.enumerate_points()) - {T_INF}


# -- equivalence --

def test_equivalence_identity_witness():
    ctx = ctx_for_order(5)
    w = equivalent_params(ctx, 1, ctx.e, 1, ctx.e)
    assert w is not None
    assert apply_witness(ctx, 1, ctx.e, w) == (1, ctx.e)


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_prime_class_count(q):
    ctx = ctx_for_order(q)
    assert len(equivalence_classes(ctx)) == (q + 1) // 2


def test_q5_classes():
    ctx = ctx_for_order(5)
    kinds = set()
    for cl in equivalence_classes(ctx):
        a, b = cl[0]
        p = validate(ctx, a, b)
        if p.classical:
            kinds.add("classical")
        elif not p.a_square:
            kinds.add("conic")
            assert any(b2 == 0 for _, b2 in cl)
        else:
            kinds.add("square")
            assert all(b2 != 0 for _, b2 in cl)
    assert kinds == {"classical", "conic", "square"}


def test_witness_roundtrip():
    ctx = ctx_for_order(7)
    rng = random.Random(1)
    cl = [c for c in equivalence_classes(ctx) if len(c) > 1]
    for c in cl:
        for _ in range(5):
            (a, b), (a2, b2) = rng.sample(c, 2)
            w = equivalent_params(ctx, a, b, a2, b2)
            assert w is not None and apply_witness(ctx, a, b, w) == (a2, b2)
    a, b = cl[0][0]
    a2, b2 = cl[1][0]
    assert equivalent_params(ctx, a, b, a2, b2) is None
