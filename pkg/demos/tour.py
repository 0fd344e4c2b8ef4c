"""A walk through the package at q = 7.

Run with ``python3 demos/tour.py``.
"""

from unital_lab import (
    Unital,
    canonical_search,
    conic_construction,
    ctx_for_order,
    q3_construction,
    transfer_b,
    verify_params,
)
from unital_lab.onan import f_point, realize
from unital_lab.unital import valid_b1

ctx = ctx_for_order(7)
print(f"GF(49) = GF(7)[e], e^2 = {ctx.w}; primitive g = {ctx.coords(ctx.g)}")

# two non-classical unitals: the conic one and one with a square a
conic = Unital.from_params(ctx, ctx.g, 0)
b1 = valid_b1(ctx, 1)[0]
square = Unital.from_params(ctx, 1, ctx.mul(b1, ctx.e))
for name, U in [("conic", conic), ("a = 1", square)]:
    census = U.line_census()
    print(f"{name:6s}: {len(U)} points, tangents {(census == 1).sum()}, secants {(census == 8).sum()}")

# exhaustive search in the canonical frame
for name, U in [("conic", conic), ("a = 1", square)]:
    reps, rep = canonical_search(U)
    print(f"{name:6s}: {rep.config_count} canonical configurations, {rep.total_count} in all ({rep.seconds}s)")

# an explicit one, checked two ways
tp = conic_construction(ctx)
print("conic construction:", tp.as_dict())
print("  verifies:", bool(verify_params(conic, tp)))
print("  F point in U:", f_point(conic, tp).in_unital)
for n, P in realize(tp).points.items():
    print(f"  {n} = {tuple(ctx.coords(c) for c in P)}")

# move a configuration between b values
tp = q3_construction(ctx, b1)
for b2 in valid_b1(ctx, 1):
    out, wit = transfer_b(tp, b2)
    U2 = Unital.from_params(ctx, 1, ctx.mul(b2, ctx.e))
    print(f"transfer b1={b1} -> b2={b2}: m = {ctx.coords(wit.m)}, verifies {bool(verify_params(U2, out))}")
