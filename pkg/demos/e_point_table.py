"""Tabulate whether E = MN ^ PQ lies in the unital, over every canonical
configuration, split by the character of a.

Run with ``python3 demos/e_point_table.py [qmax]``.
"""

import sys

from unital_lab import Unital, canonical_search, ctx_for_order
from unital_lab.onan import e_point_experiment
from unital_lab.unital import is_valid, valid_b1

qmax = int(sys.argv[1]) if len(sys.argv) > 1 else 11
print(f"{'q':>3} {'a':>10} {'configs':>8} {'E in U':>7} {'variant form':>13}")
for q in (5, 7, 9, 11, 13):
    if q > qmax:
        break
    ctx = ctx_for_order(q)
    cases = [("non-square", ctx.g, 0)]
    cases += [("square", 1, ctx.mul(b, ctx.e)) for b in valid_b1(ctx, 1)[:1]]
    for label, a, b in cases:
        assert is_valid(ctx, a, b)
        U = Unital.from_params(ctx, a, b)
        reps, _ = canonical_search(U)
        rows = e_point_experiment(U, reps)
        hits = sum(r["E_in_unital"] for r in rows)
        variant = sum(r["matches_variant_form"] for r in rows)
        print(f"{q:>3} {label:>10} {len(rows):>8} {hits:>7} {variant:>13}")
