"""Slow reference implementations used only as test oracles.

Nothing here shares code with the package: field elements are digit tuples,
multiplication is schoolbook polynomial arithmetic and powers are repeated
multiplication.
"""

from __future__ import annotations


class NaiveField:
    """GF(q^2) = GF(q)[e], e^2 = w, on top of GF(q) = GF(p)[X]/(poly)."""

    def __init__(self, p: int, exp: int, poly, w: int):
        self.p, self.exp = p, exp
        self.q = p**exp
        self.Q = self.q * self.q
        self.poly = poly
        self.w = w

    # base field on digit tuples (constant term first)
    def digits(self, x: int):
        return [(x // self.p**i) % self.p for i in range(self.exp)]

    def undigits(self, d) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def badd(self, x: int, y: int) -> int:
        return self.undigits([(a + b) % self.p for a, b in zip(self.digits(x), self.digits(y))])

    def bneg(self, x: int) -> int:
        return self.undigits([(-a) % self.p for a in self.digits(x)])

    def bmul(self, x: int, y: int) -> int:
        p, n = self.p, self.exp
        if n == 1:
            return x * y % p
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * n - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % p
        # reduce with the monic poly
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n + 1):
                    prod[k - n + i] = (prod[k - n + i] - c * self.poly[i]) % p
        return self.undigits(prod[:n])

    # extension
    def split(self, x: int):
        return x % self.q, x // self.q

    def add(self, x: int, y: int) -> int:
        (a0, a1), (b0, b1) = self.split(x), self.split(y)
        return self.badd(a0, b0) + self.q * self.badd(a1, b1)

    def neg(self, x: int) -> int:
        a0, a1 = self.split(x)
        return self.bneg(a0) + self.q * self.bneg(a1)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        (a0, a1), (b0, b1) = self.split(x), self.split(y)
        m, ad = self.bmul, self.badd
        c0 = ad(m(a0, b0), m(self.w, m(a1, b1)))
        c1 = ad(m(a0, b1), m(a1, b0))
        return c0 + self.q * c1

    def pow(self, x: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul(r, x)
        return r

    def inv(self, x: int) -> int:
        return next(y for y in range(1, self.Q) if self.mul(x, y) == 1)

    def squares(self) -> set[int]:
        return {self.mul(x, x) for x in range(self.Q)}

    def base_squares(self) -> set[int]:
        return {self.bmul(x, x) for x in range(self.q)}

    def base_order(self, x: int) -> int:
        r, n = x, 1
        while r != 1:
            r, n = self.bmul(r, x), n + 1
        return n


def naive_for(ctx) -> NaiveField:
    return NaiveField(ctx.p, ctx.exp, ctx.poly, ctx.w)


def least_nonsquare_generator(p: int, exp: int, poly) -> int:
    """Brute force: least x in GF(q)^* of order q - 1 (checked non-square too)."""
    F = NaiveField(p, exp, poly, 0)
    sq = F.base_squares()
    for x in range(1, F.q):
        if F.base_order(x) == F.q - 1:
            assert x not in sq
            return x
    raise AssertionError("no generator")
