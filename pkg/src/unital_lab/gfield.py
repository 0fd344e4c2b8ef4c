"""Exact arithmetic in GF(q) and GF(q^2) for odd prime powers q.

GF(q^2) is built as GF(q)[e] with e^2 = w, where w is the least generator of
GF(q)^* (a generator is automatically a non-square).  Every element of GF(q^2)
is an integer index ``c0 + q*c1`` standing for ``c0 + c1*e``; the subfield
GF(q) is exactly the indices ``0 .. q-1``.  For q = p^n with n > 1 the base
field element ``c0`` is itself the base-p digit encoding of a polynomial
modulo a fixed Conway polynomial.

Multiplication goes through full log/antilog tables with respect to a
generator g of GF(q^2)^* chosen so that g^((q+1)/2) = e.  Scalar methods
work on plain ints; the ``v*`` methods are the numpy versions used by the
search loops.
"""

from __future__ import annotations

import os
from functools import cached_property
from math import gcd

import numpy as np

__all__ = [
    "CONWAY",
    "FieldCtx",
    "Fq2Elem",
    "FqElem",
    "FieldError",
    "NonSquareError",
    "make_ctx",
    "max_order",
]

DEFAULT_MAX_ORDER = 1 << 16

# Conway polynomials, coefficients listed from the constant term upwards
# (monic leading coefficient included).
CONWAY = {
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    """Bad field parameters (even characteristic, non-prime, too large)."""


class OrderTooLarge(FieldError):
    """q^2 exceeds the table bound (UNITAL_LAB_MAX_ORDER)."""


class NonSquareError(ArithmeticError):
    pass


def max_order() -> int:
    env = os.environ.get("UNITAL_LAB_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _base_field_tables(p: int, exp: int, poly):
    """Return (add table, antilog list of a primitive element) for GF(p^exp)."""
    q = p**exp
    digits = np.array([[(i // p**k) % p for k in range(exp)] for i in range(q)], dtype=np.int64)
    weights = p ** np.arange(exp, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

    if exp == 1:
        for cand in range(2, p):
            if all(pow(cand, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)):
                gen = cand
                break
        powers = [1]
        for _ in range(q - 2):
            powers.append(powers[-1] * gen % p)
        return add, powers

    # multiply by the root X of the Conway polynomial, which is primitive
    lower = [(-c) % p for c in poly[:-1]]
    powers = [1]
    cur = [1] + [0] * (exp - 1)
    for _ in range(q - 2):
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(cur[i] + top * lower[i]) % p for i in range(exp)]
        powers.append(sum(c * p**i for i, c in enumerate(cur)))
    if len(set(powers)) != q - 1:
        raise FieldError(f"polynomial {poly} is not primitive over GF({p})")
    return add, powers


class FieldCtx:
    """Precomputed arithmetic for GF(q) and GF(q^2) = GF(q)[e], e^2 = w.

    Immutable after construction.  Use :func:`make_ctx` to build one.
    """

    def __init__(self, p: int, exp: int, poly=None):
        self.p = p
        self.exp = exp
        self.q = q = p**exp
        self.Q = Q = q * q
        self.poly = poly

        addq, powers = _base_field_tables(p, exp, poly)
        # re-base the GF(q) logs on w = least generator
        log_any = [0] * q
        for i, v in enumerate(powers):
            log_any[v] = i
        self.w = w = next(x for x in range(1, q) if gcd(log_any[x], q - 1) == 1)
        expq = [1] * (q - 1)
        for i in range(1, q - 1):
            expq[i] = powers[(log_any[w] * i) % (q - 1)]
        logq = [0] * q
        for i, v in enumerate(expq):
            logq[v] = i

        self._addq = addq
        self._addq_l = addq.tolist()
        self._negq_l = [int(np.argmax(addq[x] == 0)) for x in range(q)]
        self._expq_l = expq
        self._logq_l = logq

        # GF(q^2): find g with g primitive and g^((q+1)/2) = e
        self.e = q
        factors = _prime_factors(Q - 1)
        g = None
        for cand in range(q, Q):
            if self._pair_pow(cand, (q + 1) // 2) != self.e:
                continue
            if all(self._pair_pow(cand, (Q - 1) // r) != 1 for r in factors):
                g = cand
                break
        assert g is not None
        self.g = g
        exp2 = [1] * (Q - 1)
        for i in range(1, Q - 1):
            exp2[i] = self._pair_mul(exp2[i - 1], g)
        log2 = [0] * Q
        for i, v in enumerate(exp2):
            log2[v] = i
        self._exp2_l = exp2 + exp2
        self._log2_l = log2
        self._exp2 = np.array(self._exp2_l, dtype=np.int64)
        self._log2 = np.array(log2, dtype=np.int64)
        self._neg2_l = [self._negq_l[x % q] + q * self._negq_l[x // q] for x in range(Q)]
        self._neg2 = np.array(self._neg2_l, dtype=np.int64)
        self._frob_l = [x % q + q * self._negq_l[x // q] for x in range(Q)]
        self._frob = np.array(self._frob_l, dtype=np.int64)

    # -- construction helpers (pair arithmetic over GF(q)) --
    def _mulq(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        lq = self._logq_l
        return self._expq_l[(lq[a] + lq[b]) % (self.q - 1)]

    def _pair_mul(self, x: int, y: int) -> int:
        q, add, m = self.q, self._addq_l, self._mulq
        a0, a1 = x % q, x // q
        b0, b1 = y % q, y // q
        c0 = add[m(a0, b0)][m(self.w, m(a1, b1))]
        c1 = add[m(a0, b1)][m(a1, b0)]
        return c0 + q * c1

    def _pair_pow(self, x: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._pair_mul(r, x)
            x = self._pair_mul(x, x)
            n >>= 1
        return r

    def __repr__(self):
        return f"FieldCtx(p={self.p}, exp={self.exp}, q={self.q}, w={self.w}, g={self.g})"

    # -- element construction --
    def elem(self, c0: int = 0, c1: int = 0) -> Fq2Elem:
        return Fq2Elem(self, self.index(c0, c1))

    def __call__(self, x) -> Fq2Elem:
        if isinstance(x, Fq2Elem):
            return x
        if isinstance(x, (tuple, list)):
            return self.elem(*x)
        return Fq2Elem(self, self.from_int(x))

    def index(self, c0: int, c1: int = 0) -> int:
        if not (0 <= c0 < self.q and 0 <= c1 < self.q):
            raise ValueError(f"coordinates ({c0}, {c1}) out of range for q={self.q}")
        return c0 + self.q * c1

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) <= GF(q)."""
        return n % self.p

    def coords(self, x: int) -> tuple[int, int]:
        x = int(x)
        return x % self.q, x // self.q

    @cached_property
    def base_elements(self) -> list[int]:
        return list(range(self.q))

    @cached_property
    def elements(self) -> list[int]:
        return list(range(self.Q))

    # -- scalar arithmetic on indices --
    def add(self, x: int, y: int) -> int:
        q, a = self.q, self._addq_l
        return a[x % q][y % q] + q * a[x // q][y // q]

    def neg(self, x: int) -> int:
        return self._neg2_l[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self._neg2_l[y])

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp2_l[self._log2_l[x] + self._log2_l[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp2_l[(self.Q - 1 - self._log2_l[x]) % (self.Q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return self._exp2_l[(self._log2_l[x] * n) % (self.Q - 1)]

    def frobenius(self, x: int) -> int:
        """x -> x^q, i.e. (c0, c1) -> (c0, -c1)."""
        return self._frob_l[x]

    def box(self, x: int) -> int:
        """x - x^q; always of the form 2*c1*e."""
        return self.sub(x, self._frob_l[x])

    def norm(self, x: int) -> int:
        return self.mul(x, self._frob_l[x])

    def in_base(self, x: int) -> bool:
        return x < self.q

    def log(self, x: int) -> int:
        """Discrete log to base g in GF(q^2)."""
        if x == 0:
            raise ValueError("log of zero")
        return self._log2_l[x]

    def log_q(self, x: int) -> int:
        """Discrete log to base w of a nonzero element of GF(q)."""
        if x == 0 or x >= self.q:
            raise ValueError("log_q needs a nonzero element of GF(q)")
        return self._logq_l[x]

    def w_pow(self, n: int) -> int:
        return self._expq_l[n % (self.q - 1)]

    def is_square(self, x: int) -> bool:
        """Square in GF(q^2)."""
        return x == 0 or self._log2_l[x] % 2 == 0

    def is_square_q(self, x: int) -> bool:
        """Square in GF(q); x must lie in GF(q)."""
        if x >= self.q:
            raise ValueError("element not in GF(q)")
        return x == 0 or self._logq_l[x] % 2 == 0

    def sqrt(self, x: int) -> int:
        """Square root in GF(q^2); the root with the smaller index."""
        if x == 0:
            return 0
        lg = self._log2_l[x]
        if lg % 2:
            raise NonSquareError("not a square in GF(q^2)")
        r = self._exp2_l[lg // 2]
        return min(r, self._neg2_l[r])

    def sqrt_q(self, x: int) -> int:
        """Square root inside GF(q); the root with the smaller index."""
        if not self.is_square_q(x):
            raise NonSquareError("not a square in GF(q)")
        if x == 0:
            return 0
        r = self._expq_l[self._logq_l[x] // 2]
        return min(r, self._negq_l[r])

    def roots(self, x: int) -> list[int]:
        """Both square roots in GF(q^2), sorted; [] for non-squares."""
        if x == 0:
            return [0]
        if not self.is_square(x):
            return []
        r = self.sqrt(x)
        return sorted({r, self._neg2_l[r]})

    def field_automorphism(self, x: int, i: int) -> int:
        """x -> x^(p^i), an automorphism of GF(q^2) (i taken mod 2*exp)."""
        if x == 0:
            return 0
        return self._exp2_l[(self._log2_l[x] * self.p ** (i % (2 * self.exp))) % (self.Q - 1)]

    # -- vectorized arithmetic on int64 arrays --
    def vadd(self, x, y):
        q = self.q
        return self._addq[x % q, y % q] + q * self._addq[x // q, y // q]

    def vneg(self, x):
        return self._neg2[x]

    def vsub(self, x, y):
        return self.vadd(x, self._neg2[y])

    def vmul(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        r = self._exp2[self._log2[x] + self._log2[y]]
        return np.where((x == 0) | (y == 0), 0, r)

    def vinv(self, x):
        """Inverse; zero maps to zero (callers mask)."""
        x = np.asarray(x)
        r = self._exp2[(self.Q - 1 - self._log2[x]) % (self.Q - 1)]
        return np.where(x == 0, 0, r)

    def vdiv(self, x, y):
        return self.vmul(x, self.vinv(y))

    def vfrob(self, x):
        return self._frob[x]

    def vpow(self, x, n: int):
        x = np.asarray(x)
        r = self._exp2[(self._log2[x] * n) % (self.Q - 1)]
        if n == 0:
            return np.ones_like(x)
        return np.where(x == 0, 0, r)

    def header(self) -> dict:
        """Self-describing context record embedded in JSON output."""
        return {
            "p": self.p,
            "exp": self.exp,
            "q": self.q,
            "w": self.w,
            "g": [self.g % self.q, self.g // self.q],
            "poly": list(self.poly) if self.poly else None,
        }


class Fq2Elem:
    """Element c0 + c1*e of GF(q^2) bound to a context.

    Elements of GF(q) are the instances with c1 == 0; ``FqElem`` is an alias.
    """

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = int(v)

    def _coerce(self, other) -> int:
        if isinstance(other, Fq2Elem):
            return other.v
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return Fq2Elem(self.ctx, v)

    @property
    def c0(self) -> int:
        return self.v % self.ctx.q

    @property
    def c1(self) -> int:
        return self.v // self.ctx.q

    @property
    def coords(self) -> tuple[int, int]:
        return self.c0, self.c1

    @property
    def in_base(self) -> bool:
        return self.v < self.ctx.q

    def __add__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.v, o))

    def __rsub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.v))

    def __mul__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(self.v, o))

    def __rtruediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(o, self.v))

    def __pow__(self, n: int):
        return self._wrap(self.ctx.pow(self.v, n))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.v))

    def __eq__(self, o):
        if isinstance(o, Fq2Elem):
            return self.v == o.v and self.ctx is o.ctx
        if isinstance(o, int):
            return self.v == self.ctx.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"<{self.c0}+{self.c1}e>"

    def frob(self) -> Fq2Elem:
        return self._wrap(self.ctx.frobenius(self.v))

    def box(self) -> Fq2Elem:
        return self._wrap(self.ctx.box(self.v))

    def norm(self) -> Fq2Elem:
        return self._wrap(self.ctx.norm(self.v))

    def inv(self) -> Fq2Elem:
        return self._wrap(self.ctx.inv(self.v))

    def is_square(self) -> bool:
        return self.ctx.is_square(self.v)

    def is_square_q(self) -> bool:
        return self.ctx.is_square_q(self.v)

    def sqrt(self) -> Fq2Elem:
        return self._wrap(self.ctx.sqrt(self.v))

    def sqrt_q(self) -> Fq2Elem:
        return self._wrap(self.ctx.sqrt_q(self.v))

    def roots(self) -> list[Fq2Elem]:
        return [self._wrap(r) for r in self.ctx.roots(self.v)]


FqElem = Fq2Elem

_CTX_CACHE: dict[tuple[int, int], FieldCtx] = {}


def make_ctx(p: int, exp: int = 1) -> FieldCtx:
    """Build (or fetch from cache) the context for q = p**exp.

    Raises FieldError for even or non-prime p, unsupported extension degrees,
    and orders q^2 above :func:`max_order`.
    """
    if p == 2:
        raise FieldError("even characteristic is not supported")
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if exp < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**exp
    if q * q > max_order():
        raise OrderTooLarge(f"q^2 = {q * q} exceeds the table bound {max_order()}")
    poly = None
    if exp > 1:
        if (p, exp) not in CONWAY:
            raise FieldError(f"no irreducible polynomial on file for GF({p}^{exp})")
        poly = CONWAY[(p, exp)]
    key = (p, exp)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(p, exp, poly)
    return _CTX_CACHE[key]


def ctx_for_order(q: int) -> FieldCtx:
    """Context for an odd prime power given as an integer."""
    for p in range(3, q + 1, 2):
        if q % p == 0:
            exp, n = 0, q
            while n % p == 0:
                n //= p
                exp += 1
            if n != 1:
                break
            return make_ctx(p, exp)
    raise FieldError(f"{q} is not an odd prime power")
