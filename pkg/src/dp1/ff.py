"""Exact arithmetic in F_p and F_{p^n}, plus the univariate polynomial
algorithms the rest of the pipeline needs (irreducibility, factoring,
root extraction, subfield embeddings).

Elements are fixed-length coefficient vectors over F_p in the power basis
of the modulus root.  Primes are small (p < 2^16), so plain machine-word
arithmetic with explicit reductions is exact.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateInputError, FieldMismatchError

# Fixed seed for equal-degree splitting; reproducible factor order.
_EDF_SEED = 0x0DF5EED


def is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _factor_int(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (n fits our q sizes)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """A finite field F_{p^n} presented by characteristic, degree and a
    monic irreducible modulus polynomial (coefficients ascending).

    Contexts are immutable after construction; the optional square table
    and Zech-logarithm tables are built lazily exactly once and are then
    read-only, so contexts are safe to share across workers.
    """

    __slots__ = ("p", "n", "modulus", "q", "_red", "_square_set", "_zech")

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        if not is_small_prime(p) or p == 2 or p >= 1 << 16:
            raise DegenerateInputError(f"characteristic must be an odd prime < 2^16, got {p}")
        if n < 1:
            raise DegenerateInputError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, n)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1 or modulus[n] != 1:
            raise DegenerateInputError("modulus must be monic of degree n")
        self.p = p
        self.n = n
        self.modulus = modulus
        self.q = p**n
        # Reduction table: _red[k] = coefficient vector of t^(n+k) mod modulus.
        red = []
        cur = [(-c) % p for c in modulus[:n]]  # t^n
        red.append(tuple(cur))
        for _ in range(1, n - 1):
            shifted = [0] + cur[: n - 1]
            top = cur[n - 1]
            cur = [(shifted[i] + top * red[0][i]) % p for i in range(n)]
            red.append(tuple(cur))
        self._red = tuple(red)
        self._square_set: frozenset | None = None
        self._zech = None
        if n > 1 and not is_irreducible(UniPoly.from_ints(FieldCtx(p), modulus)):
            raise DegenerateInputError(f"modulus {modulus} is reducible over F_{p}")

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n})"

    # -- element constructors -----------------------------------------------

    def elem(self, coeffs: int | Sequence[int]) -> "FqElem":
        if isinstance(coeffs, int):
            vec = (coeffs % self.p,) + (0,) * (self.n - 1)
        else:
            if len(coeffs) > self.n:
                raise DegenerateInputError("coefficient vector longer than degree")
            vec = tuple(c % self.p for c in coeffs) + (0,) * (self.n - len(coeffs))
        return FqElem(self, vec)

    def zero(self) -> "FqElem":
        return FqElem(self, (0,) * self.n)

    def one(self) -> "FqElem":
        return self.elem(1)

    def gen(self) -> "FqElem":
        """The class of t (the modulus root)."""
        if self.n == 1:
            return self.zero()
        return FqElem(self, (0, 1) + (0,) * (self.n - 2))

    def from_int(self, i: int) -> "FqElem":
        """Element whose coefficient vector is the base-p digits of i."""
        digits = []
        for _ in range(self.n):
            digits.append(i % self.p)
            i //= self.p
        return FqElem(self, tuple(digits))

    def to_int(self, a: "FqElem") -> int:
        v = 0
        for c in reversed(a.coeffs):
            v = v * self.p + c
        return v

    def elements(self) -> Iterator["FqElem"]:
        for i in range(self.q):
            yield self.from_int(i)

    def random_elem(self, rng: random.Random) -> "FqElem":
        return self.from_int(rng.randrange(self.q))

    # -- square table ---------------------------------------------------------

    def attach_square_table(self) -> None:
        """Precompute the set of nonzero squares; quadratic_character then
        becomes a set lookup.  Costs O(q) time and memory."""
        if self._square_set is None:
            squares = set()
            g = self.elements()
            next(g)  # skip zero
            for e in g:
                squares.add((e * e).coeffs)
            self._square_set = frozenset(squares)

    @property
    def has_square_table(self) -> bool:
        return self._square_set is not None


class FqElem:
    """Element of F_{p^n} as a reduced coefficient vector over F_p."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldMismatchError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FqElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FqElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        p = self.ctx.p
        return FqElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        n, p = ctx.n, ctx.p
        if n == 1:
            return FqElem(ctx, ((self.coeffs[0] * o.coeffs[0]) % p,))
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:n]]
        red = ctx._red
        for k in range(n - 1):
            c = prod[n + k] % p
            if c:
                row = red[k]
                for i in range(n):
                    out[i] = (out[i] + c * row[i]) % p
        return FqElem(ctx, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int) -> "FqElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FqElem":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.ctx.q - 2)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.elem(other)
        return isinstance(other, FqElem) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Fq{self.coeffs}"


def frobenius(a: FqElem, i: int = 1, base_degree: int = 1) -> FqElem:
    """a^(p^(i*d)) where d is the degree of the declared base field.

    The base field degree must divide the context degree; iterating
    n/d times is the identity.
    """
    ctx = a.ctx
    if ctx.n % base_degree != 0:
        raise DegenerateInputError("base-field degree must divide extension degree")
    if not a:
        return a
    e = pow(ctx.p, i * base_degree, ctx.q - 1)
    return a**e


def quadratic_character(a: FqElem) -> int:
    """0 for zero, +1 for a nonzero square, -1 otherwise."""
    if not a:
        return 0
    ctx = a.ctx
    if ctx._square_set is not None:
        return 1 if a.coeffs in ctx._square_set else -1
    return 1 if a ** ((ctx.q - 1) // 2) == ctx.one() else -1


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate polynomial over a FieldCtx, coefficients ascending.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[FqElem]):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Sequence[int]) -> "UniPoly":
        return cls(ctx, [ctx.elem(c) for c in ints])

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.zero(), ctx.one()])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ctx.one()

    def lead(self) -> FqElem:
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly) and self.ctx == other.ctx and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(tuple(c.coeffs for c in self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.ctx, out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.ctx)
        zero = self.ctx.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, out)

    def scale(self, c: FqElem) -> "UniPoly":
        return UniPoly(self.ctx, [a * c for a in self.coeffs])

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.lead() == self.ctx.one():
            return self
        return self.scale(self.lead().inverse())

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(ctx), self
        inv_lead = other.lead().inverse()
        quot = [ctx.zero()] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] * inv_lead
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return UniPoly(ctx, quot), UniPoly(ctx, rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "UniPoly":
        return UniPoly(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.from_ints(self.ctx, [1])
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def eval(self, x: FqElem) -> FqElem:
        acc = x.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pth_root(self) -> "UniPoly":
        """Inverse of the absolute Frobenius on polynomials: for input
        sum b_j t^(p*j), return sum b_j^(1/p) t^j."""
        ctx = self.ctx
        p = ctx.p
        root_exp = p ** (ctx.n - 1)  # c -> c^(p^(n-1)) is the p-th root map
        out = []
        for j in range(0, len(self.coeffs), p):
            for k in range(1, p):
                if j + k < len(self.coeffs) and self.coeffs[j + k]:
                    raise DegenerateInputError("polynomial is not a p-th power")
            out.append(self.coeffs[j] ** root_exp)
        return UniPoly(ctx, out)

    def __repr__(self) -> str:
        return f"UniPoly({[c.coeffs for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# Irreducibility and factoring
# ---------------------------------------------------------------------------


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's test over F_q."""
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    ctx = f.ctx
    q = ctx.q
    f = f.monic()
    t = UniPoly.x(ctx)
    # frob[k] = t^(q^k) mod f
    h = t
    frob = [t]
    for _ in range(n):
        h = h.pow_mod(q, f)
        frob.append(h)
    if frob[n] != t % f:
        return False
    for r in set(_factor_int(n)):
        if not (frob[n // r] - t).gcd(f).is_one():
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, n: int) -> tuple:
    """The lexicographically smallest monic irreducible of degree n over
    F_p, coefficients ascending; deterministic across runs."""
    if n == 1:
        return (0, 1)
    prime = FieldCtx(p)
    for idx in range(p**n):
        coeffs = []
        v = idx
        for k in range(n):
            coeffs.append(v // p ** (n - 1 - k) % p)
        cand = tuple(coeffs) + (1,)
        if cand[0] == 0:
            continue  # divisible by t
        if is_irreducible(UniPoly.from_ints(prime, cand)):
            return cand
    raise DegenerateInputError(f"no irreducible of degree {n} over F_{p}")  # pragma: no cover


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic squarefree factors with multiplicities (characteristic-p aware)."""
    ctx = f.ctx
    p = ctx.p
    f = f.monic()
    if f.degree() <= 0:
        return []
    out: list[tuple[UniPoly, int]] = []
    d = f.derivative()
    if d.is_zero():
        return [(g, p * m) for g, m in squarefree_decomposition(f.pth_root())]
    c = f.gcd(d)
    w = f // c
    i = 1
    while w.degree() > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree() > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        out.extend((g, p * m) for g, m in squarefree_decomposition(c.pth_root()))
    return out


def _equal_degree_split(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus: split a product of degree-d irreducibles."""
    if f.degree() == d:
        return [f]
    ctx = f.ctx
    e = (ctx.q**d - 1) // 2
    while True:
        u = UniPoly(ctx, [ctx.random_elem(rng) for _ in range(f.degree())])
        if u.degree() < 1:
            continue
        g = u.gcd(f)
        if 0 < g.degree() < f.degree():
            w = g
        else:
            v = u.pow_mod(e, f) - UniPoly.from_ints(ctx, [1])
            w = v.gcd(f)
            if not 0 < w.degree() < f.degree():
                continue
        return _equal_degree_split(w, d, rng) + _equal_degree_split(f // w, d, rng)


def _distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a monic squarefree f into (product-of-degree-d-factors, d) parts."""
    ctx = f.ctx
    out = []
    t = UniPoly.x(ctx)
    h = t
    d = 0
    while f.degree() > 0:
        d += 1
        if 2 * d > f.degree():
            out.append((f, f.degree()))
            break
        h = h.pow_mod(ctx.q, f)
        g = (h - t).gcd(f)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def _poly_sort_key(f: UniPoly):
    return (f.degree(), tuple(c.coeffs for c in f.coeffs))


def factor_univariate(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Factor a nonzero polynomial into monic irreducibles.

    Returns (factor, multiplicity) pairs sorted by (degree, coefficients);
    the product times the leading unit reproduces the input.  Equal-degree
    splitting draws from a fixed-seed stream, so runs are reproducible.
    """
    if f.is_zero():
        raise DegenerateInputError("cannot factor the zero polynomial")
    rng = random.Random(_EDF_SEED)
    out: list[tuple[UniPoly, int]] = []
    for sqf, mult in squarefree_decomposition(f):
        for part, d in _distinct_degree(sqf):
            for irr in _equal_degree_split(part, d, rng):
                out.append((irr.monic(), mult))
    out.sort(key=lambda fm: _poly_sort_key(fm[0]))
    return out


def poly_roots(f: UniPoly) -> list[FqElem]:
    """Distinct roots of f in its own coefficient field, sorted."""
    roots = []
    for g, _ in factor_univariate(f):
        if g.degree() == 1:
            roots.append(-g.coeffs[0])
    roots.sort(key=lambda r: r.coeffs)
    return roots


# ---------------------------------------------------------------------------
# Subfield embeddings
# ---------------------------------------------------------------------------


class Embedding:
    """The canonical field embedding of one context into a larger one,
    determined by the deterministically-smallest root of the source
    modulus in the target field."""

    __slots__ = ("src", "dst", "gen_image", "_pow")

    def __init__(self, src: FieldCtx, dst: FieldCtx, gen_image: FqElem):
        self.src = src
        self.dst = dst
        self.gen_image = gen_image
        pows = [dst.one()]
        for _ in range(1, src.n):
            pows.append(pows[-1] * gen_image)
        self._pow = pows

    def __call__(self, a: FqElem) -> FqElem:
        if a.ctx != self.src:
            raise FieldMismatchError("element not in the embedding source field")
        acc = self.dst.zero()
        for c, g in zip(a.coeffs, self._pow):
            if c:
                acc = acc + g * c
        return acc


@lru_cache(maxsize=None)
def _embed_cached(src: FieldCtx, dst: FieldCtx) -> Embedding:
    if src.p != dst.p or dst.n % src.n != 0:
        raise DegenerateInputError("no embedding: degrees incompatible")
    if src.n == 1:
        return Embedding(src, dst, dst.zero())
    lifted = UniPoly(dst, [dst.elem(c) for c in src.modulus])
    roots = poly_roots(lifted)
    if not roots:
        raise DegenerateInputError("source modulus has no root in target field")  # pragma: no cover
    return Embedding(src, dst, roots[0])


def embed(src: FieldCtx, dst: FieldCtx) -> Embedding:
    """Canonical embedding F_{p^m} -> F_{p^{mk}}; cached per context pair."""
    return _embed_cached(src, dst)
