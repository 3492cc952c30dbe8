"""Zech-logarithm tables for vectorized bulk arithmetic in F_q.

Elements are encoded as int32 codes: exponents 0..q-2 of a fixed
multiplicative generator g, with code q-1 reserved for zero.  Addition
uses the Zech table Z with g^Z[d] = g^d + 1; the quadratic character of
g^e is (-1)^e, so character sums reduce to parity counts.

Tables cost O(q) memory and are built once per field context.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError
from .ff import FieldCtx, FqElem, _factor_int

_CACHE: dict[FieldCtx, "ZechField"] = {}


def zech_field(ctx: FieldCtx) -> "ZechField":
    zf = _CACHE.get(ctx)
    if zf is None:
        zf = ZechField(ctx)
        _CACHE[ctx] = zf
    return zf


def _find_generator(ctx: FieldCtx) -> FqElem:
    order = ctx.q - 1
    primes = _factor_int(order)
    for i in range(1, ctx.q):
        cand = ctx.from_int(i)
        if all(cand ** (order // r) != ctx.one() for r in primes):
            return cand
    raise DegenerateInputError("no multiplicative generator found")  # pragma: no cover


class ZechField:
    __slots__ = ("ctx", "q", "zero_code", "generator", "_code_of", "_tuple_of", "zech")

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        self.zero_code = ctx.q - 1
        g = _find_generator(ctx)
        self.generator = g
        tuples = [None] * (self.q - 1)
        code_of: dict[tuple, int] = {}
        cur = ctx.one()
        for e in range(self.q - 1):
            tuples[e] = cur.coeffs
            code_of[cur.coeffs] = e
            cur = cur * g
        self._code_of = code_of
        self._tuple_of = tuples
        one = ctx.one()
        zech = np.empty(self.q - 1, dtype=np.int32)
        for d in range(self.q - 1):
            s = tuple((tuples[d][i] + one.coeffs[i]) % ctx.p for i in range(ctx.n))
            zech[d] = code_of.get(s, self.zero_code)
        self.zech = zech

    # -- scalar conversions ---------------------------------------------------

    def code(self, a: FqElem) -> int:
        if not a:
            return self.zero_code
        return self._code_of[a.coeffs]

    def code_of_int(self, c: int) -> int:
        return self.code(self.ctx.elem(c))

    def elem(self, code: int) -> FqElem:
        if code == self.zero_code:
            return self.ctx.zero()
        return FqElem(self.ctx, self._tuple_of[code])

    def all_codes(self) -> np.ndarray:
        """Codes of every field element (zero last)."""
        return np.arange(self.q, dtype=np.int32)

    # -- vectorized arithmetic on code arrays ----------------------------------

    def mul(self, a, b):
        q1 = self.q - 1
        s = a + b
        s = np.where(s >= q1, s - q1, s)
        return np.where((a == q1) | (b == q1), q1, s).astype(np.int32)

    def add(self, a, b):
        q1 = self.q - 1
        d = (b - a) % q1
        z = self.zech[d]
        s = a + z
        s = np.where(s >= q1, s - q1, s)
        s = np.where(z == q1, q1, s)
        s = np.where(a == q1, b, s)
        return np.where(b == q1, a, s).astype(np.int32)

    def neg(self, a):
        q1 = self.q - 1
        if q1 % 2:  # pragma: no cover - q is odd, q-1 even
            raise DegenerateInputError("negation table needs even group order")
        h = q1 // 2
        s = a + h
        s = np.where(s >= q1, s - q1, s)
        return np.where(a == q1, q1, s).astype(np.int32)

    def pow(self, a, e: int):
        q1 = self.q - 1
        s = (a.astype(np.int64) * (e % q1)) % q1
        return np.where(a == q1, q1, s).astype(np.int32)

    def chi_sum(self, a) -> int:
        """Sum of the quadratic character over an array of codes."""
        odd = int((a & 1).sum())
        zeros = int((a == self.zero_code).sum())
        return int(a.size) - 2 * odd - zeros

    def horner(self, int_coeffs: list[int], a: np.ndarray) -> np.ndarray:
        """Evaluate sum c_i * x^(deg-i) at every code in a (c ascending in
        the second variable: value = ((c0*a + c1)*a + ...) + c_last)."""
        acc = np.full(a.shape, self.code_of_int(int_coeffs[0]), dtype=np.int32)
        for c in int_coeffs[1:]:
            acc = self.mul(acc, a)
            cc = self.code_of_int(c)
            if cc != self.zero_code:
                acc = self.add(acc, np.full(a.shape, cc, dtype=np.int32))
        return acc
