"""Points of the projective plane over extension fields, Frobenius orbits,
and the classical general-position test for eight points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import DegenerateInputError, FieldMismatchError
from .ff import Embedding, FieldCtx, FqElem, embed, frobenius
from .linalg import det_generic, rank_generic


class PlanePoint:
    """A point of P^2 with coordinates in one field context, normalized so
    the first nonzero coordinate is 1."""

    __slots__ = ("ctx", "coords")

    def __init__(self, coords: tuple[FqElem, FqElem, FqElem]):
        if not any(coords):
            raise DegenerateInputError("all projective coordinates are zero")
        ctx = coords[0].ctx
        if any(c.ctx != ctx for c in coords):
            raise FieldMismatchError("point coordinates in different fields")
        lead = next(c for c in coords if c)
        inv = lead.inverse()
        self.ctx = ctx
        self.coords = tuple(c * inv for c in coords)

    def apply_frobenius(self, base_degree: int) -> "PlanePoint":
        return PlanePoint(tuple(frobenius(c, 1, base_degree) for c in self.coords))

    def key(self) -> tuple:
        return tuple(c.coeffs for c in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanePoint) and self.ctx == other.ctx and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"PlanePoint{self.key()}"


class PlanePointSet:
    """A Galois-stable set of 8 distinct plane points with its orbit
    decomposition under the base-field Frobenius."""

    __slots__ = ("base", "ambient", "points", "orbits", "base_embedding")

    def __init__(self, base: FieldCtx, ambient: FieldCtx, orbits: list[list[PlanePoint]]):
        self.base = base
        self.ambient = ambient
        self.orbits = [list(o) for o in orbits]
        self.points = [pt for orbit in self.orbits for pt in orbit]
        if len(self.points) != 8 or len(set(self.points)) != 8:
            raise DegenerateInputError(f"point set must have 8 distinct points, got {len(self.points)}")
        self.base_embedding: Embedding = embed(base, ambient)

    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def frobenius_permutation(self) -> tuple[int, ...]:
        """Images under the base Frobenius, as indices into self.points."""
        index = {pt: i for i, pt in enumerate(self.points)}
        return tuple(index[pt.apply_frobenius(self.base.n)] for pt in self.points)


def galois_closure(seeds: list[PlanePoint], base: FieldCtx) -> PlanePointSet:
    """Union of the base-Frobenius orbits of the seeds; errors unless the
    closure has exactly 8 points and the seed orbits are disjoint."""
    if not seeds:
        raise DegenerateInputError("no seed points")
    ambient = seeds[0].ctx
    if any(s.ctx != ambient for s in seeds):
        raise FieldMismatchError("seeds live in different fields")
    if base.p != ambient.p or ambient.n % base.n != 0:
        raise DegenerateInputError("ambient field is not an extension of the base field")
    seen: set[PlanePoint] = set()
    orbits = []
    for seed in seeds:
        if seed in seen:
            raise DegenerateInputError("duplicate seed: orbits collapse")
        orbit = [seed]
        cur = seed.apply_frobenius(base.n)
        while cur != seed:
            if cur in seen:
                raise DegenerateInputError("seed orbits overlap")
            orbit.append(cur)
            if len(orbit) > ambient.n // base.n:
                raise DegenerateInputError("Frobenius orbit failed to close")  # pragma: no cover
            cur = cur.apply_frobenius(base.n)
        seen.update(orbit)
        orbits.append(orbit)
    return PlanePointSet(base, ambient, orbits)


def permutation_signature(s: PlanePointSet) -> tuple[int, int, int]:
    """(order of Frobenius on the set, fixed-point count, parity sign)."""
    order = 1
    fixed = 0
    sign = 1
    for size in s.orbit_sizes():
        order = order * size // _gcd(order, size)
        if size == 1:
            fixed += 1
        if size % 2 == 0:
            sign = -sign
    return order, fixed, sign


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# General position
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    kind: str | None = None  # "line" | "conic" | "cubic"
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


_DEG2 = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
_DEG3 = [
    (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1),
    (1, 1, 1), (0, 2, 1), (1, 0, 2), (0, 1, 2), (0, 0, 3),
]


def _mono_eval(coords, expo) -> FqElem:
    acc = coords[0].ctx.one()
    for c, e in zip(coords, expo):
        for _ in range(e):
            acc = acc * c
    return acc


def _binom_mod(a: int, b: int, p: int) -> int:
    if b < 0 or b > a:
        return 0
    num = 1
    den = 1
    for i in range(b):
        num *= a - i
        den *= i + 1
    return num // den % p


def _hasse_row(coords, monomials, order, ctx) -> list[FqElem]:
    """Row of Hasse-derivative evaluations D^order(monomial)(point)."""
    p = ctx.p
    row = []
    for (a, b, c) in monomials:
        i, j, k = order
        coeff = _binom_mod(a, i, p) * _binom_mod(b, j, p) * _binom_mod(c, k, p) % p
        if coeff == 0 or a < i or b < j or c < k:
            row.append(ctx.zero())
        else:
            row.append(_mono_eval(coords, (a - i, b - j, c - k)) * coeff)
    return row


def check_general_position(s: PlanePointSet) -> GeneralPositionReport:
    """No 3 collinear, no 6 on a conic, no 8 on a cubic singular at one of
    them.  The first violated condition (in that order, subsets ascending)
    is reported as the witness."""
    ctx = s.ambient
    pts = [pt.coords for pt in s.points]

    for tri in combinations(range(8), 3):
        rows = [list(pts[i]) for i in tri]
        if not det_generic(rows, ctx):
            return GeneralPositionReport(False, "line", tri)

    for six in combinations(range(8), 6):
        rows = [[_mono_eval(pts[i], e) for e in _DEG2] for i in six]
        if not det_generic(rows, ctx):
            return GeneralPositionReport(False, "conic", six)

    for i in range(8):
        rows = [[_mono_eval(pt, e) for e in _DEG3] for pt in pts]
        # Two independent first-order vanishing conditions at point i; the
        # third partial is dependent by the Euler relation once the
        # evaluation row is present (in every characteristic).
        pivot = next(k for k in range(3) if pts[i][k])
        for direction in range(3):
            if direction == pivot:
                continue
            order = tuple(1 if t == direction else 0 for t in range(3))
            rows.append(_hasse_row(pts[i], _DEG3, order, ctx))
        if rank_generic(rows) < 10:
            return GeneralPositionReport(False, "cubic", (i,))

    return GeneralPositionReport(True)


def random_projective_change(s: PlanePointSet, rng: random.Random) -> PlanePointSet:
    """Apply a random invertible base-field 3x3 matrix to every point.

    Base-field transformations commute with Frobenius, so the orbit
    structure is preserved; used by invariance tests.
    """
    emb = s.base_embedding
    while True:
        mat = [[s.base.random_elem(rng) for _ in range(3)] for _ in range(3)]
        if det_generic(mat, s.base):
            break
    amb = [[emb(e) for e in row] for row in mat]

    def apply(pt: PlanePoint) -> PlanePoint:
        new = []
        for row in amb:
            acc = s.ambient.zero()
            for m, c in zip(row, pt.coords):
                acc = acc + m * c
            new.append(acc)
        return PlanePoint(tuple(new))

    return PlanePointSet(s.base, s.ambient, [[apply(pt) for pt in orbit] for orbit in s.orbits])
