"""Exact geometry of Fano polygons in a rank-2 oriented lattice.

Vectors of the lattice N and of its dual M share one representation,
:class:`Vec`, and are paired by the usual dot product.  The orientation of N
is a sign carried by each polygon; every determinant is multiplied by it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import FanoqError, VerificationError
from .intlinalg import xgcd


class Vec(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return Vec(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec(-self.x, -self.y)

    def scale(self, k: int) -> "Vec":
        return Vec(k * self.x, k * self.y)


def vec(p) -> Vec:
    x, y = p
    if int(x) != x or int(y) != y:
        raise FanoqError(f"non-integral lattice vector {p!r}")
    return Vec(int(x), int(y))


def det(u, v, orientation: int = 1) -> int:
    return orientation * (u[0] * v[1] - u[1] * v[0])


def pair(m, v):
    return m[0] * v[0] + m[1] * v[1]


def is_primitive(v) -> bool:
    return gcd(v[0], v[1]) == 1


def primitive(v) -> Vec:
    g = gcd(v[0], v[1])
    if g == 0:
        raise FanoqError("the zero vector has no primitive multiple")
    return Vec(v[0] // g, v[1] // g)


def _half(p) -> int:
    return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1


def _angle_cmp(p, q) -> int:
    hp, hq = _half(p), _half(q)
    if hp != hq:
        return hp - hq
    d = det(p, q)
    return -1 if d > 0 else (1 if d < 0 else 0)


angle_key = cmp_to_key(_angle_cmp)
"""Sort key by counterclockwise angle from the positive x-axis (exact)."""


@dataclass(frozen=True)
class FanoPolygon:
    """A lattice polygon with primitive vertices and the origin strictly inside.

    ``vertices`` are listed in positive cyclic order with respect to
    ``orientation``: counterclockwise for +1, clockwise (in standard
    coordinates) for -1.
    """

    vertices: tuple[Vec, ...]
    orientation: int = 1

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if self.orientation not in (1, -1):
            raise FanoqError("orientation must be +1 or -1")
        n = len(vs)
        if n < 3:
            raise FanoqError("a Fano polygon needs at least three vertices")
        for v in vs:
            if not is_primitive(v):
                raise FanoqError(f"vertex {tuple(v)} is not primitive")
        o = self.orientation
        for i in range(n):
            a, b, c = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
            if det(a, b, o) <= 0:
                raise FanoqError("origin is not strictly interior (or vertices are out of order)")
            if det(b - a, c - b, o) <= 0:
                raise FanoqError(f"vertices are not in strictly convex position at {tuple(b)}")
        # a star polygon passes the local tests but winds more than once
        keys = [angle_key(v) for v in (vs if o == 1 else vs[::-1])]
        if sum(keys[(i + 1) % n] < keys[i] for i in range(n)) != 1:
            raise FanoqError("vertex cycle winds around the origin more than once")

    @classmethod
    def from_vertices(cls, points: Iterable, orientation: int = 1) -> "FanoPolygon":
        """Build from vertices in any order; the first point stays first."""
        pts = [vec(p) for p in points]
        if not pts:
            raise FanoqError("empty vertex list")
        if len(set(pts)) != len(pts):
            raise FanoqError("repeated vertex")
        order = sorted(pts, key=angle_key)
        if orientation == -1:
            order.reverse()
        i = order.index(pts[0])
        return cls(tuple(order[i:] + order[:i]), orientation)

    @classmethod
    def from_points(cls, points: Iterable, orientation: int = 1) -> "FanoPolygon":
        """The convex hull of lattice points, which must be a Fano polygon."""
        hull = convex_hull([vec(p) for p in points])
        return cls.from_vertices(hull, orientation)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[tuple[Vec, Vec]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def transform(self, g: Sequence[Sequence[int]]) -> "FanoPolygon":
        """Image under an integer matrix g with det +-1 (orientation follows det)."""
        (a, b), (c, d) = g
        dg = a * d - b * c
        if dg not in (1, -1):
            raise FanoqError("transformation is not unimodular")
        vs = tuple(Vec(a * v.x + b * v.y, c * v.x + d * v.y) for v in self.vertices)
        return FanoPolygon(vs, self.orientation * dg)

    def reoriented(self) -> "FanoPolygon":
        """The same vertex set in the oppositely oriented lattice."""
        return FanoPolygon(self.vertices[::-1], -self.orientation)

    def to_json(self) -> dict:
        return {"orientation": self.orientation, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "FanoPolygon":
        try:
            verts = data["vertices"]
        except (KeyError, TypeError):
            raise FanoqError("polygon JSON needs a 'vertices' list") from None
        return cls.from_vertices(verts, int(data.get("orientation", 1)))


def convex_hull(points: Sequence) -> list:
    """Strict convex hull vertices in counterclockwise order (monotone chain).

    Works for any exactly comparable coordinates (ints or Fractions).
    """
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) < 3:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and ((out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                                     - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    return lower[:-1] + upper[:-1]


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class ConeData:
    """A two-dimensional cone spanned by primitive u, v with det(u, v) > 0."""

    u: Vec
    v: Vec
    w: int
    ell: int
    m: Vec
    r: int
    a: int

    @property
    def is_t(self) -> bool:
        return self.w == self.ell

    @property
    def kind(self) -> str:
        return "T" if self.w == self.ell else "R"

    @property
    def edge_direction(self) -> Vec:
        """Primitive direction of the segment from u to v."""
        return primitive(self.v - self.u)

    @property
    def type_key(self) -> tuple[int, int]:
        return cyclic_class_key(self.r, self.a)

    def to_json(self) -> dict:
        return {"u": list(self.u), "v": list(self.v), "w": self.w, "l": self.ell,
                "m": list(self.m), "r": self.r, "a": self.a, "type": self.kind}


def cyclic_quotient_type(u, v) -> tuple[int, int]:
    """(r, a) such that some g in GL2(Z) maps u to (0,1) and v to (r,-a)."""
    r = abs(det(u, v))
    if r == 0:
        raise FanoqError("degenerate cone")
    g, p, q = xgcd(u[0], u[1])
    if g != 1:
        raise FanoqError(f"generator {tuple(u)} is not primitive")
    if r == 1:
        return 1, 0
    # rows (u.y, -u.x) and (p, q) send u to (0, 1) and v to (-det(u, v), c);
    # a reflection of x and shears (x, y) -> (x, y + kx) fix (0, 1) and leave c mod r
    c = p * v[0] + q * v[1]
    return r, (-c) % r


def cyclic_class_key(r: int, a: int) -> tuple[int, int]:
    """Canonical key of 1/r(1,a), identified with 1/r(1,a^-1)."""
    if r == 1:
        return 1, 0
    return r, min(a, pow(a, -1, r))


def cone_data(u, v, orientation: int = 1) -> ConeData:
    u, v = vec(u), vec(v)
    for g in (u, v):
        if not is_primitive(g):
            raise FanoqError(f"generator {tuple(g)} is not primitive")
    r = det(u, v, orientation)
    if r == 0:
        raise FanoqError("degenerate cone: generators are collinear")
    if r < 0:
        raise FanoqError("generators are not positively ordered")
    d = v - u
    w = gcd(d.x, d.y)
    e = Vec(d.x // w, d.y // w)
    m = Vec(-e.y, e.x)
    if pair(m, u) > 0:
        m = -m
    ell = -pair(m, u)
    if pair(m, v) != -ell or ell * w != r:
        raise VerificationError(f"inconsistent cone data for {tuple(u)}, {tuple(v)}")
    rr, a = cyclic_quotient_type(u, v)
    return ConeData(u, v, w, ell, m, rr, a)


@dataclass(frozen=True)
class StandardRefinement:
    """Cones of the refined fan, in positive cyclic order.

    ``parents[i]`` is the index of the edge of the source polygon whose cone
    contains ``cones[i]``.
    """

    cones: tuple[ConeData, ...]
    parents: tuple[int, ...]

    def to_json(self) -> dict:
        return {"cones": [c.to_json() for c in self.cones], "parents": list(self.parents)}


def refine_cone(c: ConeData, orientation: int = 1, placement: str = "last") -> list[ConeData]:
    """Split a cone into primitive T-cones and at most one R-cone.

    T-cones fill from ``u`` and the R-cone goes last (``placement="last"``), or
    the mirror image (``placement="first"``).
    """
    alpha, rho = divmod(c.w, c.ell)
    e = c.edge_direction
    if placement == "last":
        pts = [c.u + e.scale(j * c.ell) for j in range(alpha + 1)]
        if rho:
            pts.append(c.v)
    elif placement == "first":
        pts = [c.v - e.scale(j * c.ell) for j in range(alpha + 1)]
        if rho:
            pts.append(c.u)
        pts.reverse()
    else:
        raise FanoqError(f"unknown placement {placement!r}")
    out = [cone_data(pts[i], pts[i + 1], orientation) for i in range(len(pts) - 1)]
    if sorted((k.w, k.ell) for k in out) != sorted([(c.ell, c.ell)] * alpha + ([(rho, c.ell)] if rho else [])):
        raise VerificationError("refinement does not match the width division")
    return out


@lru_cache(maxsize=4096)
def maximal_cones(P: FanoPolygon) -> tuple[ConeData, ...]:
    return tuple(cone_data(a, b, P.orientation) for a, b in P.edges())


@lru_cache(maxsize=4096)
def standard_refinement(P: FanoPolygon, placement: str = "last") -> StandardRefinement:
    cones, parents = [], []
    for i, c in enumerate(maximal_cones(P)):
        sub = refine_cone(c, P.orientation, placement)
        cones.extend(sub)
        parents.extend([i] * len(sub))
    return StandardRefinement(tuple(cones), tuple(parents))


def normalized_volume(P: FanoPolygon) -> int:
    """Normalized area: the sum of det(v_i, v_{i+1})."""
    vol = sum(det(a, b, P.orientation) for a, b in P.edges())
    via_cones = sum(c.w * c.ell for c in standard_refinement(P).cones)
    if vol != via_cones:
        raise VerificationError(f"volume {vol} differs from the cone sum {via_cones}")
    return vol


def dual_polygon(P: FanoPolygon) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the dual polygon, counterclockwise in standard coordinates.

    Each vertex solves <u, v_i> = <u, v_{i+1}> = -1 by Cramer's rule.
    """
    out = []
    for a, b in P.edges():
        d = a[0] * b[1] - a[1] * b[0]
        out.append((Fraction(a[1] - b[1], d), Fraction(b[0] - a[0], d)))
    return sorted(out, key=cmp_to_key(_angle_cmp))


def dual_degree(P: FanoPolygon) -> Fraction:
    """Normalized volume of the dual polygon (the anticanonical degree)."""
    d = dual_polygon(P)
    n = len(d)
    return abs(sum(d[i][0] * d[(i + 1) % n][1] - d[(i + 1) % n][0] * d[i][1] for i in range(n)))


# ---------------------------------------------------------------------------
# combinatorial mutation

def mutation_factor(P: FanoPolygon, m) -> Vec:
    """Unit factor for mutation at normal m: the positively oriented edge direction."""
    m = vec(m)
    for c in maximal_cones(P):
        if c.m == m:
            if c.w < c.ell:
                raise FanoqError(f"normal {tuple(m)} has no primitive T-cone; mutation is undefined")
            return c.edge_direction
    raise FanoqError(f"{tuple(m)} is not an inner edge normal of the polygon")


def _exact(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _boundary_slice(verts: Sequence[Vec], m, h, f) -> tuple:
    """Extreme points, along f, of the polygon's slice at height <m, .> = h."""
    pts = []
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        hp, hq = pair(m, p), pair(m, q)
        if hp == h:
            pts.append((p[0], p[1]))
        if (hp - h) * (hq - h) < 0:
            t = Fraction(h - hp, hq - hp)
            pts.append((_exact(p[0] + t * (q[0] - p[0])), _exact(p[1] + t * (q[1] - p[1]))))
    key = lambda z: z[0] * f[0] + z[1] * f[1]
    return min(pts, key=key), max(pts, key=key)


def mutate_polygon(P: FanoPolygon, m) -> FanoPolygon:
    """Combinatorial mutation with width vector m and a unit-length factor.

    The slice at height h < 0 loses |h| copies of the factor segment and the
    slice at height h > 0 gains h copies.
    """
    m = vec(m)
    f = mutation_factor(P, m)
    new = []
    for h in sorted({pair(m, v) for v in P.vertices}):
        a, b = _boundary_slice(P.vertices, m, h, f)
        length = Fraction((b[0] - a[0]) * f[0] + (b[1] - a[1]) * f[1], f[0] ** 2 + f[1] ** 2)
        if h < 0 and length < -h:
            raise VerificationError(f"slice at height {h} is shorter than {-h} factor copies")
        new.append(a)
        new.append((b[0] + h * f[0], b[1] + h * f[1]))
    hull = convex_hull(new)
    for p in hull:
        if p[0].denominator != 1 or p[1].denominator != 1:
            raise VerificationError(f"mutation produced a non-lattice vertex {p}")
    return FanoPolygon.from_vertices([(int(p[0]), int(p[1])) for p in hull], P.orientation)


# ---------------------------------------------------------------------------
# equivalence

def _ccw_vertices(vertices: Sequence[Vec]) -> list[Vec]:
    return sorted(vertices, key=angle_key)


def _sl_canon(vs: list[Vec]) -> tuple:
    n = len(vs)
    best = None
    for i in range(n):
        u, v = vs[i], vs[(i + 1) % n]
        _, p, q = xgcd(u.x, u.y)
        # rows (p, q), (-u.y, u.x) send u to (1, 0) with det +1
        c = p * v.x + q * v.y
        d = -u.y * v.x + u.x * v.y
        k = -(c // d)  # shear (x, y) -> (x + k y, y) puts c into [0, d)
        img = tuple(
            ((p + k * -u.y) * z.x + (q + k * u.x) * z.y, -u.y * z.x + u.x * z.y)
            for z in vs[i:] + vs[:i]
        )
        if best is None or img < best:
            best = img
    return best


def canonical_form(P: FanoPolygon | Iterable, group: str = "GL") -> tuple:
    """A complete invariant of the vertex set under SL2(Z) or GL2(Z)."""
    verts = P.vertices if isinstance(P, FanoPolygon) else [vec(p) for p in P]
    if group not in ("SL", "GL"):
        raise FanoqError("group must be 'SL' or 'GL'")
    best = _sl_canon(_ccw_vertices(verts))
    if group == "GL":
        mirror = _sl_canon(_ccw_vertices([Vec(v.x, -v.y) for v in verts]))
        best = min(best, mirror)
    return best


def polygons_equivalent(P1: FanoPolygon, P2: FanoPolygon, group: str = "GL") -> bool:
    return canonical_form(P1, group) == canonical_form(P2, group)


# ---------------------------------------------------------------------------
# enumeration

def primitive_points(bound: int) -> list[Vec]:
    """Primitive points of the box [-bound, bound]^2 in counterclockwise angular order."""
    pts = [Vec(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)
           if gcd(x, y) == 1]
    return sorted(pts, key=angle_key)


def enumerate_fano_polygons(coordinate_bound: int, group: str = "GL") -> Iterator[FanoPolygon]:
    """One representative per equivalence class of Fano polygons inside the box.

    The representative of a class is its in-box member with the smallest
    sorted vertex tuple.  Classes come in order of (vertex count, volume,
    canonical form).
    """
    from . import kernels

    if coordinate_bound < 1:
        raise FanoqError("coordinate bound must be positive")
    if group not in ("SL", "GL"):
        raise FanoqError("group must be 'SL' or 'GL'")
    pts = primitive_points(coordinate_bound)
    ranks = {p: r for r, p in enumerate(sorted(pts))}
    classes = kernels.fano_classes([tuple(p) for p in pts], [ranks[p] for p in pts], group == "GL")
    keyed = []
    for flat, cycle in classes.items():
        key = tuple(zip(flat[::2], flat[1::2]))
        vol = sum(det(key[i], key[(i + 1) % len(key)]) for i in range(len(key)))
        keyed.append(((len(key), vol, key), cycle))
    keyed.sort()
    for _, cycle in keyed:
        yield FanoPolygon(tuple(pts[i] for i in cycle))
