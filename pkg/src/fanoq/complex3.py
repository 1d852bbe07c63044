"""Block complex of a three-dimensional Fano polytope.

Vertices are the inner normals of the facets; each triple of normals spans
|det| oriented 2-simplices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import FanoqError


def det3(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _dot(m, v) -> int:
    return m[0] * v[0] + m[1] * v[1] + m[2] * v[2]


@dataclass(frozen=True)
class FanoPolytope3:
    vertices: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        vs = tuple(tuple(int(c) for c in v) for v in self.vertices)
        if any(len(v) != 3 for v in vs):
            raise FanoqError("polytope vertices must have three coordinates")
        if len(set(vs)) != len(vs):
            raise FanoqError("repeated vertex")
        for v in vs:
            if gcd(gcd(v[0], v[1]), v[2]) != 1:
                raise FanoqError(f"vertex {v} is not primitive")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_json(cls, data: dict) -> "FanoPolytope3":
        try:
            return cls(tuple(tuple(v) for v in data["vertices"]))
        except (KeyError, TypeError):
            raise FanoqError("polytope JSON needs a 'vertices' list") from None

    def transform(self, g: Sequence[Sequence[int]]) -> "FanoPolytope3":
        return FanoPolytope3(tuple(tuple(_dot(row, v) for row in g) for v in self.vertices))


@dataclass(frozen=True)
class BlockComplex3:
    """Facet normals and simplex multiplicities.

    ``simplices`` maps a sorted index triple to ``(multiplicity, oriented)``,
    where ``oriented`` orders the triple so its determinant is positive.
    Triples with zero determinant are absent.
    """

    normals: tuple[tuple[int, int, int], ...]
    heights: tuple[int, ...]
    simplices: dict

    def multiplicity(self, triple) -> int:
        entry = self.simplices.get(tuple(sorted(triple)))
        return entry[0] if entry else 0

    def to_json(self) -> dict:
        return {"normals": [list(m) for m in self.normals],
                "simplices": [{"triple": list(k), "oriented": list(v[1]), "multiplicity": v[0]}
                              for k, v in sorted(self.simplices.items())]}


def facet_normals(P: FanoPolytope3) -> list[tuple[tuple[int, int, int], int]]:
    """Primitive inner normals m with their heights l: <m, v> >= -l, equality on a facet."""
    vs = P.vertices
    found = {}
    for a, b, c in itertools.combinations(vs, 3):
        u = tuple(b[i] - a[i] for i in range(3))
        w = tuple(c[i] - a[i] for i in range(3))
        m = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        g = gcd(gcd(m[0], m[1]), m[2])
        if g == 0:
            continue
        m = tuple(x // g for x in m)
        for mm in (m, tuple(-x for x in m)):
            h = _dot(mm, a)
            if all(_dot(mm, v) >= h for v in vs):
                if h >= 0:
                    raise FanoqError("origin is not strictly interior")
                found[mm] = -h
    return sorted(found.items())


def block_complex3(P: FanoPolytope3) -> BlockComplex3:
    vs = P.vertices
    if len(vs) < 4 or all(det3(*t) == 0 for t in itertools.combinations(vs, 3)):
        raise FanoqError("degenerate hull: the vertices do not span three dimensions")
    facets = facet_normals(P)
    normals = tuple(m for m, _ in facets)
    for v in vs:
        if sum(1 for m, h in facets if _dot(m, v) == -h) < 3:
            raise FanoqError(f"{v} is not a vertex of the convex hull")
    simplices = {}
    for tri in itertools.combinations(range(len(normals)), 3):
        d = det3(*(normals[i] for i in tri))
        if d:
            i, j, k = tri
            simplices[tri] = (abs(d), tri if d > 0 else (j, i, k))
    return BlockComplex3(normals, tuple(h for _, h in facets), simplices)
