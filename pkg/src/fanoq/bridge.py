"""From Fano polygons to decorated quivers and back to polygon invariants.

Covers the polygonal quiver and its block quiver, the Hamiltonian cycle of a
block quiver, the degree and Noether-type formulas, singularity content,
Markov points, and the compatibility of quiver and polygon mutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable

from .errors import FanoqError, VerificationError
from .intlinalg import integer_kernel
from .lattice2d import (FanoPolygon, Vec, cyclic_class_key, det, dual_degree, maximal_cones,
                        mutate_polygon, pair, standard_refinement)
from .quiver import DecoratedQuiver, block, gcd_arrows, mutate, quivers_isomorphic


@dataclass(frozen=True)
class PolygonalQuiver:
    """A decorated quiver together with the polygon data it was read from.

    ``normals[i]`` is the inner normal represented by vertex i and
    ``edges[i]`` the index of the polygon edge it lies over.
    """

    quiver: DecoratedQuiver
    normals: tuple[Vec, ...]
    source: FanoPolygon
    edges: tuple[int, ...]

    def to_json(self) -> dict:
        d = self.quiver.to_json()
        d["normals"] = [list(m) for m in self.normals]
        d["source"] = self.source.to_json()
        return d


def _quiver_on(normals, labels, orientation) -> DecoratedQuiver:
    ex = tuple(tuple(det(a, b, orientation) for b in normals) for a in normals)
    return DecoratedQuiver(tuple(labels), ex)


def build_quiv(P: FanoPolygon, placement: str = "last") -> PolygonalQuiver:
    """One vertex per cone of the standard refinement, arrows from determinants."""
    ref = standard_refinement(P, placement)
    normals = tuple(c.m for c in ref.cones)
    Q = _quiver_on(normals, [(c.w, c.ell) for c in ref.cones], P.orientation)
    return PolygonalQuiver(Q, normals, P, ref.parents)


def build_bquiv(P: FanoPolygon) -> PolygonalQuiver:
    """One vertex per edge of P, labelled by the edge's width and local index."""
    cones = maximal_cones(P)
    normals = tuple(c.m for c in cones)
    Q = _quiver_on(normals, [(c.w, c.ell) for c in cones], P.orientation)
    return PolygonalQuiver(Q, normals, P, tuple(range(len(cones))))


# ---------------------------------------------------------------------------
# Hamiltonian structure

@dataclass(frozen=True)
class HamiltonianData:
    """Radial data of a block quiver.

    ``radius[v]`` and ``count[v]`` are r(v) and h(v) (None when out(v) is
    empty), ``successor[v]`` the unique out-neighbour at radial distance 1
    when r(v) = h(v) = 1, and ``order`` the Hamiltonian cycle starting at
    vertex 0 when the property holds.
    """

    radius: tuple[int | None, ...]
    count: tuple[int | None, ...]
    successor: tuple[int | None, ...]
    order: tuple[int, ...] | None
    violation: str | None

    @property
    def holds(self) -> bool:
        return self.order is not None

    def subquiver(self, Q: DecoratedQuiver) -> tuple[tuple[int, ...], ...]:
        """Exchange matrix of the Hamiltonian subquiver."""
        n = Q.n
        H = [[0] * n for _ in range(n)]
        if self.order is not None:
            for i, a in enumerate(self.order):
                b = self.order[(i + 1) % n]
                H[a][b], H[b][a] = Q.exchange[a][b], Q.exchange[b][a]
        return tuple(tuple(r) for r in H)


def radial_distances(Q: DecoratedQuiver, m: int) -> dict[int, int]:
    """r(m, x) for x in out(m): one plus the longest simple path inside out(m) ending at x."""
    outs = Q.out(m)
    inside = set(outs)
    A = Q.exchange
    best = {x: 1 for x in outs}

    def walk(x, seen, length):
        if length > best[x]:
            best[x] = length
        for y in outs:
            if y not in seen and A[x][y] > 0 and y in inside:
                seen.add(y)
                walk(y, seen, length + 1)
                seen.discard(y)

    for x in outs:
        walk(x, {x}, 1)
    return best


def hamiltonian(Q) -> HamiltonianData:
    """Radii, counters and, when it exists, the Hamiltonian cycle of a block quiver.

    For a polygonal block quiver the cycle is checked against the polygon's
    edge order.
    """
    pq = Q if isinstance(Q, PolygonalQuiver) else None
    Q = pq.quiver if pq else Q
    n = Q.n
    radius, count, succ = [], [], []
    violation = None
    for v in range(n):
        rd = radial_distances(Q, v)
        if not rd:
            radius.append(None)
            count.append(None)
            succ.append(None)
            violation = violation or f"vertex {v} has no outgoing arrows"
            continue
        r = min(rd.values())
        h = sum(1 for x in rd.values() if x == r)
        radius.append(r)
        count.append(h)
        if r == 1 and h == 1:
            succ.append(next(x for x, d in rd.items() if d == 1))
        else:
            succ.append(None)
            violation = violation or f"vertex {v} has r = {r}, h = {h}"
    order = None
    if violation is None:
        for start in range(n):
            seq = [start]
            while succ[seq[-1]] not in seq:
                seq.append(succ[seq[-1]])
            if len(seq) == n and succ[seq[-1]] == start:
                i = seq.index(0)
                order = tuple(seq[i:] + seq[:i])
                break
        if order is None:
            violation = "no successor sequence visits every vertex"
    data = HamiltonianData(tuple(radius), tuple(count), tuple(succ), order, violation)
    if pq is not None and order is not None and len(set(pq.edges)) == n:
        edge_order = tuple(pq.edges[v] for v in order)
        k = len(edge_order)
        if any(edge_order[(i + 1) % k] != (edge_order[i] + 1) % k for i in range(k)):
            raise VerificationError("Hamiltonian cycle differs from the polygon's edge order")
    return data


# ---------------------------------------------------------------------------
# degree, content, Noether formula

def _cyclic_sum(Q: DecoratedQuiver, order) -> Fraction:
    n = len(order)
    total = Fraction(0)
    for i in range(n):
        a, b = order[i], order[(i + 1) % n]
        total += Fraction(Q.exchange[a][b], Q.labels[a][1] * Q.labels[b][1])
    return total


def degree_from_quiver(Q, representatives=None) -> Fraction:
    """Sum of A(m_k, m_{k+1}) / (l_k l_{k+1}) around the polygon.

    For a polygonal quiver the cycle visits one vertex per edge (by default
    the lowest id; ``representatives`` overrides the choice).  A bare block
    quiver is walked along its Hamiltonian cycle.
    """
    if isinstance(Q, PolygonalQuiver):
        if representatives is None:
            reps = {}
            for v, e in enumerate(Q.edges):
                reps.setdefault(e, v)
            representatives = [reps[e] for e in sorted(reps)]
        value = _cyclic_sum(Q.quiver, representatives)
        expected = dual_degree(Q.source)
        if value != expected:
            raise VerificationError(f"quiver degree {value} differs from dual volume {expected}")
        return value
    H = hamiltonian(Q)
    if not H.holds:
        raise FanoqError(f"no Hamiltonian cycle: {H.violation}")
    return _cyclic_sum(Q, H.order)


def representative_choices(pq: PolygonalQuiver) -> Iterable[list[int]]:
    per_edge: dict[int, list[int]] = {}
    for v, e in enumerate(pq.edges):
        per_edge.setdefault(e, []).append(v)
    return (list(c) for c in itertools.product(*(per_edge[e] for e in sorted(per_edge))))


@dataclass(frozen=True)
class SingularityContent:
    tau: int
    basket: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"tau": self.tau, "basket": [list(b) for b in self.basket]}


def singularity_content(P: FanoPolygon) -> SingularityContent:
    cones = standard_refinement(P).cones
    tau = sum(1 for c in cones if c.is_t)
    basket = tuple(sorted(cyclic_class_key(c.r, c.a) for c in cones if not c.is_t))
    return SingularityContent(tau, basket)


def residual_sum(P: FanoPolygon) -> Fraction:
    """Total residual contribution: degree - 12 + tau."""
    return dual_degree(P) - 12 + singularity_content(P).tau


def residual_table(polygons: Iterable[FanoPolygon]) -> dict[tuple[int, int], Fraction]:
    """Per-class residual values read off polygons whose basket is a single class."""
    table: dict[tuple[int, int], Fraction] = {}
    for P in polygons:
        basket = singularity_content(P).basket
        if len(basket) != 1:
            continue
        value = residual_sum(P)
        old = table.setdefault(basket[0], value)
        if old != value:
            raise VerificationError(f"class {basket[0]} has witnesses with residuals {old} and {value}")
    return table


def additivity_counterexamples(polygons, table) -> tuple[int, list[FanoPolygon]]:
    """Test residual_sum = sum of table values over the basket where the table covers it."""
    checked, bad = 0, []
    for P in polygons:
        basket = singularity_content(P).basket
        if len(basket) < 2 or any(c not in table for c in basket):
            continue
        checked += 1
        if residual_sum(P) != sum(table[c] for c in basket):
            bad.append(P)
    return checked, bad


def quiver_degree_check(P: FanoPolygon, table=None) -> bool:
    """The quiver degree formula, on the polygonal quiver and on the block quiver.

    With a residual ``table`` covering the basket, the right-hand side uses
    the tabulated per-class values instead of this polygon's own residual.
    """
    content = singularity_content(P)
    if table is not None and all(c in table for c in content.basket):
        residual = sum((table[c] for c in content.basket), Fraction(0))
    else:
        residual = residual_sum(P)
    rhs = 12 - content.tau + residual
    try:
        lhs = degree_from_quiver(build_quiv(P))
        lhs_block = degree_from_quiver(build_bquiv(P).quiver)
    except (VerificationError, FanoqError):
        return False
    return lhs == lhs_block == rhs


# ---------------------------------------------------------------------------
# Markov points and the triangle obstruction

@dataclass(frozen=True)
class MarkovPoint:
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: int
    t: Fraction
    residual: Fraction

    def to_json(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "z": self.z,
                "t": str(self.t), "residual": str(self.residual)}


def markov_residual(x, y, z, t) -> Fraction:
    """y_1...y_n (z * sum x_i / (y_i y_{i+1}) - t)."""
    n = len(x)
    s = sum(Fraction(x[i], y[i] * y[(i + 1) % n]) for i in range(n))
    return prod(y) * (z * s - t)


def markov_point(P: FanoPolygon) -> MarkovPoint:
    Q = build_bquiv(P).quiver
    H = hamiltonian(Q)
    if not H.holds:
        raise VerificationError(f"polygonal block quiver is not Hamiltonian: {H.violation}")
    g = gcd_arrows(Q)
    order = H.order
    n = len(order)
    x = tuple(Q.exchange[order[i]][order[(i + 1) % n]] // g for i in range(n))
    y = tuple(Q.labels[v][1] for v in order)
    t = 12 - singularity_content(P).tau + residual_sum(P)
    return MarkovPoint(x, y, g, t, markov_residual(x, y, g, t))


@dataclass(frozen=True)
class Feasibility:
    """Solution of g * coefficient = rhs over the positive integers."""

    g: int | None
    coefficient: int
    rhs: Fraction

    def __str__(self):
        if self.g is not None:
            return f"g = {self.g}"
        return f"infeasible: {self.coefficient}g = {self.rhs}"


def triangle_feasibility(w, ells, tau: int, residual) -> Feasibility:
    """Arrow multiplier g allowed by the degree formula for a triangle block quiver."""
    w, ells = tuple(w), tuple(ells)
    if len(w) != 3 or len(ells) != 3:
        raise FanoqError("expected three weights and three local indices")
    if any(a <= 0 for a in w + ells):
        raise FanoqError("weights and local indices must be positive")
    if any(gcd(w[i], w[j]) != 1 for i, j in ((0, 1), (1, 2), (0, 2))):
        raise FanoqError("weights must be pairwise coprime")
    coef = sum(a * b for a, b in zip(w, ells))
    rhs = (12 - tau + Fraction(residual)) * prod(ells)
    g = rhs / coef
    ok = g.denominator == 1 and g > 0
    return Feasibility(int(g) if ok else None, coef, rhs)


def triangle_arrow_space(w) -> list[tuple[int, ...]]:
    """Balanced arrow vectors (a12, a23, a31) of a 3-cycle with weights w."""
    w1, w2, w3 = w
    rows = [[w2, 0, -w3], [-w1, w3, 0], [0, -w2, w1]]
    return integer_kernel(rows, 3)


# ---------------------------------------------------------------------------
# mutation compatibility and small shapes

def commutation_check(P: FanoPolygon, vertex: int, pq: PolygonalQuiver | None = None,
                      target: DecoratedQuiver | None = None) -> bool:
    """Quiver mutation at a vertex of quiv(P) against polygon mutation.

    At a T-vertex the mutated quiver must be the quiver of the mutated
    polygon; at an R-vertex the mutated quiver must carry a label with w > l.
    ``pq`` and ``target`` (the quiver of the mutated polygon) may be passed
    in when already known.
    """
    pq = pq or build_quiv(P)
    if not 0 <= vertex < pq.quiver.n:
        raise FanoqError(f"no vertex {vertex}")
    mutated = mutate(pq.quiver, vertex)
    w, l = pq.quiver.labels[vertex]
    if w == l:
        if target is None:
            target = build_quiv(mutate_polygon(P, pq.normals[vertex])).quiver
        return quivers_isomorphic(mutated, target)
    return any(a > b for a, b in mutated.labels)


def geometric_diameters(pq: PolygonalQuiver) -> list[int]:
    """h_max - h_min of <m, P> for each normal, from the polygon alone."""
    out = []
    for m in pq.normals:
        hs = [pair(m, v) for v in pq.source.vertices]
        out.append(max(hs) - min(hs))
    return out


def block_shape_classifier(Qb: DecoratedQuiver) -> str:
    A = Qb.exchange
    if Qb.n == 3:
        cyc = (A[0][1], A[1][2], A[2][0])
        if all(a > 0 for a in cyc) or all(a < 0 for a in cyc):
            return "triangle"
        return "none"
    if Qb.n == 4:
        for rest in itertools.permutations((1, 2, 3)):
            c = (0,) + rest
            if all(A[c[i]][c[(i + 1) % 4]] > 0 for i in range(4)):
                zeros = (A[c[0]][c[2]] == 0) + (A[c[1]][c[3]] == 0)
                return ("zero-parallel-pairs", "one-parallel-pair", "two-parallel-pairs")[zeros]
    return "none"


def bquiv_matches_block(P: FanoPolygon) -> bool:
    return quivers_isomorphic(build_bquiv(P).quiver, block(build_quiv(P).quiver))


def near_complete(Q: DecoratedQuiver) -> bool:
    """Every vertex is joined to all but at most one other vertex."""
    return all(sum(1 for a in Q.exchange[v] if a) >= Q.n - 2 for v in range(Q.n))

