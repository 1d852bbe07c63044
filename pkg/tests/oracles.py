"""Independent reference computations used by the tests.

Nothing here imports from fanoq.  Each oracle uses a different method from
the library: brute-force search, lattice-point counting, half-plane
intersection, explicit matrix search, or the tropical dual map.

Run ``python3 tests/oracles.py 3`` to recount the bound-3 corpus from scratch.
"""

from __future__ import annotations

import itertools
import math
import sys
from fractions import Fraction
from math import gcd


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


# ---------------------------------------------------------------------------
# polygons

def primitive_box(bound):
    return [(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)
            if gcd(x, y) == 1]


def angle_sorted(points):
    return sorted(points, key=lambda p: math.atan2(p[1], p[0]) % (2 * math.pi))


def is_fano_vertex_set(points) -> bool:
    """Strict convex position around an interior origin, by angular order."""
    if len(points) < 3:
        return False
    vs = angle_sorted(points)
    n = len(vs)
    for i in range(n):
        a, b, c = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
        if cross(a, b) <= 0:
            return False
        if cross((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) <= 0:
            return False
    return True


def brute_fano_vertex_sets(bound):
    """Every subset of the primitive box points that is a Fano vertex set."""
    pts = primitive_box(bound)
    out = []
    for mask in range(1, 1 << len(pts)):
        if bin(mask).count("1") < 3:
            continue
        sub = [pts[i] for i in range(len(pts)) if mask >> i & 1]
        if is_fano_vertex_set(sub):
            out.append(frozenset(sub))
    return out


def grown_fano_vertex_sets(bound):
    """Fano vertex sets by growth from triangles and quadrilaterals.

    An origin interior to a planar hull is interior to the hull of at most
    four of its points, so any Fano n-gon with n >= 5 has a vertex whose
    removal leaves a Fano (n-1)-gon.  Growing by one point at a time from all
    triangles and quadrilaterals therefore reaches every vertex set.
    """
    pts = primitive_box(bound)
    level = {frozenset(s) for k in (3, 4) for s in itertools.combinations(pts, k)
             if is_fano_vertex_set(s)}
    seen = set(level)
    while level:
        nxt = set()
        for s in level:
            for p in pts:
                if p not in s:
                    t = s | {p}
                    if t not in seen and is_fano_vertex_set(t):
                        seen.add(t)
                        nxt.add(t)
        level = nxt
    return seen


def _hnf2(cols):
    """Row Hermite normal form of the 2 x n matrix with the given columns."""
    r0 = [c[0] for c in cols]
    r1 = [c[1] for c in cols]
    j = next(j for j in range(len(cols)) if r0[j] or r1[j])
    while r1[j]:
        q = r0[j] // r1[j]
        r0 = [a - q * b for a, b in zip(r0, r1)]
        r0, r1 = r1, r0
    if r0[j] < 0:
        r0 = [-a for a in r0]
    k = next(k for k in range(len(cols)) if r1[k])
    if r1[k] < 0:
        r1 = [-a for a in r1]
    q = r0[k] // r1[k]
    r0 = [a - q * b for a, b in zip(r0, r1)]
    return tuple(r0), tuple(r1)


def gl_class_key(points):
    """GL2(Z) normal form: least HNF over all cyclic readings of the vertices."""
    vs = angle_sorted(points)
    n = len(vs)
    keys = []
    for seq in (vs, vs[::-1]):
        for i in range(n):
            keys.append(_hnf2(seq[i:] + seq[:i]))
    return min(keys)


def count_gl_classes(vertex_sets):
    return len({gl_class_key(s) for s in vertex_sets})


def brute_equivalent(P, Q, allow_reflection=True) -> bool:
    """Search the matrices that send two adjacent vertices of P to adjacent vertices of Q."""
    a, b = angle_sorted(P)[:2]
    target = set(map(tuple, Q))
    d = cross(a, b)
    for c, e in itertools.permutations(target, 2):
        # g = [c e] [a b]^-1
        inv = ((b[1], -b[0]), (-a[1], a[0]))
        g = [[Fraction(c[r] * inv[0][s] + e[r] * inv[1][s], d) for s in range(2)] for r in range(2)]
        if any(x.denominator != 1 for row in g for x in row):
            continue
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if det not in ((1, -1) if allow_reflection else (1,)):
            continue
        image = {(int(g[0][0] * p[0] + g[0][1] * p[1]), int(g[1][0] * p[0] + g[1][1] * p[1]))
                 for p in P}
        if image == target:
            return True
    return False


def pick_volume(points) -> int:
    """Normalized area 2I + B - 2 from lattice point counts."""
    vs = angle_sorted(points)
    n = len(vs)
    xs = [p[0] for p in vs]
    ys = [p[1] for p in vs]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            sides = [cross((vs[(i + 1) % n][0] - vs[i][0], vs[(i + 1) % n][1] - vs[i][1]),
                           (x - vs[i][0], y - vs[i][1])) for i in range(n)]
            if all(s > 0 for s in sides):
                interior += 1
            elif all(s >= 0 for s in sides):
                boundary += 1
    return 2 * interior + boundary - 2


def brute_dual_vertices(points):
    """Vertices of {u : <u, v> >= -1 for all v} by intersecting every pair of lines."""
    cand = set()
    for a, b in itertools.combinations(points, 2):
        d = cross(a, b)
        if d == 0:
            continue
        u = (Fraction(-b[1] + a[1], d), Fraction(b[0] - a[0], d))
        if all(u[0] * v[0] + u[1] * v[1] >= -1 for v in points):
            cand.add(u)
    return _hull(cand)


def _hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                          (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lo, hi = half(pts), half(pts[::-1])
    return lo[:-1] + hi[:-1]


def shoelace2(vs):
    n = len(vs)
    return abs(sum(cross(vs[i], vs[(i + 1) % n]) for i in range(n)))


def dual_degree_oracle(points) -> Fraction:
    return shoelace2(brute_dual_vertices(points))


def mutation_by_dual_map(points, w, f):
    """Combinatorial mutation through its dual: u -> u - min(0, <u, f>) w, then dualize back."""
    dual = brute_dual_vertices(points)
    n = len(dual)
    cand = list(dual)
    for i in range(n):
        p, q = dual[i], dual[(i + 1) % n]
        hp = p[0] * f[0] + p[1] * f[1]
        hq = q[0] * f[0] + q[1] * f[1]
        if hp * hq < 0:  # break line of the piecewise-linear map
            t = hp / (hp - hq)
            cand.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    img = []
    for u in cand:
        s = min(0, u[0] * f[0] + u[1] * f[1])
        img.append((u[0] - s * w[0], u[1] - s * w[1]))
    new_dual = _hull(img)
    # the polar of the image is the mutated polygon
    verts = brute_dual_vertices(new_dual)
    return [(int(x), int(y)) for x, y in verts if x.denominator == 1 and y.denominator == 1], verts


# ---------------------------------------------------------------------------
# cones

def brute_normal(u, v, box=40):
    """Primitive m with <m,u> = <m,v> < 0, by search; returns (m, l)."""
    for mx in range(-box, box + 1):
        for my in range(-box, box + 1):
            if gcd(mx, my) != 1:
                continue
            a = mx * u[0] + my * u[1]
            if a < 0 and a == mx * v[0] + my * v[1]:
                return (mx, my), -a
    raise ValueError("no normal in box")


def lattice_length(u, v) -> int:
    """Number of lattice points on the segment uv, minus one, by walking it."""
    dx, dy = v[0] - u[0], v[1] - u[1]
    steps = max(abs(dx), abs(dy))
    return sum(1 for k in range(1, steps + 1)
               if (dx * k) % steps == 0 and (dy * k) % steps == 0)


def brute_cyclic_type(u, v):
    """All a in [0, r) with a GL2(Z) matrix sending u to (0,1) and v to (r,-a)."""
    r = abs(cross(u, v))
    d = cross(u, v)
    out = []
    for a in range(r):
        # g = T [u v]^-1 with T columns (0,1), (r,-a)
        inv = ((v[1], -v[0]), (-u[1], u[0]))
        T = ((0, r), (1, -a))
        g = [[Fraction(T[i][0] * inv[0][j] + T[i][1] * inv[1][j], d) for j in range(2)]
             for i in range(2)]
        if all(x.denominator == 1 for row in g for x in row):
            if abs(g[0][0] * g[1][1] - g[0][1] * g[1][0]) == 1:
                out.append(a)
    return r, out


# ---------------------------------------------------------------------------
# quivers

def fz_mutation(B, k):
    """b'_ij = -b_ij at k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2."""
    n = len(B)
    return [[-B[i][j] if k in (i, j) else
             B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
             for j in range(n)] for i in range(n)]


def brute_isomorphic(labels1, ex1, labels2, ex2) -> bool:
    n = len(labels1)
    if n != len(labels2):
        return False
    for perm in itertools.permutations(range(n)):
        if all(labels1[perm[i]] == labels2[i] for i in range(n)) and all(
                ex1[perm[i]][perm[j]] == ex2[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def rational_nullspace_dim(rows, ncols) -> int:
    """ncols minus the rank, by Fraction elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return ncols - rank


def det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


if __name__ == "__main__":
    b = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    sets = grown_fano_vertex_sets(b)
    print(f"bound {b}: {len(sets)} vertex sets, {count_gl_classes(sets)} GL classes")
