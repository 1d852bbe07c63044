"""Pure-Python enumeration kernels; mirrors _kernels.pyx function for function."""


def _xgcd(a, b):
    p0, q0, p1, q1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        p0, p1 = p1, p0 - k * p1
        q0, q1 = q1, q0 - k * q1
    if a < 0:
        return -a, -p0, -q0
    return a, p0, q0


def fano_cycles(points):
    """All vertex cycles of Fano polygons drawn from ``points``.

    ``points`` are primitive, pairwise non-parallel, and sorted by
    counterclockwise angle.  Each cycle is returned once, as a tuple of
    indices starting at the vertex of smallest angle.
    """
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    n = len(points)
    out = []
    chain = [0] * (n + 1)

    def extend(depth):
        i0, i1, last, prev = chain[0], chain[1], chain[depth - 1], chain[depth - 2]
        x0, y0, x1, y1 = xs[i0], ys[i0], xs[i1], ys[i1]
        lx, ly, px, py = xs[last], ys[last], xs[prev], ys[prev]
        for j in range(last + 1, n):
            cx, cy = xs[j], ys[j]
            if lx * cy - ly * cx <= 0:
                break  # the angular gap has reached pi and only grows from here
            if (lx - px) * (cy - ly) - (ly - py) * (cx - lx) <= 0:
                continue  # not a left turn at the last vertex
            if (x1 - x0) * (cy - y0) - (y1 - y0) * (cx - x0) <= 0:
                continue  # right of the first edge
            if (cx - lx) * (y0 - ly) - (cy - ly) * (x0 - lx) <= 0:
                continue  # first vertex right of the new edge
            chain[depth] = j
            if (cx * y0 - cy * x0 > 0
                    and (cx - lx) * (y0 - cy) - (cy - ly) * (x0 - cx) > 0
                    and (x0 - cx) * (y1 - y0) - (y0 - cy) * (x1 - x0) > 0):
                out.append(tuple(chain[:depth + 1]))
            extend(depth + 1)

    for i0 in range(n):
        chain[0] = i0
        for i1 in range(i0 + 1, n):
            if xs[i0] * ys[i1] - ys[i0] * xs[i1] <= 0:
                break
            chain[1] = i1
            extend(2)
    return out


def sl_canonical(xs, ys):
    """Lexicographically least image, flattened, of a ccw vertex cycle under SL2(Z).

    Each start vertex u is sent to (1, 0) and the next vertex into the strip
    0 <= x < y.
    """
    n = len(xs)
    best = None
    for i in range(n):
        ux, uy = xs[i], ys[i]
        vx, vy = xs[(i + 1) % n], ys[(i + 1) % n]
        _, p, q = _xgcd(ux, uy)
        c = p * vx + q * vy
        d = ux * vy - uy * vx
        k = -(c // d)
        a, b = p - k * uy, q + k * ux
        img = []
        for j in range(n):
            zx, zy = xs[(i + j) % n], ys[(i + j) % n]
            img.append(a * zx + b * zy)
            img.append(-uy * zx + ux * zy)
        img = tuple(img)
        if best is None or img < best:
            best = img
    return best


def canonical_key(xs, ys, mirror):
    key = sl_canonical(xs, ys)
    if mirror:
        other = sl_canonical(xs[::-1], [-y for y in ys[::-1]])
        if other < key:
            key = other
    return key


def fano_classes(points, ranks, mirror):
    """Equivalence classes of the Fano polygons drawn from ``points``.

    Returns a dict from flattened canonical key to the index cycle of the
    class member whose vertices, ordered by ``ranks``, come first.
    """
    classes = {}
    best_rank = {}
    for cyc in fano_cycles(points):
        xs = [points[i][0] for i in cyc]
        ys = [points[i][1] for i in cyc]
        key = canonical_key(xs, ys, mirror)
        r = tuple(sorted(ranks[i] for i in cyc))
        old = best_rank.get(key)
        if old is None or r < old:
            best_rank[key] = r
            classes[key] = cyc
    return classes


def mutate_exchange(A, m, k):
    """Exchange matrix after mut^k at m: k arrows t -> h per path t -> m -> h, arrows at m reversed."""
    n = len(A)
    new = [list(r) for r in A]
    row = A[m]
    outs = [(h, row[h]) for h in range(n) if row[h] > 0]
    for t in range(n):
        ct = A[t][m]
        if ct > 0:
            nt = new[t]
            for h, mh in outs:
                c = k * ct * mh
                nt[h] += c
                new[h][t] -= c
    for y in range(n):
        new[m][y] = -row[y]
        new[y][m] = -A[y][m]
    return tuple(tuple(r) for r in new)


def balance_sums(A, weights):
    """Per vertex, (weighted out-arrows, weighted in-arrows)."""
    out = []
    for row in A:
        pos = neg = 0
        for w, a in zip(weights, row):
            if a > 0:
                pos += w * a
            else:
                neg -= w * a
        out.append((pos, neg))
    return tuple(out)
