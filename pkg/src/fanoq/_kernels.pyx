# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled enumeration kernels; same API and results as _kernels_py."""

from libc.stdlib cimport malloc, free

from . import _kernels_py as _py


cdef long _floordiv(long a, long b):
    cdef long q = a // b
    return q


cdef void _xgcd(long a, long b, long* p, long* q):
    cdef long p0 = 1, q0 = 0, p1 = 0, q1 = 1, k, r, t
    while b != 0:
        k = a // b
        r = a - k * b
        a = b
        b = r
        t = p0 - k * p1
        p0 = p1
        p1 = t
        t = q0 - k * q1
        q0 = q1
        q1 = t
    if a < 0:
        p0 = -p0
        q0 = -q0
    p[0] = p0
    q[0] = q0


cdef class _Search:
    cdef long* xs
    cdef long* ys
    cdef int n
    cdef int* chain
    cdef list out

    def __cinit__(self, points):
        cdef int i
        self.n = len(points)
        self.xs = <long*> malloc((self.n + 1) * sizeof(long))
        self.ys = <long*> malloc((self.n + 1) * sizeof(long))
        self.chain = <int*> malloc((self.n + 1) * sizeof(int))
        if not self.xs or not self.ys or not self.chain:
            raise MemoryError()
        for i in range(self.n):
            self.xs[i] = points[i][0]
            self.ys[i] = points[i][1]
        self.out = []

    def __dealloc__(self):
        free(self.xs)
        free(self.ys)
        free(self.chain)

    cdef void extend(self, int depth):
        cdef int i0 = self.chain[0], i1 = self.chain[1]
        cdef int last = self.chain[depth - 1], prev = self.chain[depth - 2]
        cdef long x0 = self.xs[i0], y0 = self.ys[i0], x1 = self.xs[i1], y1 = self.ys[i1]
        cdef long lx = self.xs[last], ly = self.ys[last], px = self.xs[prev], py = self.ys[prev]
        cdef long cx, cy
        cdef int j, t
        for j in range(last + 1, self.n):
            cx = self.xs[j]
            cy = self.ys[j]
            if lx * cy - ly * cx <= 0:
                break
            if (lx - px) * (cy - ly) - (ly - py) * (cx - lx) <= 0:
                continue
            if (x1 - x0) * (cy - y0) - (y1 - y0) * (cx - x0) <= 0:
                continue
            if (cx - lx) * (y0 - ly) - (cy - ly) * (x0 - lx) <= 0:
                continue
            self.chain[depth] = j
            if (cx * y0 - cy * x0 > 0
                    and (cx - lx) * (y0 - cy) - (cy - ly) * (x0 - cx) > 0
                    and (x0 - cx) * (y1 - y0) - (y0 - cy) * (x1 - x0) > 0):
                self.out.append(tuple([self.chain[t] for t in range(depth + 1)]))
            self.extend(depth + 1)

    cdef run(self):
        cdef int i0, i1
        for i0 in range(self.n):
            self.chain[0] = i0
            for i1 in range(i0 + 1, self.n):
                if self.xs[i0] * self.ys[i1] - self.ys[i0] * self.xs[i1] <= 0:
                    break
                self.chain[1] = i1
                self.extend(2)
        return self.out


def fano_cycles(points):
    """All vertex cycles of Fano polygons drawn from angle-sorted primitive ``points``."""
    return _Search(points).run()


cdef void _sl_canonical(long* xs, long* ys, int n, long* best, long* img):
    cdef int i, j, t, better
    cdef long ux, uy, vx, vy, p, q, c, d, k, a, b, zx, zy
    for i in range(n):
        ux = xs[i]
        uy = ys[i]
        vx = xs[(i + 1) % n]
        vy = ys[(i + 1) % n]
        _xgcd(ux, uy, &p, &q)
        c = p * vx + q * vy
        d = ux * vy - uy * vx
        k = -_floordiv(c, d)
        a = p - k * uy
        b = q + k * ux
        for j in range(n):
            zx = xs[(i + j) % n]
            zy = ys[(i + j) % n]
            img[2 * j] = a * zx + b * zy
            img[2 * j + 1] = -uy * zx + ux * zy
        better = i == 0
        if not better:
            for t in range(2 * n):
                if img[t] != best[t]:
                    better = img[t] < best[t]
                    break
        if better:
            for t in range(2 * n):
                best[t] = img[t]


def sl_canonical(xs_in, ys_in):
    cdef int n = len(xs_in), i
    cdef long* xs = <long*> malloc(n * sizeof(long))
    cdef long* ys = <long*> malloc(n * sizeof(long))
    cdef long* best = <long*> malloc(2 * n * sizeof(long))
    cdef long* img = <long*> malloc(2 * n * sizeof(long))
    try:
        for i in range(n):
            xs[i] = xs_in[i]
            ys[i] = ys_in[i]
        _sl_canonical(xs, ys, n, best, img)
        return tuple([best[i] for i in range(2 * n)])
    finally:
        free(xs)
        free(ys)
        free(best)
        free(img)


def canonical_key(xs, ys, mirror):
    key = sl_canonical(xs, ys)
    if mirror:
        other = sl_canonical(xs[::-1], [-y for y in ys[::-1]])
        if other < key:
            key = other
    return key


def fano_classes(points, ranks, bint mirror):
    """Equivalence classes of the Fano polygons drawn from ``points``."""
    cdef int m = len(points), n, i, t, better
    cdef long* xs = <long*> malloc((m + 1) * sizeof(long))
    cdef long* ys = <long*> malloc((m + 1) * sizeof(long))
    cdef long* best = <long*> malloc(2 * (m + 1) * sizeof(long))
    cdef long* other = <long*> malloc(2 * (m + 1) * sizeof(long))
    cdef long* img = <long*> malloc(2 * (m + 1) * sizeof(long))
    classes = {}
    best_rank = {}
    try:
        for cyc in fano_cycles(points):
            n = len(cyc)
            for i in range(n):
                xs[i] = points[cyc[i]][0]
                ys[i] = points[cyc[i]][1]
            _sl_canonical(xs, ys, n, best, img)
            if mirror:
                for i in range(n):
                    xs[i] = points[cyc[n - 1 - i]][0]
                    ys[i] = -points[cyc[n - 1 - i]][1]
                _sl_canonical(xs, ys, n, other, img)
                better = 0
                for t in range(2 * n):
                    if other[t] != best[t]:
                        better = other[t] < best[t]
                        break
                if better:
                    for t in range(2 * n):
                        best[t] = other[t]
            key = tuple([best[i] for i in range(2 * n)])
            r = tuple(sorted([ranks[i] for i in cyc]))
            old = best_rank.get(key)
            if old is None or r < old:
                best_rank[key] = r
                classes[key] = cyc
        return classes
    finally:
        free(xs)
        free(ys)
        free(best)
        free(other)
        free(img)


# Entries above this bound go through the Python kernel to avoid C overflow.
cdef long _SAFE = 1 << 20


def mutate_exchange(A, int m, long k):
    """Exchange matrix after mut^k at m: k arrows t -> h per path t -> m -> h, arrows at m reversed."""
    cdef int n = len(A), i, j, t, h
    cdef long ct, c
    cdef long* a = <long*> malloc(n * n * sizeof(long) + 1)
    cdef long* b = <long*> malloc(n * n * sizeof(long) + 1)
    try:
        if not 0 <= m < n:
            raise IndexError(m)
        if k > _SAFE or k < -_SAFE:
            return _py.mutate_exchange(A, m, k)
        for i in range(n):
            row = A[i]
            if len(row) != n:
                raise ValueError("exchange matrix is not square")
            for j in range(n):
                c = row[j]
                if c > _SAFE or c < -_SAFE:
                    return _py.mutate_exchange(A, m, k)
                a[i * n + j] = c
                b[i * n + j] = c
        for t in range(n):
            ct = a[t * n + m]
            if ct <= 0:
                continue
            for h in range(n):
                if a[m * n + h] > 0:
                    c = k * ct * a[m * n + h]
                    b[t * n + h] += c
                    b[h * n + t] -= c
        for i in range(n):
            b[m * n + i] = -a[m * n + i]
            b[i * n + m] = -a[i * n + m]
        return tuple([tuple([b[i * n + j] for j in range(n)]) for i in range(n)])
    finally:
        free(a)
        free(b)


def balance_sums(A, weights):
    """Per vertex, (weighted out-arrows, weighted in-arrows)."""
    cdef int n = len(weights), rows = len(A), i, j
    cdef long pos, neg, x, w
    cdef long* ws = <long*> malloc(n * sizeof(long) + 1)
    try:
        for j in range(n):
            w = weights[j]
            if w > _SAFE or w < -_SAFE:
                return _py.balance_sums(A, weights)
            ws[j] = w
        out = []
        for i in range(rows):
            row = A[i]
            if len(row) != n:
                raise ValueError("row length differs from the weight count")
            pos = 0
            neg = 0
            for j in range(n):
                x = row[j]
                if x > _SAFE or x < -_SAFE:
                    return _py.balance_sums(A, weights)
                if x > 0:
                    pos += ws[j] * x
                else:
                    neg -= ws[j] * x
            out.append((pos, neg))
        return tuple(out)
    finally:
        free(ws)
