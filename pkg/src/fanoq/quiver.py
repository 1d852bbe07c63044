"""Decorated quivers: balancing, generalized mutation, invariants, blocks, isomorphism.

A decorated quiver is an antisymmetric integer exchange matrix ``A`` (``A[i][j]``
arrows from i to j when positive) together with integer labels ``(w, l)`` on
its vertices.  Nothing here refers to polygons.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

from .errors import FanoqError, VerificationError
from .intlinalg import gcd_all, integer_kernel
from .kernels import balance_sums, mutate_exchange


@dataclass(frozen=True)
class DecoratedQuiver:
    labels: tuple[tuple[int, int], ...]
    exchange: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        labels = tuple((int(w), int(l)) for w, l in self.labels)
        ex = tuple(tuple(int(a) for a in row) for row in self.exchange)
        n = len(labels)
        if len(ex) != n or any(len(row) != n for row in ex):
            raise FanoqError(f"exchange matrix must be {n}x{n} to match the labels")
        for i in range(n):
            for j in range(i, n):
                if ex[i][j] != -ex[j][i]:
                    raise FanoqError(f"exchange matrix is not antisymmetric at ({i}, {j})")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "exchange", ex)

    @classmethod
    def _trusted(cls, labels, exchange) -> "DecoratedQuiver":
        # for results that are antisymmetric tuples of ints by construction
        Q = object.__new__(cls)
        object.__setattr__(Q, "labels", labels)
        object.__setattr__(Q, "exchange", exchange)
        return Q

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.labels)

    @cached_property
    def ells(self) -> tuple[int, ...]:
        return tuple(l for _, l in self.labels)

    def out(self, m: int) -> list[int]:
        return [y for y, a in enumerate(self.exchange[m]) if a > 0]

    def into(self, m: int) -> list[int]:
        return [y for y, a in enumerate(self.exchange[m]) if a < 0]

    def permuted(self, perm: Sequence[int]) -> "DecoratedQuiver":
        """The quiver whose vertex i is vertex perm[i] of this one."""
        A = self.exchange
        return DecoratedQuiver(tuple(self.labels[p] for p in perm),
                               tuple(tuple(A[p][q] for q in perm) for p in perm))

    def to_json(self) -> dict:
        return {"labels": [list(l) for l in self.labels],
                "exchange": [list(r) for r in self.exchange]}

    @classmethod
    def from_json(cls, data: dict) -> "DecoratedQuiver":
        try:
            return cls(tuple(tuple(l) for l in data["labels"]),
                       tuple(tuple(r) for r in data["exchange"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FanoqError):
                raise
            raise FanoqError(f"malformed quiver JSON: {exc}") from None


@dataclass(frozen=True)
class BalancingReport:
    defects: tuple[int, ...]
    diameters: tuple[int | None, ...]

    def balanced(self, v: int) -> bool:
        return self.defects[v] == 0

    @property
    def all_balanced(self) -> bool:
        return not any(self.defects)

    @property
    def count(self) -> int:
        return sum(d == 0 for d in self.defects)


def defect(Q: DecoratedQuiver, v: int) -> int:
    """S(v): weighted out-arrows minus weighted in-arrows."""
    return sum(w * a for w, a in zip(Q.weights, Q.exchange[v]))


def diameter(Q: DecoratedQuiver, v: int) -> int:
    (out, into), = balance_sums((Q.exchange[v],), Q.weights)
    if out != into:
        raise FanoqError(f"vertex {v} is not balanced; its diameter is undefined")
    return out


def balancing(Q: DecoratedQuiver) -> BalancingReport:
    sums = balance_sums(Q.exchange, Q.weights)
    return BalancingReport(tuple(o - i for o, i in sums),
                           tuple(o if o == i else None for o, i in sums))


def balanced_vertex_count(Q: DecoratedQuiver) -> int:
    return balancing(Q).count


def classical_mutation(B: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Fomin-Zelevinsky matrix mutation at index k."""
    n = len(B)
    out = [list(r) for r in B]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            elif B[i][k] * B[k][j] > 0:
                s = 1 if B[i][k] > 0 else -1
                out[i][j] = B[i][j] + s * B[i][k] * B[k][j]
    return out


def mutate(Q: DecoratedQuiver, m: int, k: int = 1) -> DecoratedQuiver:
    """Generalized mutation mut^k at a balanced vertex m.

    Each path t -> m -> h contributes k arrows t -> h (or removes them for
    negative k), arrows at m are reversed, and m is relabelled
    ``(k*D(m) - w, D(m) - l)``.
    """
    if not 0 <= m < Q.n:
        raise FanoqError(f"no vertex {m}")
    D = diameter(Q, m)
    new = mutate_exchange(Q.exchange, m, k)
    if k == 1 and [list(r) for r in new] != classical_mutation(Q.exchange, m):
        raise VerificationError("mutation disagrees with the classical exchange-matrix rule")
    w, l = Q.labels[m]
    labels = list(Q.labels)
    labels[m] = (k * D - w, D - l)
    return DecoratedQuiver._trusted(tuple(labels), new)


def mutation_group_check(Q: DecoratedQuiver, m: int, s: int, t: int) -> bool:
    """mut^t(mut^s(Q)) == mut^0(mut^(s-t)(Q)) at m."""
    lhs = mutate(mutate(Q, m, s), m, t)
    rhs = mutate(mutate(Q, m, s - t), m, 0)
    return lhs == rhs


def gcd_arrows(Q: DecoratedQuiver) -> int:
    g = gcd_all([gcd(*row) for row in Q.exchange])
    if g == 0:
        raise FanoqError("gcd undefined: the quiver has no arrows")
    return g


def gcd_weights(Q: DecoratedQuiver) -> int:
    g = gcd_all(Q.weights)
    if g == 0:
        raise FanoqError("gcd undefined: all weights are zero")
    return g


def opposite(Q: DecoratedQuiver) -> DecoratedQuiver:
    return DecoratedQuiver(Q.labels, tuple(tuple(-a for a in r) for r in Q.exchange))


# ---------------------------------------------------------------------------
# blocks

def block_classes(Q: DecoratedQuiver) -> list[list[int]]:
    """Vertices with the same l and identical rows of the exchange matrix.

    Two such vertices have no arrows between them, so identical rows mean
    identical in- and out-neighbourhoods with multiplicity.  Classes are
    ordered by their first member.
    """
    classes: dict[tuple, list[int]] = {}
    for v in range(Q.n):
        classes.setdefault((Q.labels[v][1], Q.exchange[v]), []).append(v)
    return sorted(classes.values())


def block(Q: DecoratedQuiver) -> DecoratedQuiver:
    classes = block_classes(Q)
    reps = [c[0] for c in classes]
    labels = tuple((sum(Q.labels[v][0] for v in c), Q.labels[c[0]][1]) for c in classes)
    ex = tuple(tuple(Q.exchange[p][q] for q in reps) for p in reps)
    return DecoratedQuiver(labels, ex)


def is_block(Q: DecoratedQuiver) -> bool:
    return len(block_classes(Q)) == Q.n


def split_vertex(Qb: DecoratedQuiver, v: int, k: int) -> DecoratedQuiver:
    """Split v, labelled (tau*l + rho, l), into (k*l, l) and ((tau-k)*l + rho, l).

    The two new vertices are v (first part) and a new last vertex (second
    part); both copy the arrows of v and have none between them.
    """
    w, l = Qb.labels[v]
    if l <= 0:
        raise FanoqError("splitting needs a positive local index")
    tau, rho = divmod(w, l)
    if not 1 <= k <= tau:
        raise FanoqError(f"k must lie in 1..{tau}")
    labels = list(Qb.labels)
    labels[v] = (k * l, l)
    labels.append(((tau - k) * l + rho, l))
    n = Qb.n
    rows = [list(r) + [r[v]] for r in Qb.exchange]
    rows.append(list(Qb.exchange[v]) + [0])
    rows[v][n] = 0
    return DecoratedQuiver(tuple(labels), tuple(tuple(r) for r in rows))


def drop_vertex(Q: DecoratedQuiver, v: int) -> DecoratedQuiver:
    keep = [i for i in range(Q.n) if i != v]
    return Q.permuted(keep)


def balanced_weight_space(Q: DecoratedQuiver) -> list[tuple[int, ...]]:
    """Z-basis of the weight vectors that balance every vertex of Q."""
    return integer_kernel(Q.exchange, Q.n)


# ---------------------------------------------------------------------------
# isomorphism

def _twin_reduce(Q: DecoratedQuiver):
    """Collapse identical rows; each class keeps its sorted label multiset."""
    classes: dict[tuple, list[int]] = {}
    for v in range(Q.n):
        classes.setdefault(Q.exchange[v], []).append(v)
    groups = sorted(classes.values())
    reps = [g[0] for g in groups]
    tags = [tuple(sorted(Q.labels[v] for v in g)) for g in groups]
    ex = [[Q.exchange[p][q] for q in reps] for p in reps]
    return groups, tags, ex


def find_isomorphism(Q1: DecoratedQuiver, Q2: DecoratedQuiver) -> list[int] | None:
    """A bijection f with labels and arrows of Q1 at (i, j) equal those of Q2 at (f(i), f(j))."""
    if Q1.n != Q2.n or sorted(Q1.labels) != sorted(Q2.labels):
        return None
    g1, t1, e1 = _twin_reduce(Q1)
    g2, t2, e2 = _twin_reduce(Q2)
    if len(g1) != len(g2):
        return None
    k = len(g1)

    def sig(tags, ex, i):
        return tags[i], tuple(sorted(ex[i]))

    s1 = [sig(t1, e1, i) for i in range(k)]
    s2 = [sig(t2, e2, i) for i in range(k)]
    if sorted(s1) != sorted(s2):
        return None
    cand = [[j for j in range(k) if s2[j] == s1[i]] for i in range(k)]
    order = sorted(range(k), key=lambda i: len(cand[i]))
    image = [-1] * k
    used = [False] * k

    def search(pos):
        if pos == k:
            return True
        i = order[pos]
        for j in cand[i]:
            if used[j]:
                continue
            if all(e1[i][p] == e2[j][image[p]] for p in order[:pos]):
                image[i], used[j] = j, True
                if search(pos + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    if not search(0):
        return None
    # inside matched twin classes, pair vertices with equal labels
    f = [-1] * Q1.n
    for i in range(k):
        a = sorted(g1[i], key=lambda v: Q1.labels[v])
        b = sorted(g2[image[i]], key=lambda v: Q2.labels[v])
        for x, y in zip(a, b):
            f[x] = y
    return f


def quivers_isomorphic(Q1: DecoratedQuiver, Q2: DecoratedQuiver) -> bool:
    return find_isomorphism(Q1, Q2) is not None
