"""Invariant suite run by ``fanoq check``: every identity the theory predicts, per polygon."""

from __future__ import annotations

import os
import random
from collections import Counter
from functools import cached_property
from typing import Callable, Iterable

from .bridge import (block_shape_classifier, build_bquiv, build_quiv, commutation_check,
                     degree_from_quiver, geometric_diameters, hamiltonian, markov_point,
                     near_complete, quiver_degree_check, representative_choices,
                     singularity_content)
from .errors import FanoqError, VerificationError
from .lattice2d import (FanoPolygon, dual_degree, mutate_polygon, normalized_volume, pair,
                        polygons_equivalent, standard_refinement)
from .quiver import (DecoratedQuiver, balanced_weight_space, balancing, block, diameter,
                     gcd_arrows, gcd_weights, mutate, opposite,
                     quivers_isomorphic)
from .reconstruction import reconstruct_general, reconstruct_triangle

MUTATION_KS = (-2, -1, 0, 1, 2)
GROUP_PAIRS = [(s, t) for s in range(3) for t in range(3)]


class PolygonContext:
    """Lazily built objects shared by the checks of one polygon."""

    def __init__(self, P: FanoPolygon, table=None, notes=None):
        self.P = P
        self.table = table
        self.notes = notes if notes is not None else {}

    @cached_property
    def quiv(self):
        return build_quiv(self.P)

    @cached_property
    def bquiv(self):
        return build_bquiv(self.P)


def _cones(c: PolygonContext) -> bool:
    ref = standard_refinement(c.P)
    for k in ref.cones:
        if not (-pair(k.m, k.u) == -pair(k.m, k.v) == k.ell) or k.w * k.ell != k.r:
            return False
    mirrored = standard_refinement(c.P, placement="first")
    key = lambda r: sorted((k.w, k.ell, k.kind) for k in r.cones)
    return key(ref) == key(mirrored)


def _volume(c: PolygonContext) -> bool:
    return normalized_volume(c.P) == sum(w * l for w, l in c.quiv.quiver.labels)


def _balancing(c: PolygonContext) -> bool:
    rep = balancing(c.quiv.quiver)
    return rep.all_balanced and list(rep.diameters) == geometric_diameters(c.quiv)


def _reflexive(c: PolygonContext) -> bool:
    Q = c.quiv.quiver
    if any(l != 1 for l in Q.ells):
        return True
    return all(lab == (1, 1) for lab in Q.labels) and all(sum(row) == 0 for row in Q.exchange)


def _block(c: PolygonContext) -> bool:
    Q = c.quiv.quiver
    Qb = block(Q)
    return (quivers_isomorphic(c.bquiv.quiver, Qb) and block(Qb) == Qb
            and block(opposite(Q)) == opposite(Qb) and near_complete(c.bquiv.quiver))


def _hamiltonian(c: PolygonContext) -> bool:
    H = hamiltonian(c.bquiv)  # raises if the cycle is not the edge order
    return H.holds and H.order == tuple(range(c.bquiv.quiver.n))


def _degree(c: PolygonContext) -> bool:
    value = degree_from_quiver(c.quiv)
    choices = representative_choices(c.quiv)
    for i, reps in enumerate(choices):
        if i >= 64:
            break
        if degree_from_quiver(c.quiv, reps) != value:
            return False
    return value == dual_degree(c.P) == degree_from_quiver(c.bquiv.quiver)


def _noether(c: PolygonContext) -> bool:
    return quiver_degree_check(c.P, c.table)


def _markov(c: PolygonContext) -> bool:
    return markov_point(c.P).residual == 0


def quiver_mutation_ok(Q: DecoratedQuiver) -> bool:
    """Closure, invariants, self-inverse and group identity at every vertex of Q."""
    g, w = gcd_arrows(Q), gcd_weights(Q)
    count = balancing(Q).count
    for m in range(Q.n):
        D = diameter(Q, m)
        muts = {}
        for k in MUTATION_KS:
            M = muts[k] = mutate(Q, m, k)
            rep = balancing(M)
            if not rep.all_balanced or rep.count != count:
                return False
            if gcd_arrows(M) != g or gcd_weights(M) != w or rep.diameters[m] != D:
                return False
            if mutate(M, m, k) != Q:
                return False
        # mut^t mut^s == mut^0 mut^(s-t), reusing the single mutations above
        zeros = {}
        for s, t in GROUP_PAIRS:
            if s - t not in zeros:
                zeros[s - t] = mutate(muts[s - t], m, 0)
            if mutate(muts[s], m, t) != zeros[s - t]:
                return False
    return True


def _mutation(c: PolygonContext) -> bool:
    return quiver_mutation_ok(c.quiv.quiver) and quiver_mutation_ok(c.bquiv.quiver)


def commutation_ok(P: FanoPolygon, pq=None, targets: dict | None = None) -> bool:
    """commutation_check at every vertex of quiv(P), building each mutated polygon once."""
    pq = pq or build_quiv(P)
    targets = {} if targets is None else targets
    for v, (w, l) in enumerate(pq.quiver.labels):
        m = pq.normals[v]
        if w == l and m not in targets:
            targets[m] = build_quiv(mutate_polygon(P, m)).quiver
        if not commutation_check(P, v, pq, targets.get(m)):
            return False
    return True


def _commutation(c: PolygonContext) -> bool:
    """Commutation at every vertex, plus invariants of each mutated polygon."""
    Q = c.quiv.quiver
    content = singularity_content(c.P)
    deg = dual_degree(c.P)  # residual_sum is a function of degree and content
    g, w = gcd_arrows(Q), gcd_weights(Q)
    targets = {}
    for v in range(Q.n):
        wv, lv = Q.labels[v]
        m = c.quiv.normals[v]
        if wv == lv and m not in targets:
            P2 = mutate_polygon(c.P, m)
            Q2 = targets[m] = build_quiv(P2).quiver
            if (singularity_content(P2) != content or dual_degree(P2) != deg
                    or gcd_arrows(Q2) != g or gcd_weights(Q2) != w):
                return False
            if not polygons_equivalent(mutate_polygon(P2, (-m[0], -m[1])), c.P):
                return False
    return commutation_ok(c.P, c.quiv, targets)


def _round_trip(c: PolygonContext) -> bool:
    """Reconstruction succeeds and one of its realizations is GL-equivalent to P.

    The block quiver need not determine P; when the reported polygon is a
    different realization it is counted in ``notes["other_realization"]``.
    """
    rep = reconstruct_general(c.bquiv.quiver)
    if not rep.success:
        return False
    if not polygons_equivalent(rep.polygon, c.P):
        c.notes["other_realization"] = c.notes.get("other_realization", 0) + 1
        return any(polygons_equivalent(R, c.P) for R in rep.alternatives)
    if not polygons_equivalent(rep.polygon, c.P, "SL"):
        c.notes["sl_differs"] = c.notes.get("sl_differs", 0) + 1
    return True


def _opposite(c: PolygonContext) -> bool:
    return quivers_isomorphic(opposite(c.quiv.quiver), build_quiv(c.P.reoriented()).quiver)


def _shape(c: PolygonContext) -> bool:
    Qb = c.bquiv.quiver
    if Qb.n == 3:
        return block_shape_classifier(Qb) == "triangle"
    if Qb.n == 4:
        return block_shape_classifier(Qb) != "none"
    return True


POLYGON_CHECKS: dict[str, Callable[[PolygonContext], bool]] = {
    "cones": _cones,
    "volume": _volume,
    "balancing": _balancing,
    "reflexive": _reflexive,
    "block": _block,
    "hamiltonian": _hamiltonian,
    "degree": _degree,
    "noether": _noether,
    "markov": _markov,
    "mutation": _mutation,
    "commutation": _commutation,
    "round_trip": _round_trip,
    "opposite": _opposite,
    "shape": _shape,
}


def run_polygon_checks(P: FanoPolygon, names: Iterable[str] | None = None, table=None,
                       notes: dict | None = None) -> dict[str, bool]:
    """Run the named checks (default all); ``notes`` collects informational counts."""
    ctx = PolygonContext(P, table, notes)
    out = {}
    for name in names or POLYGON_CHECKS:
        try:
            out[name] = bool(POLYGON_CHECKS[name](ctx))
        except (VerificationError, FanoqError):
            out[name] = False
    return out


def seeded_rng() -> random.Random:
    return random.Random(int(os.environ.get("FANOQ_SEED", "0")))


def random_balanced_triangles(count: int, rng: random.Random | None = None,
                              max_arrows: int = 12, max_ell: int = 6) -> list[DecoratedQuiver]:
    """3-cycles with random arrows, balanced by the primitive weight vector of their kernel."""
    rng = rng or seeded_rng()
    out = []
    while len(out) < count:
        a12, a23, a31 = (rng.randint(1, max_arrows) for _ in range(3))
        ex = ((0, a12, -a31), (-a12, 0, a23), (a31, -a23, 0))
        basis = balanced_weight_space(DecoratedQuiver(((0, 1),) * 3, ex))
        if len(basis) != 1:
            continue
        w = basis[0] if basis[0][0] > 0 else tuple(-x for x in basis[0])
        ells = [rng.randint(1, max_ell) for _ in range(3)]
        out.append(DecoratedQuiver(tuple(zip(w, ells)), ex))
    return out


def triangle_agreement(Q: DecoratedQuiver) -> bool:
    """Triangle and general reconstruction agree, for every nomination."""
    outcomes = set()
    for v in range(3):
        a = reconstruct_triangle(Q, v)
        b = reconstruct_general(Q, v)
        if a.success != b.success:
            return False
        if a.success and not polygons_equivalent(a.polygon, b.polygon):
            return False
        outcomes.add(a.success)
    return len(outcomes) == 1


def summarize(results: Iterable[dict[str, bool]]) -> Counter:
    fails = Counter()
    for r in results:
        for name, ok in r.items():
            fails[name] += 0 if ok else 1
    return fails
