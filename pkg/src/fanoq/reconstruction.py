"""Decide whether a balanced block quiver comes from a Fano polygon, and recover it.

The recovered polygon is placed so that the nominated vertex m_1 is the
normal (0, 1) and its edge starts at (x, -l_1) with 0 <= x < l_1.  Vertex
coordinates are then forced edge by edge from the exchange matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .bridge import build_bquiv, hamiltonian
from .errors import FanoqError, VerificationError
from .lattice2d import FanoPolygon, canonical_form
from .quiver import DecoratedQuiver, balancing, is_block

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReconstructionReport:
    """Outcome of a reconstruction attempt.

    ``transcript`` holds the sequences y, x, s, t (in the Hamiltonian order
    from the nominated vertex) for the x that succeeded or, on failure, for
    the witness x.  ``witness`` records the data behind a failure, including
    the violated conditions of every admissible x.  A block quiver need not
    determine its polygon: ``alternatives`` holds the GL-inequivalent polygons
    produced by the other admissible x.
    """

    outcome: str
    polygon: FanoPolygon | None
    nominated_vertex: int
    x_choice: int | None = None
    failed_condition: str | None = None
    witness: dict = field(default_factory=dict)
    transcript: dict = field(default_factory=dict)
    order: tuple[int, ...] | None = None
    zero_pattern: str | None = None
    alternatives: tuple[FanoPolygon, ...] = ()

    @property
    def success(self) -> bool:
        return self.outcome == "success"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "polygon": self.polygon.to_json() if self.polygon else None,
            "nominated_vertex": self.nominated_vertex,
            "x_choice": self.x_choice,
            "failed_condition": self.failed_condition,
            "witness": _jsonable(self.witness),
            "transcript": _jsonable(self.transcript),
            "order": list(self.order) if self.order is not None else None,
            "zero_pattern": self.zero_pattern,
            "alternatives": [P.to_json() for P in self.alternatives],
        }

    @property
    def realizations(self) -> tuple[FanoPolygon, ...]:
        """Every inequivalent polygon found, the reported one first."""
        return ((self.polygon,) if self.polygon else ()) + self.alternatives


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _integral(q) -> bool:
    return Fraction(q).denominator == 1


def _check_input(Q: DecoratedQuiver, size=None):
    if size is not None and Q.n != size:
        raise FanoqError(f"expected a {size}-vertex quiver, got {Q.n} vertices")
    if Q.n < 3:
        raise FanoqError("a polygonal quiver has at least three vertices")
    if not is_block(Q):
        raise FanoqError("input is not a block quiver (some vertices would merge)")
    if not balancing(Q).all_balanced:
        raise FanoqError("input quiver is not balanced")


def _failure(nominated, cond, witness, transcript=None, order=None, x=None, pattern=None):
    return ReconstructionReport("failure", None, nominated, x, cond, witness, transcript or {},
                                order, pattern)


def _pick_condition(violations: dict[int, list[str]]) -> tuple[str, int]:
    """Condition to report and the witness x.

    The smallest condition violated by every admissible x when one exists,
    otherwise the latest first-violation among the x.
    """
    common = set.intersection(*(set(v) for v in violations.values()))
    if common:
        cond = min(common, key=_cond_rank)
        return cond, min(violations)
    x = max(violations, key=lambda k: _cond_rank(violations[k][0]))
    return violations[x][0], x


def _success(found, nominated, transcripts, order, pattern=None) -> ReconstructionReport:
    """Report the first x that worked; other x giving inequivalent polygons become alternatives."""
    x, P = found[0]
    seen = {canonical_form(P)}
    alternatives = []
    for _, R in found[1:]:
        key = canonical_form(R)
        if key not in seen:
            seen.add(key)
            alternatives.append(R)
    return ReconstructionReport("success", P, nominated, x, None, {}, transcripts[x], order,
                                pattern, tuple(alternatives))


def _cond_rank(c: str) -> tuple[int, str]:
    return int(c[1]), c


def _verify(Q: DecoratedQuiver, order, verts) -> FanoPolygon:
    try:
        P = FanoPolygon(tuple((int(x), int(y)) for x, y in verts), 1)
    except FanoqError as exc:
        raise VerificationError(f"all conditions hold but the vertices are not a Fano polygon: {exc}")
    if build_bquiv(P).quiver != Q.permuted(order):
        raise VerificationError("recovered polygon does not reproduce the input quiver")
    return P


# ---------------------------------------------------------------------------
# triangles

def expected_volume_gap(Qb: DecoratedQuiver, nominated: int = 0) -> tuple[int, int]:
    """(sum of w_i l_i, w_1 w_2 A(m_1, m_2)) for a balanced 3-cycle."""
    if Qb.n != 3:
        raise FanoqError("expected volume is defined for three-vertex quivers")
    order = _triangle_order(Qb, nominated)
    if order is None:
        raise FanoqError("quiver is not a directed 3-cycle")
    if not balancing(Qb).all_balanced:
        raise FanoqError("input quiver is not balanced")
    lhs = sum(w * l for w, l in Qb.labels)
    rhs = set()
    for i in range(3):
        a, b = order[i], order[(i + 1) % 3]
        rhs.add(Qb.labels[a][0] * Qb.labels[b][0] * Qb.exchange[a][b])
    if len(rhs) != 1:
        raise VerificationError("expected volume depends on the nominated vertex")
    return lhs, rhs.pop()


def _triangle_order(Q: DecoratedQuiver, m1: int):
    A = Q.exchange
    m2 = next((y for y in range(3) if y != m1 and A[m1][y] > 0), None)
    if m2 is None:
        return None
    m3 = 3 - m1 - m2
    if A[m1][m2] > 0 and A[m2][m3] > 0 and A[m3][m1] > 0:
        return (m1, m2, m3)
    return None


def reconstruct_triangle(Qb: DecoratedQuiver, nominated: int = 0) -> ReconstructionReport:
    """Seven-condition test for a three-vertex block quiver; recovers the triangle."""
    _check_input(Qb, 3)
    order = _triangle_order(Qb, nominated)
    if order is None:
        return _failure(nominated, "C1", {"exchange": Qb.exchange})
    A = Qb.exchange
    (w1, l1), (w2, l2), (w3, l3) = (Qb.labels[v] for v in order)
    if min(w1, l1, w2, l2, w3, l3) < 1:
        return _failure(nominated, "C2", {"labels": [Qb.labels[v] for v in order]}, order=order)
    y1 = y2 = -l1
    y3 = y2 + w2 * A[order[0]][order[1]]
    s = [0, -A[order[0]][order[1]], -A[order[0]][order[2]]]
    if y3 <= 0:
        return _failure(nominated, "C3", {"y": [y1, y2, y3]}, order=order)
    xs = [x for x in range(l1) if gcd(x, y1) == 1 and gcd(x + w1, y2) == 1]
    if not xs:
        return _failure(nominated, "C4", {"searched": list(range(l1))}, order=order)
    violations: dict[int, list[str]] = {}
    transcripts = {}
    found = []
    for x in xs:
        x1, x2 = Fraction(x), Fraction(x + w1)
        x3 = (w3 * l3 + x1 * y3) / y1
        x3b = (x2 * y3 - w2 * l2) / y2
        t = [Fraction(1), (x3 - x2) / w2, (x1 - x3) / w3]
        bad = []
        if not (_integral(t[1]) and _integral(t[2])):
            bad.append("C5")
        if x3 != x3b:
            bad.append("C6")
        if not (_integral(x3) and gcd(int(x3), y3) == 1
                and all(_integral(t[j]) and gcd(s[j], int(t[j])) == 1 for j in (1, 2))):
            bad.append("C7")
        transcripts[x] = {"y": [y1, y2, y3], "x": [x1, x2, x3], "s": s, "t": t,
                          "x3_alt": x3b}
        if bad:
            violations[x] = bad
            continue
        found.append((x, _verify(Qb, order, [(x1, y1), (x2, y2), (x3, y3)])))
    if found:
        return _success(found, nominated, transcripts, order)
    cond, wx = _pick_condition(violations)
    witness = {"violations": violations}
    if cond == "C6":
        witness["expected_volume"] = list(expected_volume_gap(Qb, nominated))
    return _failure(nominated, cond, witness, transcripts[wx], order, wx)


# ---------------------------------------------------------------------------
# general polygons

def _zero_pattern(y, top) -> tuple[str, list[int]]:
    n = len(y)
    asc = [i for i in range(2, top) if y[i] == 0]
    desc = [i for i in range(top + 1, n) if y[i] == 0]
    name = {(False, False): "none", (True, False): "ascending",
            (False, True): "descending", (True, True): "both"}[(bool(asc), bool(desc))]
    return name, asc + desc


def reconstruct_general(Qb: DecoratedQuiver, nominated: int = 0) -> ReconstructionReport:
    """Nine-condition test for a balanced block quiver; recovers the polygon.

    Vertices p_i = (x_i, y_i) are the start points of the edges in Hamiltonian
    order from the nominated vertex.  Heights come from balancing at m_1:
    y_{i+1} = y_i + w_i A(m_1, m_i).  Each x_{i+1} follows from
    det(p_i, p_{i+1}) = w_i l_i; where y_i = 0 that equation is a consistency
    check and x_{i+1} is pinned instead by the arrow count A(m_2, m_i).
    """
    _check_input(Qb)
    n = Qb.n
    if not 0 <= nominated < n:
        raise FanoqError(f"no vertex {nominated}")
    A = Qb.exchange
    # (1) every vertex misses at most one other vertex
    for v in range(n):
        missing = [u for u in range(n) if u != v and A[v][u] == 0]
        if len(missing) > 1:
            return _failure(nominated, "C1", {"vertex": v, "unjoined": missing})
    # (2) Hamiltonian property
    H = hamiltonian(Qb)
    if not H.holds:
        return _failure(nominated, "C2", {"violation": H.violation, "radius": H.radius,
                                          "count": H.count})
    i0 = H.order.index(nominated)
    order = H.order[i0:] + H.order[:i0]
    lab = [Qb.labels[v] for v in order]
    a0 = [A[order[0]][order[i]] for i in range(n)]  # A(m_1, m_i)
    # (3) positive labels
    if any(w < 1 or l < 1 for w, l in lab):
        return _failure(nominated, "C3", {"labels": lab}, order=order)
    # (4) heights: out-neighbours, then at most one parallel edge, then in-neighbours
    y = [-lab[0][1], -lab[0][1]]
    for i in range(1, n):
        y.append(y[i] + lab[i][0] * a0[i])
    if y[n] != y[0]:
        raise VerificationError("heights do not close up although m_1 is balanced")
    y = y[:n]
    signs = [(a > 0) - (a < 0) for a in a0[1:]]
    top = 1 + sum(1 for s in signs if s > 0)  # index of the highest vertex
    parallel = top if top < n and a0[top] == 0 else None
    expected = [1] * (top - 1) + ([0] if parallel is not None else [])
    expected += [-1] * (n - 1 - len(expected))
    transcript = {"y": y}
    if signs != expected:
        return _failure(nominated, "C4", {"arrow_signs": signs}, transcript, order)
    if parallel is not None:
        if y[top] != lab[top][1]:
            return _failure(nominated, "C4", {"k": top, "y_k": y[top], "l_k": lab[top][1]},
                            transcript, order)
    elif y[top] <= 0:
        return _failure(nominated, "C4", {"k": top, "y_k": y[top]}, transcript, order)
    pattern, zeros = _zero_pattern(y, top)
    if pattern != "ascending":
        log.info("zero pattern %r exercised (order %s)", pattern, order)
    # (5) admissible x
    w0, l0 = lab[0]
    xs = [x for x in range(l0) if gcd(x, y[0]) == 1 and gcd(x + w0, y[1]) == 1]
    if not xs:
        return _failure(nominated, "C5", {"searched": list(range(l0))}, transcript, order,
                        pattern=pattern)
    s = [-a for a in a0]
    violations: dict[int, list[str]] = {}
    transcripts = {}
    found = []
    for x in xs:
        X = [Fraction(x), Fraction(x + w0)]
        t = [Fraction(1)]
        crossings = []
        for i in range(1, n):
            w, l = lab[i]
            if y[i] != 0:
                X.append((X[i] * y[(i + 1) % n] - w * l) / y[i])
            else:
                crossings.append(X[i] * y[(i + 1) % n] == w * l)
                ti = (A[order[1]][order[i]] + s[i] * t[1]) / s[1]
                X.append(X[i] + w * ti)
            t.append((X[i + 1] - X[i]) / w)
        closes = X[n] == X[0]
        X = X[:n]
        bad = []
        # (6) zero crossings, or the closing edge when there is none
        if not all(crossings) or (not zeros and not closes):
            bad.append("C6")
        # (7) integrality, primitivity, closure
        integral = all(map(_integral, X)) and all(map(_integral, t))
        if not integral:
            bad.append("C7")
        elif any(gcd(int(X[i]), y[i]) != 1 or gcd(s[i], int(t[i])) != 1 for i in range(n)):
            bad.append("C7")
        elif zeros and not closes:
            bad.append("C7")
        # (8) arrow counts between all pairs of normals
        if any(s[i] * t[j] - s[j] * t[i] != A[order[i]][order[j]]
               for i in range(n) for j in range(i + 1, n)):
            bad.append("C8")
        # (9) every other vertex strictly inside each edge's half-plane
        if any(s[i] * X[j] + t[i] * y[j] <= -lab[i][1]
               for i in range(n) for j in range(n) if j not in (i, (i + 1) % n)):
            bad.append("C9")
        transcripts[x] = {"y": y, "x": X, "s": s, "t": t}
        if bad:
            violations[x] = bad
            continue
        found.append((x, _verify(Qb, order, list(zip(X, y)))))
    if found:
        return _success(found, nominated, transcripts, order, pattern)
    cond, wx = _pick_condition(violations)
    return _failure(nominated, cond, {"violations": violations}, transcripts[wx], order, wx,
                    pattern)
