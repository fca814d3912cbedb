"""Credal sets as exact vertex-represented polytopes in the probability
simplex.

A :class:`CredalSet` always stores the canonical vertex list: no vertex is a
convex combination of the others, and the list is sorted lexicographically.
Canonical form is unique, so two credal sets over the same states are equal
exactly when their vertex tuples are equal; the LP-based mutual-containment
test remains as the definitive fallback.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (DimensionMismatch, EmptyInput, NonConstantMass,
                     NotInSimplex, WeightMismatch, ZeroMassEvent)
from .numerics import (INFEASIBLE, ONE, OPTIMAL, ZERO, LinearProgram, Matrix,
                       nullspace_basis, rank, solve_lp)

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class StateSpace:
    """Ordered finite state space."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("state space must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("state labels must be distinct")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def _check_simplex(states: StateSpace, p: Sequence[Fraction]) -> Vector:
    if len(p) != len(states):
        raise DimensionMismatch(
            f"point has {len(p)} entries for {len(states)} states")
    v = tuple(Fraction(x) for x in p)
    if any(x < 0 for x in v) or sum(v) != 1:
        raise NotInSimplex(f"{v} is not a probability vector")
    return v


def _in_hull(p: Vector, points: Sequence[Vector]) -> bool:
    """LP feasibility: is p a convex combination of the given points?

    The sum-to-one row is implied by the coordinate rows because every point
    and p itself have equal coordinate sums here.
    """
    if not points:
        return False
    n = len(points)
    eq_rows = tuple(tuple(q[s] for q in points) for s in range(len(p)))
    lp = LinearProgram(objective=(ZERO,) * n, sense="max",
                       eq_matrix=eq_rows, eq_rhs=tuple(p))
    return solve_lp(lp).status == OPTIMAL


def _reduce_hull(points: Iterable[Vector]) -> list[Vector]:
    """Extreme points of conv(points), sorted lexicographically.

    Works on arbitrary rational vectors (intermediate Minkowski partial sums
    are not probability vectors), so no simplex validation here.
    """
    pts = sorted(set(points))
    kept: list[Vector] = []
    for p in pts:
        if not kept or not _in_hull(p, kept):
            kept.append(p)
    # A point admitted early may lie in the hull of later arrivals.
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and _in_hull(kept[i], others):
            kept.pop(i)
        else:
            i += 1
    return sorted(kept)


@dataclass(frozen=True)
class CredalSet:
    """Closed convex set of probability vectors, stored by canonical
    vertices.  Build instances through :func:`canonicalize`; the constructor
    only checks cheap invariants."""

    states: StateSpace
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("credal set needs at least one vertex")
        for v in self.vertices:
            _check_simplex(self.states, v)
        if any(a >= b for a, b in zip(self.vertices, self.vertices[1:])):
            raise ValueError("vertices must be strictly sorted")

    def support(self) -> tuple[int, ...]:
        """Indices of states that receive positive mass from some vertex."""
        return tuple(s for s in range(len(self.states))
                     if any(v[s] > 0 for v in self.vertices))


def canonicalize(states: StateSpace, points: Iterable[Sequence[Fraction]]) -> CredalSet:
    """Canonical vertex form of the convex hull of the given simplex points."""
    pts = [_check_simplex(states, p) for p in points]
    if not pts:
        raise EmptyInput("no points given")
    return CredalSet(states, tuple(_reduce_hull(pts)))


def contains(c: CredalSet, p: Sequence[Fraction]) -> bool:
    """Is p a convex combination of c's vertices?"""
    if len(p) != len(c.states):
        raise DimensionMismatch(
            f"point has {len(p)} entries for {len(c.states)} states")
    v = tuple(Fraction(x) for x in p)
    return _in_hull(v, c.vertices)


def equals(c1: CredalSet, c2: CredalSet) -> bool:
    """Exact set equality via mutual vertex containment."""
    if c1.states != c2.states:
        raise DimensionMismatch("credal sets live on different state spaces")
    if c1.vertices == c2.vertices:
        return True
    return (all(contains(c2, v) for v in c1.vertices)
            and all(contains(c1, v) for v in c2.vertices))


def dim(c: CredalSet) -> int:
    """Affine dimension: rank of the vertex-difference matrix."""
    v0 = c.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in c.vertices[1:]]
    if not diffs:
        return 0
    return rank(Matrix.from_rows(diffs))


def minkowski_mix(weights: Sequence[Fraction], sets: Sequence[CredalSet]) -> CredalSet:
    """Weighted Minkowski sum sum_i w_i S_i, canonicalized.

    Zero-weight components are skipped (reduced-form posteriors may put zero
    mass on a cell).  Folds pairwise with intermediate hull reduction to keep
    vertex counts small.
    """
    if len(weights) != len(sets):
        raise WeightMismatch("one weight per set required")
    w = [Fraction(x) for x in weights]
    if any(x < 0 for x in w) or sum(w) != 1:
        raise WeightMismatch("weights must be nonnegative and sum to 1")
    if not sets:
        raise WeightMismatch("no sets given")
    states = sets[0].states
    for s in sets:
        if s.states != states:
            raise DimensionMismatch("sets live on different state spaces")
    active = [(wi, s) for wi, s in zip(w, sets) if wi != 0]
    w0, s0 = active[0]
    acc = [tuple(w0 * x for x in v) for v in s0.vertices]
    for wi, s in active[1:]:
        acc = _reduce_hull(
            tuple(a + wi * x for a, x in zip(p, v))
            for p in acc for v in s.vertices)
    return CredalSet(states, tuple(_reduce_hull(acc)))


def support_function(c: CredalSet, u: Sequence[Fraction]) -> Fraction:
    """max_{p in c} sum_s u[s] p[s], attained at a vertex."""
    if len(u) != len(c.states):
        raise DimensionMismatch(
            f"direction has {len(u)} entries for {len(c.states)} states")
    return max(sum((a * b for a, b in zip(u, v)), ZERO) for v in c.vertices)


def condition_on_event(c: CredalSet, event: Iterable[str]) -> CredalSet:
    """Vertex-wise conditional set given an event with constant positive
    mass across vertices.

    Non-constant mass means the conditional map is not linear on the set, so
    the vertex-wise image would be wrong; the decomposition machinery only
    ever conditions on constant-mass events.
    """
    idx = sorted(c.states.index(label) for label in event)
    if not idx:
        raise ZeroMassEvent("empty event")
    masses = [sum((v[s] for s in idx), ZERO) for v in c.vertices]
    if any(m != masses[0] for m in masses):
        raise NonConstantMass(
            f"event mass varies across vertices: {sorted(set(masses))}")
    mass = masses[0]
    if mass == 0:
        raise ZeroMassEvent("event has probability zero")
    members = set(idx)
    conditioned = (
        tuple(v[s] / mass if s in members else ZERO for s in range(len(c.states)))
        for v in c.vertices)
    return CredalSet(c.states, tuple(_reduce_hull(conditioned)))


EXTREME = "extreme"
NOT_EXTREME = "not_extreme"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExtremenessResult:
    verdict: str
    witness: Optional[tuple[CredalSet, CredalSet]] = None


def _embed_segment(states: StateSpace, i: int, j: int,
                   lo: Fraction, hi: Fraction) -> CredalSet:
    """Interval [lo, hi] in the p[i] coordinate of the edge {i, j}."""
    n = len(states)

    def point(x: Fraction) -> Vector:
        return tuple(x if s == i else (1 - x if s == j else ZERO)
                     for s in range(n))

    pts = sorted({point(lo), point(hi)})
    return CredalSet(states, tuple(pts))


def _split_segment(c: CredalSet, i: int, j: int) -> tuple[CredalSet, CredalSet]:
    """Witness pair averaging to the interval c (sub-interval of an edge):
    stretch one endpoint outward and inward by the same epsilon."""
    xs = sorted(v[i] for v in c.vertices)
    a, b = xs[0], xs[-1]
    if a > 0:
        eps = min(a, b - a) / 2
        return (_embed_segment(c.states, i, j, a - eps, b),
                _embed_segment(c.states, i, j, a + eps, b))
    eps = min(1 - b, b - a) / 2
    return (_embed_segment(c.states, i, j, a, b + eps),
            _embed_segment(c.states, i, j, a, b - eps))


def _ccw_order(points2d: list[tuple[Fraction, Fraction]]) -> list[int]:
    """Indices of the 2-D points in counterclockwise order around their
    centroid, using exact sign tests only."""
    n = len(points2d)
    cx = sum((p[0] for p in points2d), ZERO) / n
    cy = sum((p[1] for p in points2d), ZERO) / n

    def half(k: int) -> int:
        dx, dy = points2d[k][0] - cx, points2d[k][1] - cy
        # upper half-plane first (dy > 0, or dy == 0 and dx > 0)
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cross(k1: int, k2: int) -> Fraction:
        a = (points2d[k1][0] - cx, points2d[k1][1] - cy)
        b = (points2d[k2][0] - cx, points2d[k2][1] - cy)
        return a[0] * b[1] - a[1] * b[0]

    def cmp(k1: int, k2: int) -> int:
        h1, h2 = half(k1), half(k2)
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cr = cross(k1, k2)
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return sorted(range(n), key=functools.cmp_to_key(cmp))


def _split_polygon(c: CredalSet, support: tuple[int, ...]) -> Optional[tuple[CredalSet, CredalSet]]:
    """Witness pair for a non-triangle polygon in a 3-state cell.

    Splits the edge vectors into two closed fans whose half-weighted sum
    reproduces the polygon; a small LP finds opposite translations that keep
    both summands inside the simplex, and the perturbation shrinks until
    that succeeds.  Returns None when no feasible perturbation is found.
    """
    i, j, k = support
    pts2d = [(v[i], v[j]) for v in c.vertices]
    order = _ccw_order(pts2d)
    ring = [pts2d[t] for t in order]
    nv = len(ring)
    edges = [(ring[(t + 1) % nv][0] - ring[t][0],
              ring[(t + 1) % nv][1] - ring[t][1]) for t in range(nv)]

    # One summand walks the edges scaled by (1 + d_t) and shifted by
    # (dx, dy); the other uses (1 - d_t) and the opposite shift, so their
    # half-weighted sum reproduces the polygon exactly.  A witness is any
    # feasible (d, dx, dy) with d nonzero keeping both walks inside the
    # chart triangle; successive LPs push each d_t away from zero.
    nvar = nv + 2
    eq_rows = [tuple(e[0] for e in edges) + (ZERO, ZERO),
               tuple(e[1] for e in edges) + (ZERO, ZERO)]
    eq_rhs = [ZERO, ZERO]
    ub_rows: list[tuple[Fraction, ...]] = []
    ub_rhs: list[Fraction] = []
    for t in range(nv):
        unit = [ZERO] * nvar
        unit[t] = ONE
        ub_rows.append(tuple(unit))
        ub_rhs.append(ONE)
        unit2 = [ZERO] * nvar
        unit2[t] = -ONE
        ub_rows.append(tuple(unit2))
        ub_rhs.append(ONE)
    for sign in (1, -1):
        for kk in range(nv):
            # coefficient of d_t in the walk offset at vertex kk
            cx = [sign * edges[t][0] if t < kk else ZERO for t in range(nv)]
            cy = [sign * edges[t][1] if t < kk else ZERO for t in range(nv)]
            vx, vy = ring[kk]
            ub_rows.append(tuple(-a for a in cx) + (-sign * ONE, ZERO))
            ub_rhs.append(vx)
            ub_rows.append(tuple(-a for a in cy) + (ZERO, -sign * ONE))
            ub_rhs.append(vy)
            ub_rows.append(tuple(a + b for a, b in zip(cx, cy)) + (sign * ONE, sign * ONE))
            ub_rhs.append(1 - vx - vy)

    def build(dvals: Sequence[Fraction], dx: Fraction, dy: Fraction,
              sign: int) -> CredalSet:
        x, y = ring[0][0] + sign * dx, ring[0][1] + sign * dy
        embedded = []
        for t in range(nv):
            z = 1 - x - y
            embedded.append(tuple(
                x if s == i else (y if s == j else (z if s == k else ZERO))
                for s in range(len(c.states))))
            x += (1 + sign * dvals[t]) * edges[t][0]
            y += (1 + sign * dvals[t]) * edges[t][1]
        return CredalSet(c.states, tuple(_reduce_hull(embedded)))

    half = Fraction(1, 2)
    for t in range(nv):
        for obj_sign in (ONE, -ONE):
            objective = [ZERO] * nvar
            objective[t] = obj_sign
            res = solve_lp(LinearProgram(
                objective=tuple(objective), sense="max",
                eq_matrix=tuple(eq_rows), eq_rhs=tuple(eq_rhs),
                ub_matrix=tuple(ub_rows), ub_rhs=tuple(ub_rhs),
                lower_bounds=(None,) * nvar))
            if res.status != OPTIMAL or res.value == 0:
                continue
            dvals = res.solution[:nv]
            dx, dy = res.solution[nv], res.solution[nv + 1]
            q1 = build(dvals, dx, dy, 1)
            q2 = build(dvals, dx, dy, -1)
            if (not equals(q1, c)
                    and equals(minkowski_mix((half, half), (q1, q2)), c)):
                return q1, q2
    return None


def full_subsimplex(states: StateSpace, support: Iterable[int]) -> CredalSet:
    """Delta(event): all probability vectors supported on the given states."""
    idx = sorted(set(support))
    n = len(states)
    verts = sorted(tuple(ONE if s == t else ZERO for s in range(n)) for t in idx)
    return CredalSet(states, tuple(verts))


def is_extreme_in_K(c: CredalSet) -> ExtremenessResult:
    """Minkowski extremeness of a cell set, three-valued.

    Singletons and full sub-simplices are extreme; an edge interval is
    extreme only when it is the whole edge (witness pair otherwise); a
    two-dimensional set on three states is extreme exactly when it is a
    triangle.  Larger supports are only certified when the set is the full
    sub-simplex; everything else is Unknown.
    """
    if len(c.vertices) == 1:
        return ExtremenessResult(EXTREME)
    support = c.support()
    d = dim(c)
    if len(support) == 2 and d == 1:
        i, j = support
        xs = sorted(v[i] for v in c.vertices)
        if xs[0] == 0 and xs[-1] == 1:
            return ExtremenessResult(EXTREME)
        return ExtremenessResult(NOT_EXTREME, _split_segment(c, i, j))
    if len(support) == 3 and d == 2:
        if len(c.vertices) == 3:
            return ExtremenessResult(EXTREME)
        return ExtremenessResult(NOT_EXTREME, _split_polygon(c, support))
    if equals(c, full_subsimplex(c.states, support)):
        return ExtremenessResult(EXTREME)
    return ExtremenessResult(UNKNOWN)
