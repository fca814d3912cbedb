"""Blackwell experiments over credal sets: consistency, measurability,
prior-by-prior updating, reduced-form posteriors, garbling, and the
constructive builders.

An experiment is consistent with a credal set when every prior in the set
induces the same marginal over signals; only then is there a well-defined
information structure.  Vertex-wise Bayes updating is correct even for
inconsistent experiments because the update map is linear-fractional, so
vertex images span the posterior set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (DimensionMismatch, FullDimensional,
                     InconsistentExperiment, SignalMismatch,
                     ZeroProbabilitySignal)
from .geometry import (CredalSet, StateSpace, Vector, _reduce_hull, dim,
                       equals, minkowski_mix)
from .identification import Partition, PartitionedPrior, ReducedForm
from .numerics import (ONE, OPTIMAL, ZERO, LinearProgram, Matrix,
                       nullspace_basis, solve_lp)


def _check_stochastic(rows, width: int) -> None:
    for r in rows:
        if len(r) != width:
            raise ValueError("row width does not match signal count")
        if any(x < 0 for x in r) or sum(r) != 1:
            raise ValueError(f"row {r} is not a probability vector")


@dataclass(frozen=True)
class Experiment:
    """Likelihood matrix: one row per state, one column per signal."""

    states: StateSpace
    signals: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.signals or len(set(self.signals)) != len(self.signals):
            raise ValueError("signals must be nonempty and distinct")
        if len(self.rows) != len(self.states):
            raise ValueError("one row per state required")
        _check_stochastic(self.rows, len(self.signals))

    def column(self, y: int) -> tuple[Fraction, ...]:
        return tuple(r[y] for r in self.rows)

    def signal_index(self, y: str) -> int:
        return self.signals.index(y)

    def is_trivial(self) -> bool:
        return all(r == self.rows[0] for r in self.rows)


@dataclass(frozen=True)
class Kernel:
    """Markov kernel between signal alphabets."""

    from_signals: tuple[str, ...]
    to_signals: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.rows) != len(self.from_signals):
            raise ValueError("one row per input signal required")
        _check_stochastic(self.rows, len(self.to_signals))


def trivial_experiment(states: StateSpace, distribution: Sequence[Fraction],
                       signals: Sequence[str] | None = None) -> Experiment:
    """Experiment whose rows are all equal to the given distribution."""
    row = tuple(Fraction(x) for x in distribution)
    names = tuple(signals) if signals is not None else tuple(
        f"y{i}" for i in range(len(row)))
    return Experiment(states, names, tuple(row for _ in states.labels))


def is_consistent(pi: Experiment, c: CredalSet) -> bool:
    """Do all priors in c share one marginal over signals?"""
    if pi.states != c.states:
        raise DimensionMismatch("experiment and credal set disagree on states")
    v0 = c.vertices[0]
    for v in c.vertices[1:]:
        d = tuple(a - b for a, b in zip(v, v0))
        for y in range(len(pi.signals)):
            if sum((pi.rows[s][y] * d[s] for s in range(len(d))), ZERO) != 0:
                return False
    return True


def is_measurable(pi: Experiment, partition: Partition) -> bool:
    """Are likelihood rows constant within every cell?"""
    for cell in partition.cells:
        first = pi.rows[cell[0]]
        if any(pi.rows[s] != first for s in cell[1:]):
            return False
    return True


def marginal(pi: Experiment, c: CredalSet) -> tuple[Fraction, ...]:
    """The common signal distribution of a consistent experiment."""
    if not is_consistent(pi, c):
        raise InconsistentExperiment(
            "marginal distribution depends on the prior")
    v = c.vertices[0]
    return tuple(
        sum((pi.rows[s][y] * v[s] for s in range(len(v))), ZERO)
        for y in range(len(pi.signals)))


def update(pi: Experiment, c: CredalSet, y: str) -> CredalSet:
    """Prior-by-prior Bayes update given a signal, canonicalized.

    Vertices assigning the signal probability zero contribute nothing to
    the posterior set (their likelihood-weighted numerators vanish), so
    they are dropped.
    """
    if pi.states != c.states:
        raise DimensionMismatch("experiment and credal set disagree on states")
    yi = pi.signal_index(y)
    posts: list[Vector] = []
    for v in c.vertices:
        weighted = tuple(pi.rows[s][yi] * v[s] for s in range(len(v)))
        mass = sum(weighted, ZERO)
        if mass > 0:
            posts.append(tuple(x / mass for x in weighted))
    if not posts:
        raise ZeroProbabilitySignal(
            f"signal {y!r} is null under every prior in the set")
    return CredalSet(c.states, tuple(_reduce_hull(posts)))


def reduced_form_posterior(pi: Experiment, pp: PartitionedPrior, y: str) -> ReducedForm:
    """Bayes update of the reduced-form prior through a consistent
    experiment's flat cell likelihoods.

    Verifies the reduced-form updating identity: remixing the cell sets
    with the posterior weights reproduces the prior-by-prior update.
    """
    if not is_consistent(pi, pp.assembled):
        raise InconsistentExperiment(
            "reduced-form updating requires a consistent experiment")
    partition = pp.reduced.partition
    yi = pi.signal_index(y)
    lik = tuple(pi.rows[cell[0]][yi] for cell in partition.cells)
    mu_y = sum((l * t for l, t in zip(lik, pp.reduced.tau)), ZERO)
    if mu_y == 0:
        raise ZeroProbabilitySignal(f"signal {y!r} has zero marginal")
    tau_y = tuple(l * t / mu_y for l, t in zip(lik, pp.reduced.tau))
    remix = minkowski_mix(tau_y, pp.cell_sets)
    if not equals(remix, update(pi, pp.assembled, y)):
        raise AssertionError("reduced-form update identity failed")
    return ReducedForm(partition, tau_y)


def construct_consistent(c: CredalSet) -> Experiment:
    """A deterministic non-trivial two-signal experiment consistent with c.

    Takes the first nullspace basis vector of the vertex-difference matrix
    that is not collinear with the all-ones vector, recentres it, and uses
    rows 1/2 +- eps*e with eps = 1/(2 max|e|).  Raises FullDimensional when
    no non-trivial consistent experiment exists.
    """
    n = len(c.states)
    if dim(c) >= n - 1:
        raise FullDimensional(
            "full-dimensional sets admit only trivial consistent experiments")
    v0 = c.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in c.vertices[1:]]
    basis = nullspace_basis(Matrix.from_rows(diffs, cols=n))
    e = None
    for b in basis:
        if any(x != b[0] for x in b):
            e = b
            break
    if e is None:
        raise AssertionError("nullspace of a non-full-dimensional set "
                             "must exceed the constants")
    mean = sum(e, ZERO) / n
    e = tuple(x - mean for x in e)
    eps = 1 / (2 * max(abs(x) for x in e))
    half = Fraction(1, 2)
    rows = tuple((half + eps * x, half - eps * x) for x in e)
    return Experiment(c.states, ("y1", "y2"), rows)


def partition_revealing(partition: Partition) -> Experiment:
    """Deterministic experiment announcing the cell of the realised state."""
    names = tuple("+".join(partition.states.labels[s] for s in cell)
                  for cell in partition.cells)
    k = len(partition.cells)
    rows = tuple(
        tuple(ONE if partition.cell_of[s] == ci else ZERO for ci in range(k))
        for s in range(len(partition.states)))
    return Experiment(partition.states, names, rows)


def garble(pi1: Experiment, k: Kernel) -> Experiment:
    """Post-compose an experiment with a Markov kernel."""
    if k.from_signals != pi1.signals:
        raise SignalMismatch("kernel input signals do not match the experiment")
    rows = tuple(
        tuple(sum((r[y1] * k.rows[y1][y2] for y1 in range(len(r))), ZERO)
              for y2 in range(len(k.to_signals)))
        for r in pi1.rows)
    return Experiment(pi1.states, k.to_signals, rows)


def is_garbling_of(pi2: Experiment, pi1: Experiment) -> Kernel | None:
    """A witness kernel with garble(pi1, kernel) == pi2, or None.

    LP feasibility over the kernel entries: nonnegative rows summing to one
    that reproduce pi2's likelihoods.
    """
    if pi2.states != pi1.states:
        raise DimensionMismatch("experiments disagree on states")
    n1, n2 = len(pi1.signals), len(pi2.signals)
    nvar = n1 * n2

    def var(y1: int, y2: int) -> int:
        return y1 * n2 + y2

    eq_rows: list[tuple[Fraction, ...]] = []
    eq_rhs: list[Fraction] = []
    for s in range(len(pi1.states)):
        for y2 in range(n2):
            row = [ZERO] * nvar
            for y1 in range(n1):
                row[var(y1, y2)] = pi1.rows[s][y1]
            eq_rows.append(tuple(row))
            eq_rhs.append(pi2.rows[s][y2])
    for y1 in range(n1):
        row = [ZERO] * nvar
        for y2 in range(n2):
            row[var(y1, y2)] = ONE
        eq_rows.append(tuple(row))
        eq_rhs.append(ONE)
    res = solve_lp(LinearProgram(
        objective=(ZERO,) * nvar, sense="max",
        eq_matrix=tuple(eq_rows), eq_rhs=tuple(eq_rhs)))
    if res.status != OPTIMAL:
        return None
    rows = tuple(tuple(res.solution[var(y1, y2)] for y2 in range(n2))
                 for y1 in range(n1))
    return Kernel(pi1.signals, pi2.signals, rows)
