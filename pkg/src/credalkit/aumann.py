"""Information structures over posterior credal sets: plausibility checking,
reduced-form decomposition, reconstruction of an inducing experiment, and
joint belief sets over the state-signal product.

A structure is plausible for a prior set when the weighted Minkowski
mixture of its posteriors reproduces the prior set exactly; with rational
vertices that identity is decidable, so the check is exact set equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import (CellMismatch, DimensionMismatch, NonConstantCellMass,
                     NotMaximal, NotPlausible, SupportTooLarge)
from .geometry import (CredalSet, StateSpace, Vector, _reduce_hull, equals,
                       minkowski_mix, support_function)
from .identification import (MAXIMAL_YES, PartitionedPrior, ReducedForm,
                             check_maximal)
from .experiments import Experiment, marginal, update
from .numerics import ONE, ZERO


@dataclass(frozen=True)
class InformationStructure:
    """Full-support weights over a list of posterior credal sets."""

    signals: tuple[str, ...]
    weights: tuple[Fraction, ...]
    posteriors: tuple[CredalSet, ...]

    def __post_init__(self):
        if not (len(self.signals) == len(self.weights) == len(self.posteriors)):
            raise ValueError("signals, weights, posteriors must align")
        if len(set(self.signals)) != len(self.signals):
            raise ValueError("signals must be distinct")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise ValueError("weights must be strictly positive and sum to 1")
        states = self.posteriors[0].states
        if any(p.states != states for p in self.posteriors):
            raise ValueError("posteriors must share a state space")

    @property
    def states(self) -> StateSpace:
        return self.posteriors[0].states


def degenerate_structure(c: CredalSet, signal: str = "y0") -> InformationStructure:
    """The no-information structure: full mass on the prior set itself."""
    return InformationStructure((signal,), (ONE,), (c,))


@lru_cache(maxsize=512)
def induced_structure(pi: Experiment, c: CredalSet) -> InformationStructure:
    """Marginal weights and prior-by-prior posteriors of a consistent
    experiment; signals with zero marginal are dropped."""
    mu = marginal(pi, c)  # raises InconsistentExperiment otherwise
    signals, weights, posteriors = [], [], []
    for y, w in zip(pi.signals, mu):
        if w == 0:
            continue
        signals.append(y)
        weights.append(w)
        posteriors.append(update(pi, c, y))
    return InformationStructure(tuple(signals), tuple(weights), tuple(posteriors))


def is_aumann_plausible(structure: InformationStructure, c: CredalSet) -> bool:
    """Does the weighted Minkowski mixture of the posteriors equal the
    prior set exactly?"""
    if structure.states != c.states:
        raise DimensionMismatch("structure and prior disagree on states")
    return equals(minkowski_mix(structure.weights, structure.posteriors), c)


def decompose_reduced_form(structure: InformationStructure,
                           pp: PartitionedPrior) -> list[ReducedForm]:
    """Per-signal reduced forms of a plausible structure over a partially
    identified prior.

    Each posterior must put constant mass on every cell (its min and max of
    the cell-mass functional agree), the weighted posteriors must average
    back to the prior's reduced form, and every posterior must equal the
    mixture of the prior's cell sets under its own weights.   The last
    check fails for structures that split a non-extreme cell set.
    """
    if not is_aumann_plausible(structure, pp.assembled):
        raise NotPlausible("posteriors do not average back to the prior set")
    partition = pp.reduced.partition
    n = len(pp.assembled.states)
    reduced_forms = []
    for y, post in zip(structure.signals, structure.posteriors):
        tau_y = []
        for cell in partition.cells:
            indicator = tuple(ONE if s in cell else ZERO for s in range(n))
            hi = support_function(post, indicator)
            lo = -support_function(post, tuple(-x for x in indicator))
            if hi != lo:
                raise NonConstantCellMass(
                    f"posterior for {y!r} has varying mass on cell {cell}")
            tau_y.append(hi)
        reduced_forms.append(ReducedForm(partition, tuple(tau_y)))
    for ci in range(len(partition.cells)):
        total = sum((w * rf.tau[ci] for w, rf in
                     zip(structure.weights, reduced_forms)), ZERO)
        if total != pp.reduced.tau[ci]:
            raise AssertionError("plausible structure must average reduced "
                                 "forms back to the prior's tau")
    for y, post, rf in zip(structure.signals, structure.posteriors, reduced_forms):
        if not equals(post, minkowski_mix(rf.tau, pp.cell_sets)):
            raise CellMismatch(
                f"posterior for {y!r} is not a reduced-form mixture of the "
                "prior's cell sets")
    return reduced_forms


def construct_experiment(structure: InformationStructure,
                         pp: PartitionedPrior) -> Experiment:
    """The Bayesian reconstruction of an experiment inducing the structure.

    Requires a maximal prior; builds the cell-measurable likelihood
    pi(y | cell) = weight(y) tau_y(cell) / tau(cell) and verifies the round
    trip: the induced structure reproduces the weights and posterior sets.
    Decomposition runs before the maximality gate so that a structure
    splitting a non-extreme cell reports CellMismatch, the reason no
    consistent experiment can induce it.
    """
    reduced_forms = decompose_reduced_form(structure, pp)
    verdict = check_maximal(pp)
    if verdict.verdict != MAXIMAL_YES:
        raise NotMaximal(f"prior maximality is {verdict.verdict!r}")
    partition = pp.reduced.partition
    rows = []
    for s in range(len(pp.assembled.states)):
        ci = partition.cell_of[s]
        rows.append(tuple(
            w * rf.tau[ci] / pp.reduced.tau[ci]
            for w, rf in zip(structure.weights, reduced_forms)))
    pi = Experiment(pp.assembled.states, structure.signals, tuple(rows))
    induced = induced_structure(pi, pp.assembled)
    if induced.weights != structure.weights or any(
            not equals(a, b)
            for a, b in zip(induced.posteriors, structure.posteriors)):
        raise AssertionError("reconstructed experiment failed to reproduce "
                             "the structure")
    return pi


def structures_equivalent(a: InformationStructure, b: InformationStructure) -> bool:
    """Equality up to signal relabeling: a weight-preserving matching of
    equal posterior sets."""
    if a.states != b.states or len(a.signals) != len(b.signals):
        return False
    unmatched = list(range(len(b.signals)))
    for w, post in zip(a.weights, a.posteriors):
        hit = None
        for j in unmatched:
            if b.weights[j] == w and equals(b.posteriors[j], post):
                hit = j
                break
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


@dataclass(frozen=True)
class JointCredalSet:
    """Credal set over the product grid of states and signals; vertex
    coordinates are state-major."""

    states: StateSpace
    signals: tuple[str, ...]
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        width = len(self.states) * len(self.signals)
        for v in self.vertices:
            if len(v) != width:
                raise ValueError("joint vertex has wrong width")
            if any(x < 0 for x in v) or sum(v) != 1:
                raise ValueError("joint vertex is not a probability vector")

    def entry(self, v: Vector, s: int, y: int) -> Fraction:
        return v[s * len(self.signals) + y]

    def marginal_states(self) -> CredalSet:
        """Sum out the signal; images of vertices span the marginal set."""
        k = len(self.signals)
        pts = [tuple(sum(v[s * k:(s + 1) * k], ZERO)
                     for s in range(len(self.states)))
               for v in self.vertices]
        return CredalSet(self.states, tuple(_reduce_hull(pts)))

    def marginal_signals(self) -> CredalSet:
        """Sum out the state, as a credal set over the signal alphabet."""
        k = len(self.signals)
        pts = [tuple(sum((v[s * k + y] for s in range(len(self.states))), ZERO)
                     for y in range(k))
               for v in self.vertices]
        return CredalSet(StateSpace(self.signals), tuple(_reduce_hull(pts)))


def joint_ex_ante(c: CredalSet, pi: Experiment) -> JointCredalSet:
    """Joint beliefs built from one prior and the likelihood: rectangular
    with respect to states."""
    if pi.states != c.states:
        raise DimensionMismatch("experiment and credal set disagree on states")
    k = len(pi.signals)
    pts = [tuple(v[s] * pi.rows[s][y]
                 for s in range(len(c.states)) for y in range(k))
           for v in c.vertices]
    return JointCredalSet(c.states, pi.signals, tuple(_reduce_hull(pts)))


def joint_interim(structure: InformationStructure,
                  max_vertices: int = 4096) -> JointCredalSet:
    """Joint beliefs from independent per-signal posterior selections:
    rectangular with respect to signals."""
    counts = 1
    for p in structure.posteriors:
        counts *= len(p.vertices)
    if counts > max_vertices:
        raise SupportTooLarge(
            f"{counts} vertex selections exceed the cap of {max_vertices}")
    k = len(structure.signals)
    n = len(structure.states)
    pts = []
    for choice in itertools.product(*(p.vertices for p in structure.posteriors)):
        pts.append(tuple(structure.weights[y] * choice[y][s]
                         for s in range(n) for y in range(k)))
    return JointCredalSet(structure.states, structure.signals,
                          tuple(_reduce_hull(pts)))
