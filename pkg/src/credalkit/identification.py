"""Partially identified prior sets: assembly from reduced forms, partition
recovery, compatibility, and maximality checking.

A prior set is partially identified by (tau, partition) when it equals the
tau-weighted Minkowski mixture of full-dimensional cell sets, one per
partition cell.  Recovery inverts this: the identifying partition falls out
of the nullspace of the vertex-difference span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (DimensionDeficient, NonConstantCellMass,
                     SupportViolation)
from .geometry import (EXTREME, NOT_EXTREME, CredalSet, ExtremenessResult,
                       StateSpace, condition_on_event, dim, equals,
                       full_subsimplex, is_extreme_in_K, minkowski_mix)
from .numerics import ZERO, Matrix, nullspace_basis


@dataclass(frozen=True)
class Partition:
    """Disjoint cover of the state space; cells ordered by smallest member
    index, members sorted."""

    states: StateSpace
    cells: tuple[tuple[int, ...], ...]
    cell_of: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.states)
        seen = [-1] * n
        for ci, cell in enumerate(self.cells):
            if not cell:
                raise ValueError("empty cell")
            if tuple(sorted(cell)) != cell:
                raise ValueError("cell members must be sorted")
            for s in cell:
                if not 0 <= s < n or seen[s] != -1:
                    raise ValueError("cells must partition the state space")
                seen[s] = ci
        if any(x == -1 for x in seen):
            raise ValueError("cells must cover the state space")
        if list(self.cells) != sorted(self.cells, key=lambda c: c[0]):
            raise ValueError("cells must be ordered by smallest member")
        object.__setattr__(self, "cell_of", tuple(seen))

    @classmethod
    def from_labels(cls, states: StateSpace, cells: Sequence[Sequence[str]]) -> "Partition":
        idx = [tuple(sorted(states.index(s) for s in cell)) for cell in cells]
        return cls(states, tuple(sorted(idx, key=lambda c: c[0])))

    def cell_labels(self) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(self.states.labels[s] for s in cell) for cell in self.cells)

    def is_trivial(self) -> bool:
        return len(self.cells) == 1

    def is_discrete(self) -> bool:
        return len(self.cells) == len(self.states)


def trivial_partition(states: StateSpace) -> Partition:
    return Partition(states, (tuple(range(len(states))),))


def discrete_partition(states: StateSpace) -> Partition:
    return Partition(states, tuple((s,) for s in range(len(states))))


@dataclass(frozen=True)
class ReducedForm:
    """Belief over partition cells.

    Priors must have full support (enforced where a prior is required, in
    :func:`assemble`); Bayes updates of a reduced form may legitimately put
    zero mass on cells, so the type itself only checks nonnegativity and
    normalisation.
    """

    partition: Partition
    tau: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.tau) != len(self.partition.cells):
            raise ValueError("one weight per cell required")
        if any(t < 0 for t in self.tau) or sum(self.tau) != 1:
            raise ValueError("tau must be a probability vector over cells")

    def has_full_support(self) -> bool:
        return all(t > 0 for t in self.tau)


@dataclass(frozen=True)
class PartitionedPrior:
    """A validated decomposition: reduced form, cell sets, and their
    assembled Minkowski mixture.  Build through :func:`assemble`."""

    reduced: ReducedForm
    cell_sets: tuple[CredalSet, ...]
    assembled: CredalSet

    def is_non_trivial(self) -> bool:
        return not self.reduced.partition.is_trivial()


def assemble(reduced: ReducedForm, cell_sets: Sequence[CredalSet]) -> PartitionedPrior:
    """Validate and assemble a partially identified prior.

    Each cell set must be supported on its cell and have the cell's full
    dimension; the reduced-form prior must have full support.
    """
    partition = reduced.partition
    if len(cell_sets) != len(partition.cells):
        raise SupportViolation("one cell set per cell required")
    if not reduced.has_full_support():
        raise SupportViolation("reduced-form prior must have full support; "
                               "shrink the state space first")
    for cell, cs in zip(partition.cells, cell_sets):
        if cs.states != partition.states:
            raise SupportViolation("cell set lives on a different state space")
        members = set(cell)
        for v in cs.vertices:
            if any(v[s] != 0 for s in range(len(v)) if s not in members):
                raise SupportViolation(
                    f"cell set puts mass outside cell {cell}")
        if dim(cs) != len(cell) - 1:
            raise DimensionDeficient(
                f"cell set on {cell} has dimension {dim(cs)} < {len(cell) - 1}")
    assembled = minkowski_mix(reduced.tau, tuple(cell_sets))
    return PartitionedPrior(reduced, tuple(cell_sets), assembled)


def full_ambiguity(reduced: ReducedForm) -> PartitionedPrior:
    """The largest prior compatible with the reduced form: every cell set
    is the full sub-simplex on its cell."""
    cells = tuple(full_subsimplex(reduced.partition.states, cell)
                  for cell in reduced.partition.cells)
    return assemble(reduced, cells)


def compatibility_tau(c: CredalSet, partition: Partition) -> ReducedForm:
    """The constant per-cell masses of c, when they exist."""
    taus = []
    for cell in partition.cells:
        masses = [sum((v[s] for s in cell), ZERO) for v in c.vertices]
        if any(m != masses[0] for m in masses):
            raise NonConstantCellMass(
                f"mass on cell {cell} varies across vertices")
        taus.append(masses[0])
    return ReducedForm(partition, tuple(taus))


def recover_partition(c: CredalSet) -> Partition:
    """Identifying partition of a credal set.

    States are grouped by the equivalence relation "every linear functional
    constant on c takes the same value on both states": compute the span of
    vertex differences, a nullspace basis of it, and compare basis columns.
    """
    n = len(c.states)
    v0 = c.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in c.vertices[1:]]
    basis = nullspace_basis(Matrix.from_rows(diffs, cols=n))
    signatures = [tuple(b[s] for b in basis) for s in range(n)]
    groups: dict[tuple, list[int]] = {}
    for s in range(n):
        groups.setdefault(signatures[s], []).append(s)
    cells = sorted((tuple(sorted(g)) for g in groups.values()),
                   key=lambda cell: cell[0])
    return Partition(c.states, tuple(cells))


@dataclass(frozen=True)
class IdentificationReport:
    """Outcome of check_partially_identified, with the failing clause when
    the set does not decompose."""

    decomposition: Optional[PartitionedPrior]
    non_trivial: Optional[bool] = None
    failure: Optional[str] = None


def check_partially_identified(c: CredalSet) -> IdentificationReport:
    """Recover the partition, extract tau, condition on each cell, and
    verify the full decomposition reassembles the set exactly."""
    partition = recover_partition(c)
    try:
        reduced = compatibility_tau(c, partition)
    except NonConstantCellMass as exc:
        return IdentificationReport(None, None, f"compatibility: {exc}")
    if not reduced.has_full_support():
        return IdentificationReport(
            None, None, "support: a recovered cell has zero mass")
    cell_sets = []
    labels = c.states.labels
    for cell in partition.cells:
        cell_sets.append(condition_on_event(c, [labels[s] for s in cell]))
    for cell, cs in zip(partition.cells, cell_sets):
        if dim(cs) != len(cell) - 1:
            return IdentificationReport(
                None, None,
                f"dimension: conditional on {cell} has dimension "
                f"{dim(cs)} < {len(cell) - 1}")
    try:
        pp = assemble(reduced, tuple(cell_sets))
    except (SupportViolation, DimensionDeficient) as exc:
        return IdentificationReport(None, None, f"assembly: {exc}")
    if not equals(pp.assembled, c):
        return IdentificationReport(
            None, None, "reassembly: mixture of conditionals differs from the set")
    return IdentificationReport(pp, not partition.is_trivial(), None)


MAXIMAL_YES = "yes"
MAXIMAL_NO = "no"
MAXIMAL_UNKNOWN = "unknown"


@dataclass(frozen=True)
class MaximalityResult:
    verdict: str
    witness_cell: Optional[int] = None
    witness: Optional[tuple[CredalSet, CredalSet]] = None


def check_maximal(pp: PartitionedPrior) -> MaximalityResult:
    """Is every cell set Minkowski-extreme?  No carries the first failing
    cell and its splitting witness; Unknown when some cell could not be
    classified and none failed."""
    unknown = False
    for ci, cs in enumerate(pp.cell_sets):
        result: ExtremenessResult = is_extreme_in_K(cs)
        if result.verdict == NOT_EXTREME:
            return MaximalityResult(MAXIMAL_NO, ci, result.witness)
        if result.verdict != EXTREME:
            unknown = True
    return MaximalityResult(MAXIMAL_UNKNOWN if unknown else MAXIMAL_YES)
