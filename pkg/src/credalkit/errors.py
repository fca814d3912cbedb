"""Exception types shared across the package.

Every domain failure raises a subclass of :class:`CredalError`; malformed
input files raise :class:`MalformedInput`.  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""


class CredalError(Exception):
    """Base class for domain errors."""


# --- numerics ---------------------------------------------------------------

class MalformedProgram(CredalError):
    """Linear program dimensions do not agree."""


# --- geometry ---------------------------------------------------------------

class EmptyInput(CredalError):
    """A credal set needs at least one point."""


class NotInSimplex(CredalError):
    """A point is not a probability vector."""


class DimensionMismatch(CredalError):
    """Vector or state-space dimensions do not agree."""


class WeightMismatch(CredalError):
    """Mixture weights are invalid or do not match the number of sets."""


class ZeroMassEvent(CredalError):
    """Conditioning event has probability zero."""


class NonConstantMass(CredalError):
    """Event mass varies across the vertices of a credal set."""


# --- identification ---------------------------------------------------------

class SupportViolation(CredalError):
    """A cell set puts mass outside its cell, or a reduced-form prior lacks
    full support."""


class DimensionDeficient(CredalError):
    """A cell set has lower dimension than its cell's sub-simplex."""


class NonConstantCellMass(CredalError):
    """Cell mass varies across vertices: the set is not compatible with the
    partition."""


# --- experiments ------------------------------------------------------------

class InconsistentExperiment(CredalError):
    """The experiment's marginal distribution depends on the prior chosen
    from the credal set."""


class ZeroProbabilitySignal(CredalError):
    """Every prior in the set assigns probability zero to the signal."""


class FullDimensional(CredalError):
    """No non-trivial consistent experiment exists for a full-dimensional
    prior set."""


class SignalMismatch(CredalError):
    """Kernel input signals do not match the experiment's signals."""


# --- information structures -------------------------------------------------

class NotPlausible(CredalError):
    """The weighted Minkowski mixture of the posteriors does not reproduce
    the prior set."""


class CellMismatch(CredalError):
    """A posterior set is not a reduced-form mixture of the prior's cell
    sets."""


class SupportTooLarge(CredalError):
    """Vertex-product enumeration exceeds the configured cap."""


class NotMaximal(CredalError):
    """The prior's cell sets are not all extreme (or maximality is
    undecided)."""


# --- decisions --------------------------------------------------------------

class IncompleteRule(CredalError):
    """A decision rule does not cover every signal."""


class EnumerationTooLarge(CredalError):
    """Rule enumeration exceeds the configured cap."""


# --- persuasion -------------------------------------------------------------

class OutOfRange(CredalError):
    """A game parameter is outside its admissible range."""


# --- input files ------------------------------------------------------------

class MalformedInput(Exception):
    """A problem file fails to parse; the message points at the failing
    JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
