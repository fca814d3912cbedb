"""Maxmin valuation of actions and experiments, Blackwell comparison, and
the three robust decision criteria over sample-contingent rules.

Suprema of linear objectives over a credal set are always evaluated at the
vertices; tie-breaking is lexicographic in declared action and signal order
so results are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (DimensionMismatch, EnumerationTooLarge, IncompleteRule)
from .geometry import CredalSet, StateSpace
from .aumann import induced_structure
from .experiments import Experiment, is_garbling_of, update
from .numerics import ONE, OPTIMAL, ZERO, LinearProgram, solve_lp


@dataclass(frozen=True)
class UtilityTable:
    """Payoff u(action, state), one row of state payoffs per action."""

    states: StateSpace
    actions: tuple[str, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.actions or len(set(self.actions)) != len(self.actions):
            raise ValueError("actions must be nonempty and distinct")
        if len(self.values) != len(self.actions):
            raise ValueError("one payoff row per action required")
        if any(len(r) != len(self.states) for r in self.values):
            raise ValueError("payoff row width must match the state count")

    def expected(self, a: int, p: Sequence[Fraction]) -> Fraction:
        return sum((u * x for u, x in zip(self.values[a], p)), ZERO)


@dataclass(frozen=True)
class LossTable:
    """Loss L(state, action), stored as one row of state losses per
    action."""

    states: StateSpace
    actions: tuple[str, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.actions or len(set(self.actions)) != len(self.actions):
            raise ValueError("actions must be nonempty and distinct")
        if len(self.values) != len(self.actions):
            raise ValueError("one loss row per action required")
        if any(len(r) != len(self.states) for r in self.values):
            raise ValueError("loss row width must match the state count")

    def loss(self, s: int, a: int) -> Fraction:
        return self.values[a][s]

    def expected(self, a: int, p: Sequence[Fraction]) -> Fraction:
        return sum((l * x for l, x in zip(self.values[a], p)), ZERO)


def maxmin_value(c: CredalSet, u: UtilityTable) -> tuple[Fraction, str]:
    """Best guaranteed expected utility over pure actions, with the first
    maximising action in declared order."""
    if u.states != c.states:
        raise DimensionMismatch("utility table and credal set disagree on states")
    best = None
    best_a = None
    for a in range(len(u.actions)):
        worst = min(u.expected(a, v) for v in c.vertices)
        if best is None or worst > best:
            best, best_a = worst, a
    return best, u.actions[best_a]


def maxmin_value_mixed(c: CredalSet, u: UtilityTable) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Best guaranteed expected utility over mixed actions: the zero-sum
    game value against nature choosing a vertex, solved exactly."""
    if u.states != c.states:
        raise DimensionMismatch("utility table and credal set disagree on states")
    na = len(u.actions)
    # variables: sigma_1..sigma_na, t; maximize t
    # s.t. sum_a sigma_a E_v[u(a,.)] >= t for every vertex v; sum sigma = 1
    ub_rows = []
    ub_rhs = []
    for v in c.vertices:
        row = tuple(-u.expected(a, v) for a in range(na)) + (ONE,)
        ub_rows.append(row)
        ub_rhs.append(ZERO)
    lp = LinearProgram(
        objective=(ZERO,) * na + (ONE,), sense="max",
        eq_matrix=((ONE,) * na + (ZERO,),), eq_rhs=(ONE,),
        ub_matrix=tuple(ub_rows), ub_rhs=tuple(ub_rhs),
        lower_bounds=(ZERO,) * na + (None,))
    res = solve_lp(lp)
    if res.status != OPTIMAL:
        raise AssertionError("zero-sum value LP must be solvable")
    return res.value, res.solution[:na]


def value_pure(pi: Experiment, c: CredalSet, u: UtilityTable) -> Fraction:
    """Expected maxmin value of a consistent experiment under pure
    actions."""
    structure = induced_structure(pi, c)
    return sum((w * maxmin_value(p, u)[0]
                for w, p in zip(structure.weights, structure.posteriors)),
               ZERO)


def value_mixed(pi: Experiment, c: CredalSet, u: UtilityTable) -> Fraction:
    """Expected maxmin value of a consistent experiment when hedging over
    mixed actions is allowed."""
    structure = induced_structure(pi, c)
    return sum((w * maxmin_value_mixed(p, u)[0]
                for w, p in zip(structure.weights, structure.posteriors)),
               ZERO)


def is_more_informative(pi1: Experiment, pi2: Experiment) -> bool:
    """Blackwell order: pi1 dominates when pi2 is a garbling of pi1."""
    return is_garbling_of(pi2, pi1) is not None


def _rule_actions(pi: Experiment, L: LossTable,
                  rule: Mapping[str, str]) -> list[int]:
    out = []
    for y in pi.signals:
        if y not in rule:
            raise IncompleteRule(f"rule does not cover signal {y!r}")
        out.append(L.actions.index(rule[y]))
    return out


def risk(pi: Experiment, L: LossTable, rule: Mapping[str, str]) -> tuple[Fraction, ...]:
    """Per-state expected loss of a decision rule."""
    acts = _rule_actions(pi, L, rule)
    return tuple(
        sum((pi.rows[s][y] * L.loss(s, acts[y])
             for y in range(len(pi.signals))), ZERO)
        for s in range(len(pi.states)))


def bayes_risk(p0: Sequence[Fraction], pi: Experiment, L: LossTable,
               rule: Mapping[str, str]) -> Fraction:
    """Prior-weighted risk."""
    r = risk(pi, L, rule)
    if len(p0) != len(r):
        raise DimensionMismatch("prior length does not match the state count")
    return sum((a * b for a, b in zip(p0, r)), ZERO)


def gamma_minimax(c: CredalSet, pi: Experiment, L: LossTable,
                  max_rules: int = 4096) -> tuple[dict[str, str], Fraction]:
    """Ex-ante robust rule: minimise the worst-case Bayes risk over the
    prior set, by exhaustive enumeration of pure rules."""
    if L.states != c.states or pi.states != c.states:
        raise DimensionMismatch("states disagree")
    na, ny = len(L.actions), len(pi.signals)
    if na ** ny > max_rules:
        raise EnumerationTooLarge(f"{na}^{ny} rules exceed the cap {max_rules}")
    best = None
    best_rule = None
    for choice in itertools.product(range(na), repeat=ny):
        rule = {y: L.actions[a] for y, a in zip(pi.signals, choice)}
        worst = max(bayes_risk(v, pi, L, rule) for v in c.vertices)
        if best is None or worst < best:
            best, best_rule = worst, rule
    return best_rule, best


def conditional_gamma_minimax(c: CredalSet, pi: Experiment, L: LossTable,
                              y: str) -> tuple[str, Fraction]:
    """Interim robust action after observing a signal: minimise the
    worst-case posterior expected loss."""
    if L.states != c.states:
        raise DimensionMismatch("states disagree")
    post = update(pi, c, y)
    best = None
    best_a = None
    for a in range(len(L.actions)):
        worst = max(L.expected(a, v) for v in post.vertices)
        if best is None or worst < best:
            best, best_a = worst, a
    return L.actions[best_a], best


def gamma_star_minimax(c: CredalSet, pi: Experiment, L: LossTable) -> tuple[dict[str, str], Fraction]:
    """Time-consistent ex-ante robust rule: worst case over the
    signal-rectangular joint beliefs.

    The objective separates across signals, so the rule is assembled from
    the conditional robust action at every positive-marginal signal;
    zero-marginal signals get the first action.
    """
    structure = induced_structure(pi, c)  # enforces consistency
    rule: dict[str, str] = {}
    value = ZERO
    for y in pi.signals:
        if y in structure.signals:
            a, v = conditional_gamma_minimax(c, pi, L, y)
            rule[y] = a
            value += structure.weights[structure.signals.index(y)] * v
        else:
            rule[y] = L.actions[0]
    return rule, value
