"""Exact rational linear algebra and a simplex-based LP solver.

All arithmetic runs on :class:`fractions.Fraction`; nothing in the package
ever rounds.  The solver uses Bland's rule, so it terminates on every input
and produces the same result regardless of degeneracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MalformedProgram

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction]], cols: Optional[int] = None) -> "Matrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), cols, flat)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m: Matrix) -> int:
    """Exact rank."""
    return len(_rref(m.row_lists())[1])


def nullspace_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} from the reduced echelon form.

    One basis vector per free column, in increasing column order, so the
    output is deterministic.
    """
    rref, pivots = _rref(m.row_lists())
    n = m.cols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -rref[i][f]
        basis.append(tuple(x))
    return basis


def solve_square_system(rows: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
    """Solve a square system exactly; None when singular."""
    n = len(rhs)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = _rref(aug)
    if len(pivots) < n or any(p >= n for p in pivots):
        return None
    sol = [ZERO] * n
    for i, p in enumerate(pivots):
        sol[p] = rref[i][n]
    return tuple(sol)


@dataclass(frozen=True)
class LinearProgram:
    """max/min c.x subject to eq_matrix x = eq_rhs, ub_matrix x <= ub_rhs.

    ``lower_bounds`` gives a per-variable lower bound; a None entry means
    the variable is free.  When the field itself is None every variable is
    bounded below by zero.
    """

    objective: tuple[Fraction, ...]
    sense: str = "max"
    eq_matrix: tuple[tuple[Fraction, ...], ...] = ()
    eq_rhs: tuple[Fraction, ...] = ()
    ub_matrix: tuple[tuple[Fraction, ...], ...] = ()
    ub_rhs: tuple[Fraction, ...] = ()
    lower_bounds: Optional[tuple[Optional[Fraction], ...]] = None


@dataclass(frozen=True)
class LPResult:
    status: str
    solution: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _validate(lp: LinearProgram) -> int:
    n = len(lp.objective)
    if n == 0:
        raise MalformedProgram("no variables")
    if lp.sense not in ("max", "min"):
        raise MalformedProgram(f"unknown sense {lp.sense!r}")
    if len(lp.eq_matrix) != len(lp.eq_rhs):
        raise MalformedProgram("equality rows and rhs differ in length")
    if len(lp.ub_matrix) != len(lp.ub_rhs):
        raise MalformedProgram("inequality rows and rhs differ in length")
    for row in lp.eq_matrix:
        if len(row) != n:
            raise MalformedProgram("equality row width does not match objective")
    for row in lp.ub_matrix:
        if len(row) != n:
            raise MalformedProgram("inequality row width does not match objective")
    if lp.lower_bounds is not None and len(lp.lower_bounds) != n:
        raise MalformedProgram("lower_bounds length does not match objective")
    return n


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    """Pivot tableau row r (1-based constraint row) on column c."""
    pv = tab[r][c]
    tab[r] = [x / pv for x in tab[r]]
    prow = tab[r]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
    basis[r - 1] = c


def _bland(tab: list[list[Fraction]], basis: list[int], allowed: int) -> str:
    """Run simplex iterations under Bland's rule on a tableau in canonical
    form (row 0 holds reduced costs for a minimisation, rows >=1 have
    non-negative rhs).  ``allowed`` bounds the columns eligible to enter.
    Returns OPTIMAL or UNBOUNDED."""
    last = len(tab[0]) - 1
    while True:
        enter = -1
        cost = tab[0]
        for j in range(allowed):
            if cost[j] < 0:
                enter = j
                break
        if enter == -1:
            return OPTIMAL
        leave = -1
        best_ratio = None
        for i in range(1, len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][last] / a
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i - 1] < basis[leave - 1]):
                    best_ratio = ratio
                    leave = i
        if leave == -1:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact two-phase simplex with Bland's rule.

    Deterministic: identical inputs produce identical tableaus and pivots.
    """
    n = _validate(lp)
    bounds = lp.lower_bounds if lp.lower_bounds is not None else (ZERO,) * n

    # Standard-form columns: shifted variable z = x - l for bounded x,
    # a (plus, minus) pair for free x.
    col_of: list[tuple] = []
    ncols = 0
    for lb in bounds:
        if lb is None:
            col_of.append(("split", ncols, ncols + 1))
            ncols += 2
        else:
            col_of.append(("shift", ncols, Fraction(lb)))
            ncols += 1
    nslack = len(lp.ub_matrix)
    total = ncols + nslack

    def std_row(row: Sequence[Fraction], rhs: Fraction, slack: int) -> tuple[list[Fraction], Fraction]:
        out = [ZERO] * total
        b = Fraction(rhs)
        for x_i, a in enumerate(row):
            if a == 0:
                continue
            kind = col_of[x_i]
            if kind[0] == "shift":
                out[kind[1]] += a
                b -= a * kind[2]
            else:
                out[kind[1]] += a
                out[kind[2]] -= a
        if slack >= 0:
            out[ncols + slack] = ONE
        return out, b

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, b in zip(lp.eq_matrix, lp.eq_rhs):
        r, bb = std_row(row, b, -1)
        rows.append(r)
        rhs.append(bb)
    for k, (row, b) in enumerate(zip(lp.ub_matrix, lp.ub_rhs)):
        r, bb = std_row(row, b, k)
        rows.append(r)
        rhs.append(bb)
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    # Objective in minimisation form over standard columns.
    c_min = [ZERO] * total
    sign = -1 if lp.sense == "max" else 1
    for x_i, a in enumerate(lp.objective):
        if a == 0:
            continue
        kind = col_of[x_i]
        if kind[0] == "shift":
            c_min[kind[1]] += sign * a
        else:
            c_min[kind[1]] += sign * a
            c_min[kind[2]] -= sign * a

    m = len(rows)
    # Phase 1: artificial columns total..total+m-1.
    width = total + m + 1
    tab: list[list[Fraction]] = [[ZERO] * width]
    for i in range(m):
        row = rows[i] + [ZERO] * m + [rhs[i]]
        row[total + i] = ONE
        tab.append(row)
    basis = [total + i for i in range(m)]
    # Phase-1 reduced costs: minimize sum of artificials, priced out.
    cost = [ZERO] * width
    for i in range(m):
        for j in range(total):
            cost[j] -= tab[i + 1][j]
        cost[width - 1] -= tab[i + 1][width - 1]
    tab[0] = cost

    if _bland(tab, basis, total) != OPTIMAL:
        raise AssertionError("phase 1 cannot be unbounded")
    if -tab[0][width - 1] > 0:
        return LPResult(INFEASIBLE)

    # Drive remaining artificials out of the basis; drop redundant rows.
    drop: list[int] = []
    for i in range(1, m + 1):
        if basis[i - 1] >= total:
            enter = -1
            for j in range(total):
                if tab[i][j] != 0:
                    enter = j
                    break
            if enter == -1:
                drop.append(i)
            else:
                _pivot(tab, basis, i, enter)
    if drop:
        tab = [tab[0]] + [tab[i] for i in range(1, m + 1) if i not in drop]
        basis = [b for i, b in enumerate(basis) if i + 1 not in drop]
        m = len(basis)

    # Phase 2: restore the real objective on the surviving rows, without
    # the artificial columns.
    tab = [row[:total] + [row[width - 1]] for row in tab]
    last = total
    cost = c_min + [ZERO]
    for i in range(m):
        bj = basis[i]
        if cost[bj] != 0:
            f = cost[bj]
            cost = [a - f * b for a, b in zip(cost, tab[i + 1])]
    tab[0] = cost

    if _bland(tab, basis, total) == UNBOUNDED:
        return LPResult(UNBOUNDED)

    z = [ZERO] * total
    for i in range(m):
        z[basis[i]] = tab[i + 1][last]
    solution = []
    for kind in col_of:
        if kind[0] == "shift":
            solution.append(z[kind[1]] + kind[2])
        else:
            solution.append(z[kind[1]] - z[kind[2]])
    value = sum((a * x for a, x in zip(lp.objective, solution)), ZERO)
    return LPResult(OPTIMAL, tuple(solution), value)
