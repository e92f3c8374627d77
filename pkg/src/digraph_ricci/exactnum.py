"""Exact rational linear algebra and linear programming.

All arithmetic goes through :class:`fractions.Fraction`; nothing here ever
rounds.  The simplex solver is a dense two-phase tableau method with Bland's
anti-cycling rule, which is plenty for the desk-scale programs the curvature
code produces (tens of variables, at most a few hundred rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, Infeasible, NonUnique, NoSolution, Unbounded

Rational = Fraction

LE, EQ, GE = "<=", "=", ">="
_FLIP = {LE: GE, GE: LE, EQ: EQ}


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and decimal / ``p/q`` strings to a Fraction.

    Floats are rejected: silently converting one would import its binary
    rounding error into exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise DomainError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def solve_linear_system(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` exactly by Gauss-Jordan elimination.

    ``A`` may have more rows than columns as long as the system is
    consistent.  Raises :class:`NoSolution` for an inconsistent system and
    :class:`NonUnique` when the columns are linearly dependent.
    """
    rows = [[as_rational(v) for v in row] + [as_rational(rhs)] for row, rhs in zip(A, b)]
    if len(rows) != len(b) or len(A) != len(b):
        raise DomainError("A and b disagree on the number of rows")
    if not rows:
        return []
    ncols = len(rows[0]) - 1
    if any(len(r) != ncols + 1 for r in rows):
        raise DomainError("ragged matrix")

    pivot_row = 0
    pivot_cols: list[int] = []
    for col in range(ncols):
        sel = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        prow = rows[pivot_row]
        inv = 1 / prow[col]
        prow[:] = [v * inv for v in prow]
        for i, row in enumerate(rows):
            if i != pivot_row and row[col] != 0:
                f = row[col]
                row[:] = [a - f * p for a, p in zip(row, prow)]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break

    for row in rows[pivot_row:]:
        if row[-1] != 0:
            raise NoSolution("inconsistent linear system")
    if len(pivot_cols) < ncols:
        raise NonUnique(f"rank {len(pivot_cols)} < {ncols} unknowns")
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivot_cols):
        x[col] = rows[i][-1]
    return x


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise DomainError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", as_rational(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` c·x subject to the constraints and ``x >= 0`` componentwise.

    Free variables are not supported directly; callers shift them onto a
    nonnegative range first (every program in this package has natural
    lower bounds).
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    sense: str = "minimize"

    def __post_init__(self):
        if self.sense not in ("minimize", "maximize"):
            raise DomainError(f"unknown sense {self.sense!r}")
        obj = tuple(as_rational(c) for c in self.objective)
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        for c in cons:
            if len(c.coeffs) != len(obj):
                raise DomainError("constraint dimension differs from objective dimension")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", cons)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if any(v < 0 for v in x):
            return False
        for c in self.constraints:
            lhs = sum((a * v for a, v in zip(c.coeffs, x)), Fraction(0))
            if c.relation == LE and lhs > c.rhs:
                return False
            if c.relation == GE and lhs < c.rhs:
                return False
            if c.relation == EQ and lhs != c.rhs:
                return False
        return True


@dataclass(frozen=True)
class LPResult:
    """Optimal value, a primal optimizer, and one optimal dual vector.

    ``dual`` has one entry per constraint and satisfies
    ``sum(dual[i] * rhs[i]) == optimum`` exactly.
    """

    optimum: Fraction
    witness: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        prow = [v * inv if v else v for v in prow]
        rows[r] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = obj[c]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]


def _run_simplex(rows, obj, basis, allowed: list[bool]) -> None:
    """Bland's rule: lowest-index entering column, lowest-index leaving basic."""
    width = len(obj) - 1
    while True:
        enter = next((j for j in range(width) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective unbounded on the feasible region")
        leave = best[1]
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter


def solve_lp(lp: LinearProgram) -> LPResult:
    """Solve ``lp`` exactly with the two-phase simplex method.

    Raises :class:`Infeasible` or :class:`Unbounded` as appropriate.
    """
    n = lp.n_vars
    m = len(lp.constraints)
    cost = list(lp.objective) if lp.sense == "minimize" else [-c for c in lp.objective]

    # Normalize every row to a nonnegative right-hand side.
    signs, rels, A, b = [], [], [], []
    for con in lp.constraints:
        s = -1 if con.rhs < 0 else 1
        signs.append(s)
        rels.append(con.relation if s == 1 else _FLIP[con.relation])
        A.append([s * a for a in con.coeffs])
        b.append(s * con.rhs)

    n_slack = sum(1 for r in rels if r != EQ)
    n_art = sum(1 for r in rels if r != LE)
    width = n + n_slack + n_art
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    unit_col: list[int] = []
    is_art = [False] * width
    s_idx, a_idx = n, n + n_slack
    zero = Fraction(0)
    for i in range(m):
        row = A[i] + [zero] * (n_slack + n_art) + [b[i]]
        if rels[i] == LE:
            row[s_idx] = Fraction(1)
            basis.append(s_idx)
            unit_col.append(s_idx)
            s_idx += 1
        else:
            if rels[i] == GE:
                row[s_idx] = Fraction(-1)
                s_idx += 1
            row[a_idx] = Fraction(1)
            is_art[a_idx] = True
            basis.append(a_idx)
            unit_col.append(a_idx)
            a_idx += 1
        rows.append(row)

    if n_art:
        obj = [zero] * (width + 1)
        for i in range(m):
            if is_art[basis[i]]:
                for j in range(width):
                    v = rows[i][j]
                    if v and not is_art[j]:
                        obj[j] -= v
                obj[width] -= rows[i][width]
        _run_simplex(rows, obj, basis, [True] * width)
        if obj[width] != 0:
            raise Infeasible("no point satisfies every constraint")
        # Drive zero-level artificials out of the basis where possible; rows
        # where that fails are redundant and stay inert through phase two.
        for i in range(m):
            if is_art[basis[i]]:
                col = next((j for j in range(width) if not is_art[j] and rows[i][j] != 0), None)
                if col is not None:
                    _pivot(rows, obj, i, col)
                    basis[i] = col

    full_cost = cost + [zero] * (width - n)
    obj = full_cost + [zero]
    for i in range(m):
        cb = full_cost[basis[i]]
        if cb:
            for j, v in enumerate(rows[i]):
                if v:
                    obj[j] -= cb * v
    _run_simplex(rows, obj, basis, [not a for a in is_art])

    x = [zero] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    optimum = lp.value(x)
    dual = []
    for i in range(m):
        y = -obj[unit_col[i]] * signs[i]
        dual.append(y if lp.sense == "minimize" else -y)
    return LPResult(optimum=optimum, witness=tuple(x), dual=tuple(dual))


def make_lp(objective: Iterable, constraints: Iterable, sense: str = "minimize") -> LinearProgram:
    """Convenience constructor taking ``(coeffs, relation, rhs)`` triples."""
    return LinearProgram(tuple(objective), tuple(Constraint(tuple(c), r, h) for c, r, h in constraints), sense)
