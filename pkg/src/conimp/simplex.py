"""Revised simplex for ``max c^T x s.t. A x = b, x >= 0`` over exact rationals.

The solver never sees ``A`` as a whole.  It talks to a column oracle and
keeps only the basis, its inverse and the basic values, so the working set
is quadratic in the number of rows no matter how many columns exist.
Pricing streams the nonbasic columns one at a time.

Entering column: first index with positive reduced cost.  Leaving row:
minimum ratio, ties broken by the smallest basic column index (Bland), or
by the lexicographically smallest basic column when ``rule="lexicographic"``.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol

from conimp.numeric import ONE, ZERO, format_rational

DEFAULT_MAX_ITERATIONS = 10**6


class SimplexError(RuntimeError):
    pass


class SingularBasisError(SimplexError):
    pass


class InfeasibleStartError(SimplexError):
    pass


class IterationLimitError(SimplexError):
    pass


class ColumnOracle(Protocol):
    row_count: int
    column_count: int
    rhs: Sequence[Fraction]

    def entry(self, i: int, j: int) -> Fraction: ...

    def objective(self, j: int) -> Fraction: ...


def fetch_column(oracle: ColumnOracle, j: int) -> list[Fraction]:
    column = getattr(oracle, "column", None)
    if column is not None:
        return column(j)
    return [oracle.entry(i, j) for i in range(oracle.row_count)]


def invert(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse of a square matrix."""
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularBasisError("basis matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        if lead != 1:
            aug[col] = [v / lead for v in aug[col]]
        pivot_row = aug[col]
        for r in range(n):
            if r != col:
                factor = aug[r][col]
                if factor:
                    aug[r] = [a - factor * b for a, b in zip(aug[r], pivot_row)]
    return [row[n:] for row in aug]


def mat_vec(matrix: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * v for a, v in zip(row, vec) if a and v), ZERO) for row in matrix]


@dataclass
class SimplexState:
    basis: list[int]
    basis_inverse: list[list[Fraction]]
    basic_values: list[Fraction]
    iteration: int = 0

    def solution(self) -> dict[int, Fraction]:
        return {j: v for j, v in zip(self.basis, self.basic_values) if v}


class Status(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


@dataclass
class SolveOutcome:
    status: Status
    value: Fraction | None = None
    solution: dict[int, Fraction] = field(default_factory=dict)
    iterations: int = 0
    basis: list[int] = field(default_factory=list)


def basis_matrix(oracle: ColumnOracle, basis: Sequence[int]) -> list[list[Fraction]]:
    columns = [fetch_column(oracle, j) for j in basis]
    return [[col[i] for col in columns] for i in range(oracle.row_count)]


def make_state(oracle: ColumnOracle, basis: Sequence[int], iteration: int = 0) -> SimplexState:
    """Factor ``basis`` and compute ``x_B = B^-1 b``; the start must be feasible."""
    basis = list(basis)
    if len(basis) != oracle.row_count:
        raise SimplexError(f"basis has {len(basis)} columns, need {oracle.row_count}")
    if len(set(basis)) != len(basis):
        raise SimplexError("basis columns must be distinct")
    inverse = invert(basis_matrix(oracle, basis))
    values = mat_vec(inverse, oracle.rhs)
    if any(v < 0 for v in values):
        raise InfeasibleStartError("starting basis is not primal feasible")
    return SimplexState(basis, inverse, values, iteration)


def objective_value(oracle: ColumnOracle, state: SimplexState) -> Fraction:
    return sum((oracle.objective(j) * v for j, v in zip(state.basis, state.basic_values)), ZERO)


def duals(oracle: ColumnOracle, state: SimplexState) -> list[Fraction]:
    """``u = c_B^T B^-1``."""
    m = oracle.row_count
    c_b = [oracle.objective(j) for j in state.basis]
    return [
        sum((c_b[r] * state.basis_inverse[r][i] for r in range(m) if c_b[r]), ZERO)
        for i in range(m)
    ]


def reduced_cost(oracle: ColumnOracle, u: Sequence[Fraction], j: int) -> Fraction:
    col = fetch_column(oracle, j)
    return oracle.objective(j) - sum((ui * a for ui, a in zip(u, col) if ui and a), ZERO)


def price(oracle: ColumnOracle, state: SimplexState) -> int | None:
    """First nonbasic column with positive reduced cost, or ``None`` at an optimum."""
    u = duals(oracle, state)
    in_basis = set(state.basis)
    for j in range(oracle.column_count):
        if j in in_basis:
            continue
        if reduced_cost(oracle, u, j) > 0:
            return j
    return None


def ratio_test(oracle: ColumnOracle, state: SimplexState, k: int, rule: str = "bland") -> int | None:
    """Basis position leaving when column ``k`` enters; ``None`` means unbounded."""
    d = mat_vec(state.basis_inverse, fetch_column(oracle, k))
    best = None
    best_key = None
    for pos, (x, dk) in enumerate(zip(state.basic_values, d)):
        if dk <= 0:
            continue
        if best is None:
            best, best_key = pos, None
            continue
        # compare x/dk with x_best/d_best by cross-multiplication
        lhs = x * d[best]
        rhs = state.basic_values[best] * dk
        if lhs < rhs:
            best, best_key = pos, None
        elif lhs == rhs:
            if rule == "bland":
                if state.basis[pos] < state.basis[best]:
                    best = pos
            elif rule == "lexicographic":
                if best_key is None:
                    best_key = fetch_column(oracle, state.basis[best])
                key = fetch_column(oracle, state.basis[pos])
                if key < best_key:
                    best, best_key = pos, key
            else:
                raise ValueError(f"unknown pivot rule {rule!r}")
    return best


def pivot(oracle: ColumnOracle, state: SimplexState, k: int, s: int) -> SimplexState:
    """Replace the basic column at position ``s`` by column ``k``."""
    basis = list(state.basis)
    basis[s] = k
    try:
        inverse = invert(basis_matrix(oracle, basis))
    except SingularBasisError as exc:
        raise SimplexError(f"pivot on column {k} at position {s} gave a singular basis") from exc
    values = mat_vec(inverse, oracle.rhs)
    if any(v < 0 for v in values):
        raise SimplexError("pivot lost primal feasibility")
    return SimplexState(basis, inverse, values, state.iteration + 1)


def solve_max(
    oracle: ColumnOracle,
    basis: Sequence[int],
    *,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    rule: str = "bland",
    trace: Callable[[str], None] | None = None,
) -> SolveOutcome:
    """Run the revised simplex from a feasible ``basis`` until optimal or unbounded."""
    if rule not in ("bland", "lexicographic"):
        raise ValueError(f"unknown pivot rule {rule!r}")
    state = make_state(oracle, basis)
    while True:
        k = price(oracle, state)
        if k is None:
            return SolveOutcome(
                Status.OPTIMAL,
                objective_value(oracle, state),
                state.solution(),
                state.iteration,
                list(state.basis),
            )
        s = ratio_test(oracle, state, k, rule)
        if s is None:
            if trace:
                trace(f"iteration {state.iteration}: entering {k} unbounded")
            return SolveOutcome(Status.UNBOUNDED, iterations=state.iteration, basis=list(state.basis))
        if state.iteration >= max_iterations:
            raise IterationLimitError(f"no optimum after {max_iterations} pivots")
        leaving = state.basis[s]
        state = pivot(oracle, state, k, s)
        if trace:
            trace(
                f"iteration {state.iteration}: entering {k} leaving {leaving} "
                f"objective {format_rational(objective_value(oracle, state))}"
            )
