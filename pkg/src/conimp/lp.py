"""The implicit constraint system ``(A, -I) (x, y) = b`` of an entailment instance.

Rows come in pairs per rule ``k``: row ``2k`` bounds the support of the
premise, row ``2k+1`` the confidence.  Rows ``2m`` and ``2m+1`` force the
subset variables to sum to one.  Columns ``0 .. 2^p - 1`` are the subset
variables ``x_C`` for ``C`` a subset of the universe (first attribute is the
most significant bit); the remaining ``2m + 2`` columns are the slacks,
slack ``i`` sitting at column ``2^p + i`` with entry ``-1`` in row ``i``.

Entries are computed on demand from bit masks; nothing of size ``2^p`` is
stored unless :func:`densify` is called.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from conimp.numeric import ONE, ZERO, format_rational
from conimp.rules import ConstrainedImplication

DEFAULT_MAX_MATERIALIZE = 16


class LPError(ValueError):
    pass


class ImplicitSystem:
    """Row and column oracle for the slack-form system of a rule list."""

    def __init__(self, universe: Sequence[str], rules: Iterable[ConstrainedImplication]):
        self.universe = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise LPError("universe contains duplicate attributes")
        self.rules = tuple(rules)
        self.p = len(self.universe)
        self.m = len(self.rules)
        self.row_count = 2 * self.m + 2
        self.subset_count = 1 << self.p
        self.column_count = self.subset_count + self.row_count
        self._bit = {a: 1 << (self.p - 1 - t) for t, a in enumerate(self.universe)}
        self._premise_masks = []
        self._joint_masks = []
        for r in self.rules:
            self._premise_masks.append(self.mask(r.premise))
            self._joint_masks.append(self.mask(r.premise | r.conclusion))
        self._neg_conf = [-r.confidence for r in self.rules]
        self._one_minus_conf = [ONE - r.confidence for r in self.rules]
        rhs = []
        for r in self.rules:
            rhs.extend((r.support, ZERO))
        rhs.extend((ONE, -ONE))
        self.rhs: tuple[Fraction, ...] = tuple(rhs)

    @property
    def full_index(self) -> int:
        return self.subset_count - 1

    def mask(self, attrs: Iterable[str]) -> int:
        out = 0
        for a in attrs:
            try:
                out |= self._bit[a]
            except KeyError:
                raise LPError(f"attribute {a!r} not in universe") from None
        return out

    def set_to_index(self, attrs: Iterable[str]) -> int:
        return self.mask(attrs)

    def index_to_set(self, j: int) -> frozenset[str]:
        if not 0 <= j < self.subset_count:
            raise LPError(f"subset column {j} out of range 0..{self.subset_count - 1}")
        return frozenset(a for a, bit in self._bit.items() if j & bit)

    def slack_column(self, row: int) -> int:
        return self.subset_count + row

    def is_slack(self, j: int) -> bool:
        return j >= self.subset_count

    def _check(self, i: int | None, j: int) -> None:
        if i is not None and not 0 <= i < self.row_count:
            raise LPError(f"row {i} out of range 0..{self.row_count - 1}")
        if not 0 <= j < self.column_count:
            raise LPError(f"column {j} out of range 0..{self.column_count - 1}")

    def entry(self, i: int, j: int) -> Fraction:
        self._check(i, j)
        if j >= self.subset_count:
            return -ONE if j - self.subset_count == i else ZERO
        if i == 2 * self.m:
            return ONE
        if i == 2 * self.m + 1:
            return -ONE
        k, conf_row = divmod(i, 2)
        premise = self._premise_masks[k]
        if j & premise != premise:
            return ZERO
        if not conf_row:
            return ONE
        joint = self._joint_masks[k]
        return self._one_minus_conf[k] if j & joint == joint else self._neg_conf[k]

    def column(self, j: int) -> list[Fraction]:
        self._check(None, j)
        if j >= self.subset_count:
            col = [ZERO] * self.row_count
            col[j - self.subset_count] = -ONE
            return col
        col = []
        for k in range(self.m):
            premise = self._premise_masks[k]
            if j & premise != premise:
                col.extend((ZERO, ZERO))
                continue
            joint = self._joint_masks[k]
            col.append(ONE)
            col.append(self._one_minus_conf[k] if j & joint == joint else self._neg_conf[k])
        col.extend((ONE, -ONE))
        return col

    def apply(self, x: dict[int, Fraction]) -> list[Fraction]:
        """``A x`` for a sparse vector over subset columns (slack block excluded)."""
        out = [ZERO] * self.row_count
        for j, v in x.items():
            if v:
                for i, a in enumerate(self.column(j)):
                    out[i] += a * v
        return out


class Program(enum.Enum):
    MIN_SUPPORT = "min_support"
    MIN_CONF_SURROGATE = "min_conf_surrogate"


@dataclass(frozen=True)
class Objective:
    """One of the two minimisation targets for a query ``A -> B`` at confidence ``c``."""

    program: Program
    premise: frozenset[str]
    conclusion: frozenset[str] = frozenset()
    confidence: Fraction = ZERO

    @classmethod
    def min_support(cls, query: ConstrainedImplication) -> Objective:
        return cls(Program.MIN_SUPPORT, query.premise, query.conclusion, query.confidence)

    @classmethod
    def min_surrogate(cls, query: ConstrainedImplication) -> Objective:
        return cls(Program.MIN_CONF_SURROGATE, query.premise, query.conclusion, query.confidence)


def objective_coeff(sys: ImplicitSystem, obj: Objective, j: int) -> Fraction:
    sys._check(None, j)
    if sys.is_slack(j):
        return ZERO
    premise = sys.mask(obj.premise)
    if j & premise != premise:
        return ZERO
    if obj.program is Program.MIN_SUPPORT:
        return ONE
    joint = sys.mask(obj.premise | obj.conclusion)
    return ONE - obj.confidence if j & joint == joint else -obj.confidence


def initial_basis(sys: ImplicitSystem) -> tuple[list[int], dict[int, Fraction]]:
    """Explicit feasible start: all mass on the full attribute set.

    ``x_M = 1`` gives slack ``1 - s_k`` on support rows, ``1 - c_k`` on
    confidence rows and ``0`` on both sum rows.  The basis is the ``x_M``
    column plus every slack column except the one of the last row; the
    ``x_M`` column is the only basic column with a nonzero in that row,
    so the basis matrix is nonsingular.
    """
    full = sys.full_index
    y = [a - b for a, b in zip(sys.column(full), sys.rhs)]
    solution = {full: ONE}
    for i, v in enumerate(y):
        solution[sys.slack_column(i)] = v
    basis = [full] + [sys.slack_column(i) for i in range(sys.row_count - 1)]
    return basis, solution


class ImplicitOracle:
    """Column oracle for the simplex: system plus a (possibly negated) objective."""

    def __init__(self, sys: ImplicitSystem, obj: Objective, maximize: bool = False):
        self.sys = sys
        self.obj = obj
        self.row_count = sys.row_count
        self.column_count = sys.column_count
        self.rhs = sys.rhs
        self._premise = sys.mask(obj.premise)
        self._joint = sys.mask(obj.premise | obj.conclusion)
        if obj.program is Program.MIN_SUPPORT:
            self._hit, self._miss = ONE, ONE
        else:
            self._hit, self._miss = ONE - obj.confidence, -obj.confidence
        if not maximize:
            self._hit, self._miss = -self._hit, -self._miss

    def entry(self, i: int, j: int) -> Fraction:
        return self.sys.entry(i, j)

    def column(self, j: int) -> list[Fraction]:
        return self.sys.column(j)

    def objective(self, j: int) -> Fraction:
        if j >= self.sys.subset_count:
            self.sys._check(None, j)
            return ZERO
        if j & self._premise != self._premise:
            return ZERO
        return self._hit if j & self._joint == self._joint else self._miss


@dataclass
class DenseSystem:
    matrix: list[list[Fraction]]
    rhs: list[Fraction]
    universe: tuple[str, ...] = ()
    subset_count: int = 0

    @property
    def row_count(self) -> int:
        return len(self.matrix)

    @property
    def column_count(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def to_tsv(self) -> str:
        lines = []
        for row, b in zip(self.matrix, self.rhs):
            lines.append("\t".join(format_rational(v) for v in [*row, b]))
        return "\n".join(lines) + "\n"


def densify(sys: ImplicitSystem, max_materialize: int = DEFAULT_MAX_MATERIALIZE) -> DenseSystem:
    """Materialize every entry; refused when the universe exceeds ``max_materialize`` attributes."""
    if sys.p > max_materialize:
        raise LPError(
            f"universe of {sys.p} attributes exceeds the materialization cap of "
            f"{max_materialize}; use the implicit system instead"
        )
    columns = [sys.column(j) for j in range(sys.column_count)]
    matrix = [[col[i] for col in columns] for i in range(sys.row_count)]
    return DenseSystem(matrix, list(sys.rhs), sys.universe, sys.subset_count)


@dataclass
class DenseOracle:
    """Column oracle over an explicit matrix and objective vector."""

    matrix: list[list[Fraction]]
    costs: list[Fraction]
    rhs: Sequence[Fraction]
    row_count: int = field(init=False)
    column_count: int = field(init=False)

    def __post_init__(self) -> None:
        self.row_count = len(self.matrix)
        self.column_count = len(self.costs)

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.matrix]

    def objective(self, j: int) -> Fraction:
        return self.costs[j]


def dense_oracle(sys: ImplicitSystem, obj: Objective, maximize: bool = False,
                 max_materialize: int = DEFAULT_MAX_MATERIALIZE) -> DenseOracle:
    dense = densify(sys, max_materialize)
    sign = 1 if maximize else -1
    costs = [sign * objective_coeff(sys, obj, j) for j in range(sys.column_count)]
    return DenseOracle(dense.matrix, costs, dense.rhs)
