"""Deciding ``L |= (A -> B, s, c)`` with two linear programs.

Over the universe ``M`` of all mentioned attributes, a model of ``L`` is
described by the fraction ``x_C`` of objects whose intent is exactly ``C``.
The query holds in every model iff

* the least achievable support of ``A`` is at least ``s``, and
* the least achievable ``supp(A u B) - c * supp(A)`` is at least ``0``.

Both minima are found with the implicit revised simplex.  When one of them
falls short, the optimal vertex is turned into a counter-model by giving
each ``x_C`` its share of ``n`` objects, ``n`` the common denominator.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from conimp.context import FormalContext, holds_all, holds_constrained
from conimp.lp import (
    DEFAULT_MAX_MATERIALIZE,
    ImplicitOracle,
    ImplicitSystem,
    Objective,
    dense_oracle,
    initial_basis,
)
from conimp.numeric import ONE, ZERO, lcm_denominators
from conimp.rules import ConstrainedImplication, attribute_universe
from conimp.simplex import DEFAULT_MAX_ITERATIONS, SimplexError, Status, solve_max

SUPPORT = "support"
CONFIDENCE = "confidence"


class EntailmentError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProgramMinima:
    universe: tuple[str, ...]
    min_support: Fraction
    min_surrogate: Fraction
    support_solution: dict[int, Fraction]
    surrogate_solution: dict[int, Fraction]
    iterations: tuple[int, int]


@dataclass(frozen=True)
class Verdict:
    entailed: bool
    min_support_value: Fraction
    min_surrogate_value: Fraction
    failing_program: str | None = None
    witness: FormalContext | None = None


def _minimize(oracle, basis, max_iterations, trace, label):
    if trace:
        trace(f"program {label}")
    outcome = solve_max(oracle, basis, max_iterations=max_iterations, trace=trace)
    if outcome.status is not Status.OPTIMAL:
        # both objectives are bounded by 1 in absolute value over the simplex sum x = 1
        raise EntailmentError(f"{label} program reported unbounded")
    return -outcome.value, outcome


def solve_min_programs(
    rules: Sequence[ConstrainedImplication],
    query: ConstrainedImplication,
    *,
    universe: Sequence[str] | None = None,
    dense: bool = False,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    max_materialize: int = DEFAULT_MAX_MATERIALIZE,
    trace: Callable[[str], None] | None = None,
) -> ProgramMinima:
    """Exact minima of the support and confidence-surrogate programs.

    ``universe`` defaults to the attributes mentioned by ``rules`` and
    ``query``; a larger one yields the same minima.  With ``dense=True`` the
    system is materialized first, which is only useful as a cross-check.
    """
    if universe is None:
        universe = attribute_universe(rules, query)
    sys = ImplicitSystem(universe, rules)
    sys.mask(query.attributes)
    basis, _ = initial_basis(sys)
    results = []
    for label, obj in (("support", Objective.min_support(query)),
                       ("surrogate", Objective.min_surrogate(query))):
        if dense:
            oracle = dense_oracle(sys, obj, max_materialize=max_materialize)
        else:
            oracle = ImplicitOracle(sys, obj)
        value, outcome = _minimize(oracle, basis, max_iterations, trace, label)
        subset_part = {j: v for j, v in outcome.solution.items() if j < sys.subset_count}
        results.append((value, subset_part, outcome.iterations))
    (s_val, s_sol, s_it), (c_val, c_sol, c_it) = results
    return ProgramMinima(tuple(universe), s_val, c_val, s_sol, c_sol, (s_it, c_it))


def witness_context(x: dict[int, Fraction], universe: Sequence[str]) -> FormalContext:
    """The context whose intent-frequency vector is ``x``.

    ``x`` maps subset-column indices (first attribute most significant) to
    nonnegative rationals summing to one.  Objects are named ``o1 .. on`` in
    column order, ``n`` being the common denominator of the entries.
    """
    universe = tuple(universe)
    p = len(universe)
    if any(v < 0 for v in x.values()):
        raise ValueError("witness weights must be nonnegative")
    if sum(x.values(), ZERO) != ONE:
        raise ValueError("witness weights must sum to one")
    if any(not 0 <= j < (1 << p) for j in x):
        raise ValueError("witness weight on a column outside the subset block")
    nonzero = {j: v for j, v in sorted(x.items()) if v}
    n = lcm_denominators(nonzero.values())
    rows = []
    for j, v in nonzero.items():
        intent = frozenset(t for t in range(p) if j >> (p - 1 - t) & 1)
        rows.extend([intent] * int(v * n))
    names = tuple(f"o{i}" for i in range(1, len(rows) + 1))
    return FormalContext(names, universe, tuple(rows))


def frequency_vector(K: FormalContext, universe: Sequence[str] | None = None) -> dict[int, Fraction]:
    """``x_K``: fraction of objects per exact intent, keyed by subset column.

    ``universe`` fixes the column order and must contain every attribute of
    ``K``; it defaults to ``K``'s own attribute order.
    """
    universe = tuple(K.attributes if universe is None else universe)
    p = len(universe)
    bit = {a: 1 << (p - 1 - t) for t, a in enumerate(universe)}
    counts: dict[int, int] = {}
    for g in range(len(K.objects)):
        j = 0
        for a in K.intent(g):
            j |= bit[a]
        counts[j] = counts.get(j, 0) + 1
    total = len(K.objects)
    return {j: Fraction(c, total) for j, c in sorted(counts.items())}


def decide_entailment(
    rules: Sequence[ConstrainedImplication],
    query: ConstrainedImplication,
    *,
    universe: Sequence[str] | None = None,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    trace: Callable[[str], None] | None = None,
) -> Verdict:
    rules = list(rules)
    minima = solve_min_programs(
        rules, query, universe=universe, max_iterations=max_iterations, trace=trace
    )
    support_ok = minima.min_support >= query.support
    surrogate_ok = minima.min_surrogate >= 0
    if support_ok and surrogate_ok:
        return Verdict(True, minima.min_support, minima.min_surrogate)
    if not support_ok:
        failing, x = SUPPORT, minima.support_solution
    else:
        failing, x = CONFIDENCE, minima.surrogate_solution
    witness = witness_context(x, minima.universe)
    if not holds_all(witness, rules) or holds_constrained(witness, query):
        raise SimplexError("extracted witness does not refute the query")
    return Verdict(False, minima.min_support, minima.min_surrogate, failing, witness)


def _multiset_count(kinds: int, max_objects: int) -> int:
    return sum(math.comb(kinds + n - 1, n) for n in range(1, max_objects + 1))


def brute_force_refute(
    rules: Iterable[ConstrainedImplication],
    query: ConstrainedImplication,
    max_objects: int,
    *,
    max_contexts: int = 10**6,
) -> FormalContext | None:
    """Search all contexts over the universe with up to ``max_objects`` objects
    for a model of ``rules`` that violates ``query``.

    Finding one proves non-entailment; finding none proves nothing.
    """
    if max_objects < 1:
        raise ValueError("max_objects must be at least 1")
    rules = list(rules)
    universe = attribute_universe(rules, query)
    if not universe:
        # rules over no attributes hold in every context
        return None
    p = len(universe)
    intents = [frozenset(t for t in range(p) if j >> t & 1) for j in range(1 << p)]
    total = _multiset_count(len(intents), max_objects)
    if total > max_contexts:
        raise ValueError(
            f"search space of {total} contexts exceeds the cap of {max_contexts}"
        )
    for n in range(1, max_objects + 1):
        names = tuple(f"o{i}" for i in range(1, n + 1))
        for rows in itertools.combinations_with_replacement(intents, n):
            K = FormalContext(names, universe, rows)
            if holds_all(K, rules) and not holds_constrained(K, query):
                return K
    return None
