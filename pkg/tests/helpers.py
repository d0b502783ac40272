"""Random instance generation shared by the property and acceptance tests."""

import random
from fractions import Fraction

from conimp.context import FormalContext
from conimp.rules import ConstrainedImplication


def random_fraction(rng: random.Random, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def random_attrset(rng: random.Random, pool, max_size=2):
    return frozenset(rng.sample(pool, rng.randint(0, min(max_size, len(pool)))))


def random_rule(rng: random.Random, pool, max_den=6) -> ConstrainedImplication:
    premise = random_attrset(rng, pool)
    conclusion = frozenset(rng.sample(pool, rng.randint(1, min(2, len(pool)))))
    return ConstrainedImplication(
        premise, conclusion, random_fraction(rng, max_den), random_fraction(rng, max_den)
    )


def random_instance(rng: random.Random, max_attrs=4, max_rules=3, max_den=6):
    """``(rules, query)`` over at most ``max_attrs`` attributes."""
    pool = list("abcd"[:max_attrs]) if max_attrs <= 4 else [f"m{i}" for i in range(max_attrs)]
    pool = pool[: rng.randint(1, len(pool))]
    rules = [random_rule(rng, pool, max_den) for _ in range(rng.randint(0, max_rules))]
    query = random_rule(rng, pool, max_den)
    return rules, query


def random_context(rng: random.Random, attrs, max_objects=5) -> FormalContext:
    n = rng.randint(1, max_objects)
    rows = [
        frozenset(j for j in range(len(attrs)) if rng.random() < 0.5) for _ in range(n)
    ]
    return FormalContext(tuple(f"g{i}" for i in range(1, n + 1)), tuple(attrs), tuple(rows))


def reference_minima(rules, query):
    """Both program minima via scipy's floating-point LP on the inequality form.

    Builds the constraints directly from the support/confidence definitions
    over all subsets, sharing no code with the package.
    """
    import itertools

    import numpy as np
    from scipy.optimize import linprog

    universe = sorted(set().union(query.premise, query.conclusion,
                                  *(r.premise | r.conclusion for r in rules)))
    subsets = [frozenset(c) for n in range(len(universe) + 1)
               for c in itertools.combinations(universe, n)]
    rows, rhs = [], []
    for r in rules:
        rows.append([1.0 if r.premise <= X else 0.0 for X in subsets])
        rhs.append(float(r.support))
        both = r.premise | r.conclusion
        rows.append([float(both <= X) - float(r.confidence) * float(r.premise <= X) for X in subsets])
        rhs.append(0.0)
    A_ub = -np.array(rows) if rows else None
    b_ub = -np.array(rhs) if rows else None
    A_eq = np.ones((1, len(subsets)))
    support_obj = np.array([float(query.premise <= X) for X in subsets])
    both = query.premise | query.conclusion
    surrogate_obj = np.array([float(both <= X) - float(query.confidence) * float(query.premise <= X)
                              for X in subsets])
    out = []
    for obj in (support_obj, surrogate_obj):
        res = linprog(obj, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=(0, None), method="highs")
        assert res.status == 0
        out.append(res.fun)
    return tuple(out)
