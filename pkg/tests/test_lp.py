import random
from fractions import Fraction as F

import pytest

from conimp.context import holds_all
from conimp.entail import frequency_vector
from conimp.lp import (
    DenseOracle,
    ImplicitOracle,
    ImplicitSystem,
    LPError,
    Objective,
    densify,
    initial_basis,
    objective_coeff,
)
from conimp.rules import attribute_universe, rule

from helpers import random_context, random_instance

EXAMPLE_L = [rule("a", "b", F(1, 2), F(1, 3)), rule("a", "c", F(1, 3), F(1, 4))]
EXAMPLE = ImplicitSystem(("a", "b", "c"), EXAMPLE_L)

t = F(1, 3)
q = F(1, 4)
# rows of the worked example as printed; the confidence row of {a}->{c}
# (fourth row) is printed with its entries under the columns containing c
PRINTED = [
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, -t, -t, 1 - t, 1 - t],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, -q, 0, -q, 0, 1 - q, 0, 1 - q],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [-1, -1, -1, -1, -1, -1, -1, -1],
]
# recomputed from the defining inequalities: nonzero exactly on columns containing a
CONF_A_TO_C = [0, 0, 0, 0, -q, 1 - q, -q, 1 - q]


def exact_det(matrix):
    """Determinant by fraction-exact row reduction."""
    a = [list(map(F, row)) for row in matrix]
    n = len(a)
    det = F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return F(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def test_dimensions():
    assert EXAMPLE.row_count == 6
    assert EXAMPLE.subset_count == 8
    assert EXAMPLE.column_count == 8 + 6


def test_index_mapping():
    assert EXAMPLE.index_to_set(0) == frozenset()
    assert EXAMPLE.index_to_set(1) == {"c"}
    assert EXAMPLE.set_to_index({"a"}) == 4
    assert EXAMPLE.set_to_index({"a", "b", "c"}) == 7
    for j in range(8):
        assert EXAMPLE.set_to_index(EXAMPLE.index_to_set(j)) == j
    with pytest.raises(LPError):
        EXAMPLE.index_to_set(8)
    with pytest.raises(LPError):
        EXAMPLE.set_to_index({"z"})


def test_matrix_entry_examples():
    assert EXAMPLE.entry(0, 4) == 1
    assert EXAMPLE.entry(1, 6) == F(2, 3)
    assert EXAMPLE.entry(1, 4) == F(-1, 3)
    assert EXAMPLE.entry(2, 8 + 2) == -1
    assert EXAMPLE.entry(3, 8 + 2) == 0
    with pytest.raises(LPError):
        EXAMPLE.entry(6, 0)
    with pytest.raises(LPError):
        EXAMPLE.entry(0, 14)


def test_densify_matches_worked_example():
    dense = densify(EXAMPLE)
    x_block = [row[:8] for row in dense.matrix]
    for i in (0, 1, 2, 4, 5):
        assert x_block[i] == PRINTED[i]
    assert x_block[3] == CONF_A_TO_C
    assert x_block[3] != PRINTED[3]
    assert dense.rhs == [F(1, 2), 0, F(1, 3), 0, 1, -1]
    slack_block = [row[8:] for row in dense.matrix]
    assert slack_block == [[-1 if i == j else 0 for j in range(6)] for i in range(6)]


def test_densify_agrees_with_entries():
    rng = random.Random(2)
    for _ in range(30):
        rules, query = random_instance(rng)
        sys = ImplicitSystem(attribute_universe(rules, query), rules)
        dense = densify(sys)
        for _ in range(20):
            i = rng.randrange(sys.row_count)
            j = rng.randrange(sys.column_count)
            assert dense.matrix[i][j] == sys.entry(i, j)
        for j in range(sys.column_count):
            assert sys.column(j) == [sys.entry(i, j) for i in range(sys.row_count)]


def test_densify_cap():
    big = ImplicitSystem(tuple(f"m{i}" for i in range(5)), [])
    with pytest.raises(LPError, match="implicit"):
        densify(big, max_materialize=4)


def test_column_structure():
    rng = random.Random(4)
    for _ in range(20):
        rules, query = random_instance(rng)
        sys = ImplicitSystem(attribute_universe(rules, query), rules)
        for j in range(sys.subset_count):
            col = sys.column(j)
            assert col[-2:] == [1, -1]


def test_objective_coefficients():
    sup = Objective.min_support(rule("a", "b", 0, 0))
    assert objective_coeff(EXAMPLE, sup, 7) == 1
    assert objective_coeff(EXAMPLE, sup, 3) == 0
    sur = Objective.min_surrogate(rule("a", "b", 0, F(3, 4)))
    assert objective_coeff(EXAMPLE, sur, 6) == F(1, 4)
    assert objective_coeff(EXAMPLE, sur, 4) == F(-3, 4)
    assert objective_coeff(EXAMPLE, sur, 3) == 0
    for j in range(8, 14):
        assert objective_coeff(EXAMPLE, sup, j) == 0
        assert objective_coeff(EXAMPLE, sur, j) == 0
    with pytest.raises(LPError):
        objective_coeff(EXAMPLE, sup, 14)


def test_oracles_agree_on_objective():
    rng = random.Random(6)
    for _ in range(30):
        rules, query = random_instance(rng)
        sys = ImplicitSystem(attribute_universe(rules, query), rules)
        for obj in (Objective.min_support(query), Objective.min_surrogate(query)):
            implicit = ImplicitOracle(sys, obj)
            maxi = ImplicitOracle(sys, obj, maximize=True)
            for j in range(sys.column_count):
                assert implicit.objective(j) == -objective_coeff(sys, obj, j)
                assert maxi.objective(j) == objective_coeff(sys, obj, j)


def test_initial_basis_example():
    basis, solution = initial_basis(EXAMPLE)
    assert basis == [7, 8, 9, 10, 11, 12]
    expected = {7: 1, 8: F(1, 2), 9: F(2, 3), 10: F(2, 3), 11: F(3, 4), 12: 0, 13: 0}
    assert solution == expected


def test_initial_basis_no_rules():
    sys = ImplicitSystem(("x",), [])
    basis, solution = initial_basis(sys)
    assert basis == [1, 2]
    assert solution == {1: 1, 2: 0, 3: 0}


def test_initial_basis_feasible_and_nonsingular():
    rng = random.Random(9)
    for _ in range(200):
        rules, query = random_instance(rng)
        sys = ImplicitSystem(attribute_universe(rules, query), rules)
        basis, solution = initial_basis(sys)
        assert all(v >= 0 for v in solution.values())
        lhs = [sum(sys.entry(i, j) * v for j, v in solution.items()) for i in range(sys.row_count)]
        assert lhs == list(sys.rhs)
        B = [[sys.entry(i, j) for j in basis] for i in range(sys.row_count)]
        assert exact_det(B) != 0
        assert set(solution) - set(basis) == {sys.slack_column(sys.row_count - 1)}


def test_models_induce_solutions():
    rng = random.Random(10)
    hits = 0
    for _ in range(300):
        rules, query = random_instance(rng)
        universe = attribute_universe(rules, query)
        K = random_context(rng, universe, max_objects=6)
        if not holds_all(K, rules):
            continue
        hits += 1
        sys = ImplicitSystem(universe, rules)
        x = frequency_vector(K, universe)
        assert sum(x.values()) == 1
        Ax = sys.apply(x)
        assert all(a >= b for a, b in zip(Ax, sys.rhs))
    assert hits > 50


def test_dense_oracle_is_plain_matrix():
    oracle = DenseOracle([[F(1), F(1)]], [F(1), F(0)], [F(1)])
    assert (oracle.row_count, oracle.column_count) == (1, 2)
    assert oracle.column(1) == [1]


def test_tsv_dump():
    sys = ImplicitSystem(("x",), [])
    assert densify(sys).to_tsv() == "1\t1\t-1\t0\t1\n-1\t-1\t0\t-1\t-1\n"
