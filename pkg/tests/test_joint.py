import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropy_triangle import (
    ConfigError,
    DomainError,
    EmptyInputError,
    Partition,
    build_joint,
    conditional_entropy,
    entropy,
    from_mass,
    from_table,
    marginalize,
    uniform_entropy,
)


def test_build_joint_identity_case():
    J = build_joint([0, 1, 2, 3], (4,))
    assert J.mass == {(0,): 0.25, (1,): 0.25, (2,): 0.25, (3,): 0.25}


def test_build_joint_degenerate():
    J = build_joint([[0, 0], [0, 0]], (2, 2))
    assert J.mass == {(0, 0): 1.0}


def test_build_joint_counts(table_0411):
    assert table_0411.mass == {(0, 0): 0.4, (0, 1): 0.1, (1, 0): 0.1, (1, 1): 0.4}


def test_build_joint_errors():
    with pytest.raises(DomainError, match="row 1, column 0"):
        build_joint([[0, 1], [2, 0]], (2, 2))
    with pytest.raises(EmptyInputError):
        build_joint(np.zeros((0, 2), dtype=int), (2, 2))
    with pytest.raises(ConfigError):
        build_joint([[0, 1]], (2, 0))


def test_entropy_examples():
    assert entropy(build_joint([0, 1, 2, 3], (4,))) == 2.0
    assert entropy(build_joint([1, 1, 1], (4,))) == 0.0
    J = from_mass({(0,): 0.5, (1,): 0.25, (2,): 0.25}, (3,))
    assert entropy(J) == pytest.approx(1.5, abs=1e-15)


def test_from_mass_rejects_bad_sum():
    with pytest.raises(DomainError):
        from_mass({(0,): 0.5, (1,): 0.4}, (2,))


def test_marginalize_examples(table_0411):
    ind = from_table(np.full((2, 2), 0.25))
    assert marginalize(ind, [0]).mass == {(0,): 0.5, (1,): 0.5}
    for v in (0, 1):
        assert marginalize(table_0411, [v]).mass == pytest.approx({(0,): 0.5, (1,): 0.5})
    assert marginalize(table_0411, [0, 1]).mass == table_0411.mass


def test_marginalize_errors(table_0411):
    with pytest.raises(ConfigError):
        marginalize(table_0411, [])
    with pytest.raises(ConfigError, match="unknown variable"):
        marginalize(table_0411, ["z"])


def test_conditional_entropy_examples(table_0411):
    copy = build_joint([[i, i] for i in range(4)], (4, 4))
    assert conditional_entropy(copy, Partition([0], [1])) == 0.0
    bits = from_table(np.full((2, 2), 0.25))
    assert conditional_entropy(bits, Partition([0], [1])) == pytest.approx(1.0, abs=1e-15)
    # frozen from the dense oracle: -2(.4 log .4 + .1 log .1) - 1
    assert conditional_entropy(table_0411, Partition([0], [1])) == pytest.approx(
        0.7219280948873623, abs=1e-12)
    assert conditional_entropy(table_0411, Partition([0], [1]), "y|x") == pytest.approx(
        0.7219280948873623, abs=1e-12)


def test_conditional_entropy_bad_partition(table_0411):
    with pytest.raises(ConfigError):
        conditional_entropy(table_0411, Partition([0], [0]))
    with pytest.raises(ConfigError):
        conditional_entropy(table_0411, Partition([0], []))


def test_uniform_entropy_examples():
    assert uniform_entropy(build_joint([0], (4,))) == 2.0
    assert uniform_entropy(build_joint([[0, 0]], (2, 2))) == 2.0
    J = build_joint([[0, 0, 0]], (3, 4, 5))
    assert uniform_entropy(J) == pytest.approx(5.906890595608519, abs=1e-12)
    assert uniform_entropy(J, [1]) == 2.0


def test_observed_cardinalities():
    J = build_joint([[0, 5], [3, 5]], (4, 8))
    K = J.with_observed_cardinalities()
    assert K.cardinalities == (2, 1)
    assert entropy(K) == entropy(J)


def test_large_sparse_domain_is_not_materialized():
    rng = np.random.default_rng(0)
    codes = rng.integers(0, 13, size=(500, 8))
    J = build_joint(codes, (13,) * 8)
    assert len(J.weights) <= 500
    assert uniform_entropy(J) == pytest.approx(8 * math.log2(13))


codes_strategy = st.integers(1, 4).flatmap(
    lambda v: st.lists(st.lists(st.integers(0, 3), min_size=v, max_size=v),
                       min_size=1, max_size=60)
)


@settings(max_examples=150, deadline=None)
@given(codes_strategy)
def test_entropy_matches_counting_oracle(rows):
    v = len(rows[0])
    J = build_joint(rows, (4,) * v)
    m = len(rows)
    counts = Counter(map(tuple, rows))
    oracle = -sum((c / m) * math.log2(c / m) for c in counts.values())
    assert entropy(J) == pytest.approx(oracle, abs=1e-12)
    assert -1e-12 <= entropy(J) <= uniform_entropy(J) + 1e-12


@settings(max_examples=150, deadline=None)
@given(codes_strategy.filter(lambda r: len(r[0]) >= 2), st.randoms(use_true_random=False))
def test_chain_rule_and_marginal_properties(rows, rnd):
    v = len(rows[0])
    J = build_joint(rows, (4,) * v)
    vars_ = list(range(v))
    rnd.shuffle(vars_)
    cut = rnd.randint(1, v - 1)
    a, b = vars_[:cut], vars_[cut:]
    part = Partition(a, b)
    lhs = entropy(J)
    rhs = entropy(marginalize(J, b)) + conditional_entropy(J, part, "x|y")
    assert lhs == pytest.approx(rhs, abs=1e-12)
    # idempotent, and reordering the kept variables permutes tuples only
    once = marginalize(J, a)
    assert marginalize(once, a).mass == once.mass
    rev = marginalize(J, a[::-1])
    assert {k[::-1]: p for k, p in rev.mass.items()} == pytest.approx(once.mass)


def test_uniform_equality_iff_uniform_over_product():
    full = build_joint([[i, j] for i in range(3) for j in range(2)], (3, 2))
    assert entropy(full) == pytest.approx(uniform_entropy(full), abs=1e-12)
    partial = build_joint([[i, 0] for i in range(3)], (3, 2))
    assert entropy(partial) < uniform_entropy(partial) - 0.5
