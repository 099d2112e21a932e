# -*- coding: utf-8 -*-
import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qapga.instance import (INT64_MAX, CostOverflowException,
                            DimensionMismatchException, Instance,
                            Permutation, QapDataException,
                            QaplibFormatException, evaluate_cost,
                            is_bijection, parse_qaplib, render_qaplib,
                            swap_delta)
from qapga.oracle import assignment_matrix_cost, random_instance

from tests.conftest import THREE_COSTS


# -------------------------------------------------------------------------
# Parsing
# -------------------------------------------------------------------------
def test_parse_smallest_instance():
    inst = parse_qaplib("1\n0\n0")
    assert inst.n == 1
    assert inst.flow.tolist() == [[0]]
    assert inst.dist.tolist() == [[0]]


def test_parse_fills_row_major():
    inst = parse_qaplib("2\n0 1\n1 0\n0 3\n3 0", name='two')
    assert inst.name == 'two'
    assert inst.flow.tolist() == [[0, 1], [1, 0]]
    assert inst.dist.tolist() == [[0, 3], [3, 0]]


def test_parse_accepts_any_whitespace_and_streams():
    text = "  2\t\n\n0\t1 1\n 0\r\n\n0 3\n3\n0\n\n   \n"
    inst = parse_qaplib(io.StringIO(text))
    assert inst.flow.tolist() == [[0, 1], [1, 0]]
    assert inst.dist.tolist() == [[0, 3], [3, 0]]


def test_parse_truncated_input():
    with pytest.raises(QaplibFormatException) as excinfo:
        parse_qaplib("2\n0 1\n1 0\n0 3")
    assert "expected 8 matrix entries, found 7 integers (6 matrix entries)" in str(excinfo.value)


@pytest.mark.parametrize("text, message, line, column", [
    ("2\n0 1\n1 x\n0 3\n3 0", "malformed matrix entry 'x'", 3, 3),
    ("2.5\n0", "malformed size", 1, 1),
    ("-2\n0 1", "size must be positive", 1, 1),
    ("0\n", "size must be positive", 1, 1),
    ("2\n0 1\n1 0\n0 -3\n3 0", "negative matrix entry -3", 4, 3),
    ("2\n0 1\n1 0\n0 3\n3 0\n7", "trailing garbage '7'", 6, 1),
    ("1\n0\n0 EOF", "trailing garbage 'EOF'", 3, 3),
])
def test_parse_errors_carry_position(text, message, line, column):
    with pytest.raises(QaplibFormatException) as excinfo:
        parse_qaplib(text)
    assert message in str(excinfo.value)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_parse_empty_input():
    with pytest.raises(QaplibFormatException):
        parse_qaplib("   \n\n")


def test_render_layout(two):
    assert render_qaplib(two) == "2\n\n0 1\n1 0\n\n0 3\n3 0\n"


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 9), seed=st.integers(0, 2 ** 32), max_entry=st.sampled_from([0, 5, 10 ** 6]))
def test_parse_render_round_trip(n, seed, max_entry):
    inst = random_instance(n, max_entry, rng=seed, name='rt')
    assert parse_qaplib(render_qaplib(inst), name='rt') == inst


# -------------------------------------------------------------------------
# Instance and Permutation types
# -------------------------------------------------------------------------
def test_unequal_facility_and_location_counts_rejected():
    with pytest.raises(DimensionMismatchException) as excinfo:
        Instance('bad', [[0, 1], [1, 0]], [[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    assert "unequal" in str(excinfo.value)


@pytest.mark.parametrize("flow, dist", [
    ([[0, 1]], [[0, 1]]),
    ([], []),
    ([[0, -1], [1, 0]], [[0, 1], [1, 0]]),
    ([[2 ** 63]], [[1]]),
])
def test_invalid_matrices_rejected(flow, dist):
    with pytest.raises(QapDataException):
        Instance('bad', flow, dist)


def test_instance_matrices_are_read_only(three):
    with pytest.raises(ValueError):
        three.flow[0, 0] = 9


def test_symmetry_flag(three):
    assert three.is_symmetric
    assert not Instance('asym', [[0, 1], [2, 0]], [[0, 1], [1, 0]]).is_symmetric


@pytest.mark.parametrize("values", [[0, 0], [1, 2], [-1, 0], [0.5, 1]])
def test_permutation_rejects_non_bijections(values):
    with pytest.raises(QapDataException):
        Permutation(values)


def test_permutation_labels():
    p = Permutation.from_labels([2, 4, 3, 1, 5])
    assert p.tolist() == [1, 3, 2, 0, 4]
    assert p.to_labels() == [2, 4, 3, 1, 5]
    assert p.swapped(1, 3).to_labels() == [2, 1, 3, 4, 5]
    assert p.to_labels() == [2, 4, 3, 1, 5]


def test_permutation_equality_and_hash():
    assert Permutation([1, 0, 2]) == Permutation([1, 0, 2])
    assert Permutation([1, 0, 2]) != Permutation.identity(3)
    assert len(set([Permutation([1, 0]), Permutation([1, 0]), Permutation([0, 1])])) == 2


def test_is_bijection():
    assert is_bijection([2, 0, 1])
    assert not is_bijection([2, 0, 2])
    assert not is_bijection([0, 1], n=3)


# -------------------------------------------------------------------------
# Cost
# -------------------------------------------------------------------------
def test_identity_cost(three):
    assert evaluate_cost(three, Permutation.identity(3)) == 64


def test_all_permutation_costs(three):
    for perm, cost in THREE_COSTS.items():
        assert evaluate_cost(three, Permutation(perm)) == cost


def test_zero_flow_costs_nothing(rng):
    inst = Instance('zero', np.zeros((6, 6), dtype=int), rng.integers(0, 50, size=(6, 6)))
    for _ in range(20):
        assert evaluate_cost(inst, Permutation(rng.permutation(6))) == 0


def test_single_term_cost(tiny1):
    assert evaluate_cost(tiny1, Permutation([0])) == 15


def test_diagonal_terms_counted():
    inst = Instance('diag', [[2, 1], [0, 3]], [[5, 0], [0, 7]])
    assert evaluate_cost(inst, Permutation([0, 1])) == 2 * 5 + 3 * 7
    assert evaluate_cost(inst, Permutation([1, 0])) == 2 * 7 + 3 * 5


def test_asymmetric_cost():
    inst = Instance('asym', [[0, 4], [1, 0]], [[0, 10], [100, 0]])
    assert evaluate_cost(inst, Permutation([0, 1])) == 4 * 10 + 1 * 100
    assert evaluate_cost(inst, Permutation([1, 0])) == 4 * 100 + 1 * 10


def test_dimension_mismatch(three):
    with pytest.raises(DimensionMismatchException):
        evaluate_cost(three, Permutation.identity(2))


def test_large_entries_stay_exact():
    inst = Instance('big', [[10 ** 6] * 3] * 3, [[10 ** 6] * 3] * 3)
    assert inst.fits_int64
    assert evaluate_cost(inst, Permutation.identity(3)) == 9 * 10 ** 12


def test_cost_outside_int64_is_an_error():
    inst = Instance('huge', [[2 ** 40, 0], [0, 0]], [[2 ** 40, 0], [0, 1]])
    assert not inst.fits_int64
    with pytest.raises(CostOverflowException):
        evaluate_cost(inst, Permutation.identity(2))
    # the swapped assignment fits and is computed exactly
    assert evaluate_cost(inst, Permutation([1, 0])) == 2 ** 40


def test_exact_fallback_when_bound_unprovable():
    inst = Instance('wide', [[2 ** 31, 0], [0, 0]], [[0, 2 ** 33], [2 ** 33, 1]])
    assert not inst.fits_int64
    assert evaluate_cost(inst, Permutation([1, 0])) == 2 ** 31
    assert evaluate_cost(inst, Permutation([0, 1])) == 0
    assert INT64_MAX == 2 ** 63 - 1


def test_cost_matches_assignment_matrix_form():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(2, 13))
        inst = random_instance(n, 50, rng=rng)
        p = Permutation(rng.permutation(n))
        assert evaluate_cost(inst, p) == assignment_matrix_cost(inst, p)


def test_cost_invariant_under_facility_relabeling():
    rng = np.random.default_rng(99)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        inst = random_instance(n, 30, rng=rng)
        p = Permutation(rng.permutation(n))
        sigma = rng.permutation(n)

        relabeled = Instance('relabeled', inst.flow[np.ix_(sigma, sigma)], inst.dist)
        q = Permutation(p.assign[sigma])
        assert evaluate_cost(relabeled, q) == evaluate_cost(inst, p)


# -------------------------------------------------------------------------
# Swap delta
# -------------------------------------------------------------------------
def test_swap_delta_zero_flow(rng):
    inst = Instance('zero', np.zeros((4, 4), dtype=int), rng.integers(0, 9, size=(4, 4)))
    assert swap_delta(inst, Permutation.identity(4), 0, 1, 2) == 0


def test_swap_delta_matches_example(three):
    p = Permutation.identity(3)
    assert swap_delta(three, p, 64, 0, 1) == evaluate_cost(three, p.swapped(0, 1)) == 62


def test_swap_delta_involution_on_symmetric_instance(three):
    p = Permutation([2, 0, 1])
    current = evaluate_cost(three, p)
    swapped_cost = swap_delta(three, p, current, 0, 2)
    assert swap_delta(three, p.swapped(0, 2), swapped_cost, 0, 2) == current


def test_swap_delta_errors(three):
    p = Permutation.identity(3)
    with pytest.raises(QapDataException):
        swap_delta(three, p, 64, 1, 1)
    with pytest.raises(QapDataException):
        swap_delta(three, p, 64, 0, 3)
    with pytest.raises(QapDataException):
        swap_delta(three, p, 64, -1, 0)


def test_swap_delta_matches_full_evaluation():
    rng = np.random.default_rng(7)
    inst = None
    for trial in range(10 ** 4):
        if trial % 100 == 0:
            n = int(rng.integers(2, 16))
            inst = random_instance(n, 100, rng=rng)
            p = Permutation(rng.permutation(n))
            cost = evaluate_cost(inst, p)
        i, k = rng.choice(inst.n, size=2, replace=False)
        new_cost = swap_delta(inst, p, cost, int(i), int(k))
        p = p.swapped(int(i), int(k))
        assert new_cost == evaluate_cost(inst, p)
        cost = new_cost


def test_swap_delta_on_asymmetric_diagonal_instance():
    inst = Instance('asymdiag', [[3, 1, 0], [5, 2, 4], [0, 7, 1]], [[1, 2, 9], [0, 4, 3], [6, 8, 2]])
    p = Permutation([1, 2, 0])
    current = evaluate_cost(inst, p)
    for i, k in [(0, 1), (0, 2), (1, 2), (2, 0)]:
        assert swap_delta(inst, p, current, i, k) == evaluate_cost(inst, p.swapped(i, k))
