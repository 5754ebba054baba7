import math

import pytest

from treecompact.enumerator import (GuardError, enumerate_bsts,
                                    enumerate_recursive, enumerate_shapes,
                                    expected_size_bruteforce,
                                    labelings_bruteforce)
from treecompact.trees import PLANE, POLYA, shape_of, signature

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429]
POLYA_COUNTS = [1, 1, 2, 4, 9, 20, 48]  # rooted unordered trees on k nodes


def test_recursive_tree_counts():
    for n in range(1, 7):
        assert sum(1 for _ in enumerate_recursive(n)) == math.factorial(n - 1)


def test_bst_shape_counts():
    # n! permutations but only Catalan(n) distinct BSTs
    for n in range(1, 7):
        shapes = {signature(shape_of(t)) for t in enumerate_bsts(n)}
        assert len(shapes) == CATALAN[n]


def test_enumerated_trees_are_valid():
    for t in enumerate_recursive(5):
        t.validate()
    for t in enumerate_bsts(5):
        t.validate(search_order=True)


def test_shape_counts_both_modes():
    for k in range(1, 8):
        assert sum(1 for _ in enumerate_shapes(POLYA, k)) == POLYA_COUNTS[k - 1]
        assert sum(1 for _ in enumerate_shapes(PLANE, k)) == CATALAN[k]


def test_shapes_are_distinct_and_sized():
    for mode in (POLYA, PLANE):
        for k in range(1, 7):
            shapes = list(enumerate_shapes(mode, k))
            assert len({signature(s) for s in shapes}) == len(shapes)
            assert all(s.size == k for s in shapes)


def test_guards():
    with pytest.raises(GuardError):
        list(enumerate_recursive(10))
    with pytest.raises(GuardError):
        list(enumerate_bsts(9))
    with pytest.raises(GuardError):
        list(enumerate_shapes(POLYA, 17))


def test_labeling_count_sums():
    # every increasing labeling belongs to exactly one shape
    for k in range(1, 7):
        polya_total = sum(labelings_bruteforce(s)
                          for s in enumerate_shapes(POLYA, k))
        assert polya_total == math.factorial(k - 1)
        plane_total = sum(labelings_bruteforce(s)
                          for s in enumerate_shapes(PLANE, k))
        assert plane_total == math.factorial(k)


def test_expected_size_small_values():
    assert expected_size_bruteforce("recursive", 1) == 1
    assert expected_size_bruteforce("recursive", 2) == 2
    assert expected_size_bruteforce("bst", 2) == 2
    # means over all trees of size 3
    assert expected_size_bruteforce("recursive", 3).as_integer_ratio() == (5, 2)
    assert expected_size_bruteforce("bst", 3).as_integer_ratio() == (8, 3)
