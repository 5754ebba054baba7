"""Exhaustive small-scale oracles.

Everything here is deliberately brute force: full labeled families, all
shapes of a size, labeling counts by direct counting, and exact expected
compacted sizes averaged over the whole family.  Hard size guards keep the
factorial blow-up in check; these generators exist to validate the fast
paths, not to be fast themselves.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .compactor import compact
from .trees import (PLANE, POLYA, BinaryShape, BinaryTree, PolyaShape,
                    RecursiveTree, shape_of, signature)

MAX_RECURSIVE_N = 9
MAX_BST_N = 8
MAX_POLYA_K = 16
MAX_PLANE_K = 14
MAX_LABELING_K = 9


class GuardError(ValueError):
    """Requested size exceeds the brute-force guard."""


def _check(n: int, hi: int, what: str) -> None:
    if not 1 <= n <= hi:
        raise GuardError(f"{what} must be in 1..{hi}, got {n}")


def enumerate_recursive(n: int) -> Iterator[RecursiveTree]:
    """All (n-1)! recursive trees, via every parent-choice sequence.
    Deterministic order: lexicographic in the parent vector."""
    _check(n, MAX_RECURSIVE_N, "recursive tree size")
    for parents in itertools.product(*(range(1, i) for i in range(2, n + 1))):
        yield RecursiveTree.from_parents(list(parents))


def enumerate_bsts(n: int) -> Iterator[BinaryTree]:
    """One BST per permutation of 1..n (n! items; shapes repeat).
    Deterministic order: lexicographic in the permutation."""
    _check(n, MAX_BST_N, "BST size")
    for perm in itertools.permutations(range(1, n + 1)):
        yield BinaryTree.from_insertions(perm)


@lru_cache(maxsize=None)
def _plane_shapes(k: int) -> tuple:
    if k == 0:
        return (None,)
    if k == 1:
        return (BinaryShape(),)
    out = []
    for left_size in range(k):
        for left in _plane_shapes(left_size):
            for right in _plane_shapes(k - 1 - left_size):
                out.append(BinaryShape(left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _polya_shapes(k: int) -> tuple:
    if k == 1:
        return (PolyaShape(),)
    # root plus a multiset of smaller shapes summing to k-1; multisets are
    # generated as non-increasing sequences in a fixed shape order
    ranked = {}
    for size in range(1, k):
        for idx, shape in enumerate(_polya_shapes(size)):
            ranked[(size, idx)] = shape

    keys = sorted(ranked, reverse=True)

    def multisets(budget, max_key_index):
        if budget == 0:
            yield ()
            return
        for i in range(max_key_index, len(keys)):
            size, _ = keys[i]
            if size > budget:
                continue
            for rest in multisets(budget - size, i):
                yield (keys[i],) + rest

    out = []
    seen = set()
    for combo in multisets(k - 1, 0):
        shape = PolyaShape([ranked[key] for key in combo])
        sig = signature(shape)
        if sig not in seen:
            seen.add(sig)
            out.append(shape)
    return tuple(out)


def enumerate_shapes(mode: str, k: int) -> Iterator:
    """Every isomorphism class of the given size exactly once, in a fixed
    deterministic order."""
    if mode == PLANE:
        _check(k, MAX_PLANE_K, "plane shape size")
        yield from _plane_shapes(k)
    elif mode == POLYA:
        _check(k, MAX_POLYA_K, "Polya shape size")
        yield from _polya_shapes(k)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def labelings_bruteforce(shape) -> int:
    """Number of increasing labelings of a shape, by exhaustive counting.

    Plane mode: try every assignment of 1..k to the (fixed) node positions
    and keep the ones that increase along every edge.  Polya mode: count the
    recursive trees whose shape matches, which enumerates labelings modulo
    the unordered isomorphism.
    """
    k = shape.size
    _check(k, MAX_LABELING_K, "shape size for labeling count")
    if isinstance(shape, BinaryShape):
        # preorder positions with their parent's position
        positions = []

        def walk(s, parent):
            me = len(positions)
            positions.append(parent)
            if s.left is not None:
                walk(s.left, me)
            if s.right is not None:
                walk(s.right, me)

        walk(shape, None)
        count = 0
        for perm in itertools.permutations(range(1, k + 1)):
            if all(parent is None or perm[i] > perm[parent]
                   for i, parent in enumerate(positions)):
                count += 1
        return count
    target = signature(shape)
    return sum(1 for t in enumerate_recursive(k)
               if signature(shape_of(t)) == target)


def expected_size_bruteforce(family: str, n: int) -> Fraction:
    """Exact E(X_n): average DAG node count over the full uniform family."""
    if family == "recursive":
        trees, mode = enumerate_recursive(n), POLYA
    elif family == "bst":
        trees, mode = enumerate_bsts(n), PLANE
    else:
        raise ValueError(f"unknown family {family!r}")
    total = 0
    count = 0
    for tree in trees:
        total += len(compact(tree, mode))
        count += 1
    return Fraction(total, count)
