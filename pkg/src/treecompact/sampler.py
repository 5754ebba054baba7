"""Seeded uniform samplers for recursive trees and random BSTs.

The random source is splitmix64, a fixed counter-based 64-bit generator with
a published reference implementation, so golden values are reproducible
across platforms and languages.  Bounded draws use rejection sampling, never
a bare modulo, to keep the distribution exactly uniform.

Trials in a batch derive their seeds as ``master ^ splitmix64(trial_index)``
so concurrent trials never share a stream.
"""

from __future__ import annotations

from .trees import BinaryTree, RecursiveNode, RecursiveTree, TreeError

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One output of the splitmix64 stream seeded at x (the finalizer)."""
    z = (x + _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master: int, trial: int) -> int:
    return (master ^ splitmix64(trial)) & _MASK


class SplitMix64:
    """Sequential splitmix64 generator over 64-bit outputs."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK + 1 - ((_MASK + 1) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n


def sample_permutation(n: int, seed: int) -> list:
    """Uniform permutation of 1..n (Fisher-Yates)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = SplitMix64(seed)
    perm = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def sample_recursive(n: int, seed: int) -> RecursiveTree:
    """Uniform recursive tree: node i attaches to a uniform node in 1..i-1."""
    if n < 1:
        raise TreeError("n must be >= 1")
    rng = SplitMix64(seed)
    nodes = [RecursiveNode(i + 1) for i in range(n)]
    for i in range(1, n):
        parent = rng.below(i)
        nodes[parent].children.append(nodes[i])
    return RecursiveTree(nodes[0], n)


def sample_bst(n: int, seed: int) -> BinaryTree:
    """BST of the permutation model: insert a uniform permutation of 1..n."""
    if n < 1:
        raise TreeError("n must be >= 1")
    return BinaryTree.from_insertions(sample_permutation(n, seed))
