"""Compaction of a tree into the DAG of its distinct fringe subtree shapes.

A single postorder pass interns each fringe shape the first time it is seen;
later occurrences reuse the stored node.  The DAG node count is exactly the
number of distinct fringe subtree shapes of the input tree.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .trees import (PLANE, POLYA, BinaryShape, BinaryTree, PolyaShape,
                    RecursiveTree, TreeError, binary_postorder)


class Dag:
    """Interned fringe shapes.  After the postorder interning pass the nodes
    are renumbered canonically by (size, signature), so every child id
    precedes its parent and isomorphic inputs yield identical DAGs.
    ``children[i]`` is an ordered (left, right) pair of optional ids in plane
    mode, and an ascending id tuple in Polya mode."""

    __slots__ = ("mode", "sizes", "children", "root", "n")

    def __init__(self, mode, sizes, children, root, n):
        self.mode = mode
        self.sizes = sizes
        self.children = children
        self.root = root
        self.n = n

    def __len__(self) -> int:
        return len(self.sizes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return (self.mode == other.mode and self.sizes == other.sizes
                and self.children == other.children and self.root == other.root)

    def __hash__(self):
        return hash((self.mode, tuple(self.children), self.root))

    def node_ids_of_size(self, k: int):
        return [i for i, s in enumerate(self.sizes) if s == k]

    def to_json(self) -> str:
        nodes = [{"id": i, "size": self.sizes[i],
                  "children": [c for c in self.children[i] if c is not None]
                  if self.mode == PLANE else list(self.children[i])}
                 for i in range(len(self.sizes))]
        return json.dumps({"mode": self.mode, "n": self.n,
                           "root": self.root, "nodes": nodes})


class _Interner:
    __slots__ = ("mode", "keys", "sizes", "children")

    def __init__(self, mode):
        self.mode = mode
        self.keys = {}
        self.sizes = []
        self.children = []

    def intern(self, key, size):
        """Return (id, is_new) for a node whose canonical child key is given."""
        found = self.keys.get(key)
        if found is not None:
            return found, False
        node_id = len(self.sizes)
        self.keys[key] = node_id
        self.sizes.append(size)
        self.children.append(key)
        return node_id, True


def _node_signatures(mode, children) -> list:
    """Bottom-up canonical signature of every interned node (children ids
    always precede parents)."""
    sigs = []
    for kids in children:
        if mode == PLANE:
            left, right = kids
            sigs.append("(" + (sigs[left] if left is not None else "-")
                        + (sigs[right] if right is not None else "-") + ")")
        else:
            sigs.append("(" + "".join(sigs[c] for c in kids) + ")")
    return sigs


def _canonical_dag(interner, root_id: int, n: int):
    """Renumber interned nodes by (size, signature); the order is a strict
    total order because distinct nodes carry distinct signatures.  Returns
    (dag, rank) where rank maps old interning ids to canonical ids."""
    mode = interner.mode
    sigs = _node_signatures(mode, interner.children)
    order = sorted(range(len(sigs)),
                   key=lambda i: (interner.sizes[i], sigs[i]))
    rank = [0] * len(order)
    for new_id, old_id in enumerate(order):
        rank[old_id] = new_id
    sizes = [interner.sizes[i] for i in order]
    children = []
    for old_id in order:
        kids = interner.children[old_id]
        if mode == PLANE:
            left, right = kids
            children.append((rank[left] if left is not None else None,
                             rank[right] if right is not None else None))
        else:
            children.append(tuple(sorted(rank[c] for c in kids)))
    return Dag(mode, sizes, children, rank[root_id], n), rank


def _intern_binary_root(interner, root):
    """Postorder-intern every fringe shape below (and including) root.
    Returns (root_id, per-node id map keyed by id(node))."""
    ids = {None: None}
    for node in binary_postorder(root):
        lid = ids[id(node.left) if node.left else None]
        rid = ids[id(node.right) if node.right else None]
        size = 1 + (interner.sizes[lid] if lid is not None else 0) \
                 + (interner.sizes[rid] if rid is not None else 0)
        ids[id(node)], _ = interner.intern((lid, rid), size)
    return ids[id(root)], ids


def _intern_recursive_root(interner, root):
    ids = {}
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            kids = tuple(sorted(ids[id(c)] for c in node.children))
            size = 1 + sum(interner.sizes[c] for c in kids)
            ids[id(node)], _ = interner.intern(kids, size)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return ids[id(root)], ids


def compact(tree, mode: str) -> Dag:
    """Compact a labeled tree into its shape DAG.  The mode must match the
    tree kind (recursive -> polya, binary -> plane)."""
    if isinstance(tree, BinaryTree):
        if mode != PLANE:
            raise TreeError(f"binary tree cannot be compacted in {mode} mode")
        interner = _Interner(PLANE)
        root_id, _ = _intern_binary_root(interner, tree.root)
    elif isinstance(tree, RecursiveTree):
        if mode != POLYA:
            raise TreeError(f"recursive tree cannot be compacted in {mode} mode")
        interner = _Interner(POLYA)
        root_id, _ = _intern_recursive_root(interner, tree.root)
    else:
        raise TreeError(f"not a labeled tree: {tree!r}")
    return _canonical_dag(interner, root_id, tree.n)[0]


def compact_shape(shape) -> Dag:
    """Compact an unlabeled shape (test utility backing the idempotence and
    brute-force properties)."""
    if isinstance(shape, BinaryShape):
        interner = _Interner(PLANE)
        ids = {None: None}
        stack = [(shape, False)]
        while stack:
            s, done = stack.pop()
            if s is None:
                continue
            if done:
                key = (ids[id(s.left) if s.left else None],
                       ids[id(s.right) if s.right else None])
                ids[id(s)], _ = interner.intern(key, s.size)
            else:
                stack.append((s, True))
                stack.append((s.right, False))
                stack.append((s.left, False))
        root_id = ids[id(shape)]
    elif isinstance(shape, PolyaShape):
        interner = _Interner(POLYA)
        ids = {}
        stack = [(shape, False)]
        while stack:
            s, done = stack.pop()
            if done:
                key = tuple(sorted(ids[id(c)] for c in s.children))
                ids[id(s)], _ = interner.intern(key, s.size)
            else:
                stack.append((s, True))
                stack.extend((c, False) for c in s.children)
        root_id = ids[id(shape)]
    else:
        raise TreeError(f"not a shape: {shape!r}")
    return _canonical_dag(interner, root_id, shape.size)[0]


def unfold(dag: Dag, node_id: int | None = None):
    """Rebuild the (unlabeled) shape rooted at a DAG node; defaults to the
    whole-tree shape."""
    target = dag.root if node_id is None else node_id
    memo: list = [None] * len(dag.sizes)
    for i in range(target + 1):
        if dag.mode == PLANE:
            left, right = dag.children[i]
            memo[i] = BinaryShape(
                memo[left] if left is not None else None,
                memo[right] if right is not None else None)
        else:
            memo[i] = PolyaShape([memo[c] for c in dag.children[i]])
    return memo[target]


def dag_signatures(dag: Dag) -> list:
    """Canonical signature of every DAG node, indexed by node id."""
    return _node_signatures(dag.mode, dag.children)


def compaction_ratio(tree, mode: str) -> Fraction:
    """DAG node count over tree size, as an exact rational in (0, 1]."""
    dag = compact(tree, mode)
    return Fraction(len(dag), tree.n)
