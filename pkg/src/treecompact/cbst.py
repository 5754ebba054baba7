"""The lossless compacted binary search tree.

A BST is compacted by interning fringe shapes in a postorder pass.  The
first occurrence of each shape keeps its value-bearing nodes; every later
occurrence is replaced by a redirect edge that points at the shape node in
the DAG and carries the preorder label list of the erased subtree.  No
information is lost: :func:`unfold` reconstructs the original BST exactly.

Searching descends the retained head as in a plain BST.  On entering a
redirect it walks the target shape with an index into the label list:
left child means ``i := i + 1``, right child means
``i := i + 1 + size(left child shape)`` (preorder arithmetic).  The number
of value comparisons is exactly the number a plain BST search would make;
each index shift costs one addition.

Byte accounting is a fixed canonical model (documented on
:func:`footprint`), deliberately independent of any runtime's object sizes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .compactor import _canonical_dag, _Interner, Dag
from .trees import (PLANE, BinaryNode, BinaryTree, TreeError,
                    binary_postorder, binary_preorder_labels)

ABSENT = 0
CHILD = 1
REDIRECT = 2

# canonical byte model
PLAIN_NODE_BYTES = 24        # value 8 + two child references 8 each
RETAINED_NODE_BYTES = 32     # value 8 + subtree size 8 + two edge descriptors
REDIRECT_TARGET_BYTES = 8    # shape-node id
LABEL_BYTES = 8              # 64-bit label per list element
SHAPE_NODE_BYTES = 24        # size 8 + left/right shape ids 8 each


class CorruptStructureError(ValueError):
    pass


@dataclass
class SearchOutcome:
    found: bool
    comparisons: int
    additions: int


class CompactedBst:
    """Retained head plus redirect lists over a plane shape DAG.

    Retained records are stored in preorder of the head; record 0 is the
    root.  Edges are ``(tag, payload)`` pairs with tag ABSENT, CHILD
    (payload: record index) or REDIRECT (payload: redirect index).
    Redirects are ``(target shape id, preorder label tuple)``.
    """

    __slots__ = ("dag", "n", "values", "shape_ids", "left", "right",
                 "redirects")

    def __init__(self, dag: Dag, n: int, values, shape_ids, left, right,
                 redirects):
        self.dag = dag
        self.n = n
        self.values = values
        self.shape_ids = shape_ids
        self.left = left
        self.right = right
        self.redirects = redirects

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, CompactedBst):
            return NotImplemented
        return to_bytes(self) == to_bytes(other)


def build(bst: BinaryTree) -> CompactedBst:
    """Compact a BST.  Requires distinct labels in search order."""
    bst.validate(search_order=True)
    interner = _Interner(PLANE)
    ids = {None: None}
    creator: dict = {}
    for node in binary_postorder(bst.root):
        lid = ids[id(node.left) if node.left else None]
        rid = ids[id(node.right) if node.right else None]
        size = 1 + (interner.sizes[lid] if lid is not None else 0) \
                 + (interner.sizes[rid] if rid is not None else 0)
        sid, is_new = interner.intern((lid, rid), size)
        ids[id(node)] = sid
        if is_new:
            creator[sid] = id(node)
    dag, rank = _canonical_dag(interner, ids[id(bst.root)], bst.n)
    shape_of_node = {key: rank[sid] for key, sid in ids.items()
                     if key is not None}
    retained = {creator[sid] for sid in creator}

    values: list = []
    shape_ids: list = []
    left: list = []
    right: list = []
    redirects: list = []

    # preorder over retained head; children patched in after allocation
    stack = [(bst.root, None, None)]
    while stack:
        node, parent_idx, side = stack.pop()
        idx = len(values)
        values.append(node.label)
        shape_ids.append(shape_of_node[id(node)])
        left.append((ABSENT, 0))
        right.append((ABSENT, 0))
        if parent_idx is not None:
            (left if side == "left" else right)[parent_idx] = (CHILD, idx)
        # push right first so the left subtree is emitted first (preorder)
        for child, name in ((node.right, "right"), (node.left, "left")):
            if child is None:
                continue
            if id(child) in retained:
                stack.append((child, idx, name))
            else:
                edge = (REDIRECT, len(redirects))
                redirects.append((shape_of_node[id(child)],
                                  tuple(binary_preorder_labels(child))))
                (left if name == "left" else right)[idx] = edge
    return CompactedBst(dag, bst.n, values, shape_ids, left, right,
                        redirects)


def search(c: CompactedBst, query: int) -> SearchOutcome:
    comparisons = 0
    additions = 0
    idx = 0
    while True:
        comparisons += 1
        value = c.values[idx]
        if query == value:
            return SearchOutcome(True, comparisons, additions)
        tag, payload = c.left[idx] if query < value else c.right[idx]
        if tag == ABSENT:
            return SearchOutcome(False, comparisons, additions)
        if tag == CHILD:
            idx = payload
            continue
        # redirect: index-walk the shape DAG against the label list
        sid, labels = c.redirects[payload]
        i = 0
        cur = sid
        children = c.dag.children
        sizes = c.dag.sizes
        while True:
            comparisons += 1
            value = labels[i]
            if query == value:
                return SearchOutcome(True, comparisons, additions)
            lchild, rchild = children[cur]
            if query < value:
                if lchild is None:
                    return SearchOutcome(False, comparisons, additions)
                i += 1
                additions += 1
                cur = lchild
            else:
                if rchild is None:
                    return SearchOutcome(False, comparisons, additions)
                i += 1 + (sizes[lchild] if lchild is not None else 0)
                additions += 1
                cur = rchild


def plain_search(bst: BinaryTree, query: int) -> SearchOutcome:
    """Reference BST search with the same comparison accounting."""
    comparisons = 0
    node = bst.root
    while node is not None:
        comparisons += 1
        if query == node.label:
            return SearchOutcome(True, comparisons, 0)
        node = node.left if query < node.label else node.right
    return SearchOutcome(False, comparisons, 0)


def _subtree_from_labels(dag: Dag, sid: int, labels, i: int) -> BinaryNode:
    node = BinaryNode(labels[i])
    lchild, rchild = dag.children[sid]
    if lchild is not None:
        node.left = _subtree_from_labels(dag, lchild, labels, i + 1)
    if rchild is not None:
        offset = 1 + (dag.sizes[lchild] if lchild is not None else 0)
        node.right = _subtree_from_labels(dag, rchild, labels, i + offset)
    return node


def unfold(c: CompactedBst) -> BinaryTree:
    """Reconstruct the original BST exactly."""

    def rebuild(idx: int) -> BinaryNode:
        node = BinaryNode(c.values[idx])
        for side, edges in (("left", c.left), ("right", c.right)):
            tag, payload = edges[idx]
            if tag == ABSENT:
                continue
            if tag == CHILD:
                setattr(node, side, rebuild(payload))
            else:
                sid, labels = c.redirects[payload]
                if len(labels) != c.dag.sizes[sid]:
                    raise CorruptStructureError(
                        f"redirect list length {len(labels)} != shape size "
                        f"{c.dag.sizes[sid]}")
                setattr(node, side, _subtree_from_labels(c.dag, sid, labels, 0))
        return node

    return BinaryTree(rebuild(0), c.n)


def footprint(obj) -> int:
    """Canonical byte accounting.

    Plain BST: 24 bytes per node (value + two child references).
    Compacted: 32 bytes per retained record (value, subtree size, two edge
    descriptors) + per redirect 8 bytes target and 8 per list element + 24
    bytes per shape-DAG node (size, left id, right id).
    """
    if isinstance(obj, BinaryTree):
        return PLAIN_NODE_BYTES * obj.n
    if isinstance(obj, CompactedBst):
        total = RETAINED_NODE_BYTES * len(obj.values)
        for _, labels in obj.redirects:
            total += REDIRECT_TARGET_BYTES + LABEL_BYTES * len(labels)
        total += SHAPE_NODE_BYTES * len(obj.dag)
        return total
    raise TypeError(f"no byte accounting for {obj!r}")


# ---------------------------------------------------------------------------
# binary serialization (magic "CBST1"; everything 64-bit little-endian)

_MAGIC = b"CBST1"


def to_bytes(c: CompactedBst) -> bytes:
    out = [_MAGIC, struct.pack("<QQQQ", c.n, len(c.values),
                               len(c.redirects), len(c.dag))]
    for i in range(len(c.dag)):
        lchild, rchild = c.dag.children[i]
        out.append(struct.pack("<QQQ", c.dag.sizes[i],
                               0 if lchild is None else lchild + 1,
                               0 if rchild is None else rchild + 1))
    for i in range(len(c.values)):
        out.append(struct.pack("<qQQQQQ", c.values[i], c.shape_ids[i],
                               *c.left[i], *c.right[i]))
    for sid, labels in c.redirects:
        out.append(struct.pack("<QQ", sid, len(labels)))
        out.append(struct.pack(f"<{len(labels)}q", *labels))
    return b"".join(out)


def from_bytes(data: bytes) -> CompactedBst:
    if data[:5] != _MAGIC:
        raise CorruptStructureError("bad magic")
    off = 5
    n, retained, nredir, nshapes = struct.unpack_from("<QQQQ", data, off)
    off += 32
    sizes = []
    children = []
    for _ in range(nshapes):
        size, lraw, rraw = struct.unpack_from("<QQQ", data, off)
        off += 24
        sizes.append(size)
        children.append((lraw - 1 if lraw else None,
                         rraw - 1 if rraw else None))
    dag = Dag(PLANE, sizes, children, nshapes - 1 if nshapes else 0, n)
    values, shape_ids, left, right = [], [], [], []
    for _ in range(retained):
        value, sid, lt, lp, rt, rp = struct.unpack_from("<qQQQQQ", data, off)
        off += 48
        values.append(value)
        shape_ids.append(sid)
        left.append((lt, lp))
        right.append((rt, rp))
    redirects = []
    for _ in range(nredir):
        sid, count = struct.unpack_from("<QQ", data, off)
        off += 16
        labels = struct.unpack_from(f"<{count}q", data, off)
        off += 8 * count
        redirects.append((sid, tuple(labels)))
    if off != len(data):
        raise CorruptStructureError("trailing bytes")
    return CompactedBst(dag, n, values, shape_ids, left, right, redirects)
