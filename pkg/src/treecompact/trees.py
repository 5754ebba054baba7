"""Tree representations, canonical shapes and JSON interchange.

Two labeled families are supported:

* recursive trees: rooted, non-plane, labels exactly ``1..n`` and strictly
  increasing on every root-to-leaf path;
* binary trees: plane, with distinguished (possibly empty) left/right slots.
  When used as search trees the labels obey the search-order property.

Unlabeled counterparts ("shapes") come in two modes: ``polya`` (rooted
unordered) for recursive trees, and ``plane`` for binary trees.  Shapes carry
a canonical signature string: two shapes are isomorphic in their mode iff
their signatures are equal.
"""

from __future__ import annotations

import json
from typing import Iterator, Optional

POLYA = "polya"
PLANE = "plane"


class TreeError(ValueError):
    """Invalid tree structure or labeling."""


class TreeFormatError(TreeError):
    """Malformed interchange text; carries a location hint."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{message} (at {where})" if where else message)
        self.where = where


# ---------------------------------------------------------------------------
# labeled trees


class BinaryNode:
    __slots__ = ("label", "left", "right")

    def __init__(self, label: int,
                 left: Optional["BinaryNode"] = None,
                 right: Optional["BinaryNode"] = None):
        self.label = label
        self.left = left
        self.right = right


class RecursiveNode:
    __slots__ = ("label", "children")

    def __init__(self, label: int, children: Optional[list] = None):
        self.label = label
        self.children = children if children is not None else []


class LabeledTree:
    """Common base; concrete kinds are RecursiveTree and BinaryTree."""

    kind = None
    root = None

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledTree) or self.kind != other.kind:
            return NotImplemented
        return tree_to_obj(self) == tree_to_obj(other)

    def __hash__(self):
        return hash(serialize(self))


class RecursiveTree(LabeledTree):
    kind = "recursive"

    def __init__(self, root: RecursiveNode, n: int):
        self.root = root
        self.n = n

    @classmethod
    def from_parents(cls, parents: list) -> "RecursiveTree":
        """Build from parent choices: parents[i] is the parent label of
        node i+2 (nodes are labeled 1..n, node 1 is the root)."""
        n = len(parents) + 1
        nodes = [RecursiveNode(i + 1) for i in range(n)]
        for i, p in enumerate(parents):
            label = i + 2
            if not 1 <= p < label:
                raise TreeError(f"node {label} attached to parent {p}")
            nodes[p - 1].children.append(nodes[i + 1])
        return cls(nodes[0], n)

    def validate(self) -> None:
        seen = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            seen.add(node.label)
            for ch in node.children:
                if ch.label <= node.label:
                    raise TreeError(
                        f"label {ch.label} not increasing below {node.label}")
                stack.append(ch)
        if seen != set(range(1, self.n + 1)):
            raise TreeError("labels are not exactly 1..n")


class BinaryTree(LabeledTree):
    kind = "binary"

    def __init__(self, root: Optional[BinaryNode], n: int):
        if n >= 1 and root is None:
            raise TreeError("nonempty tree without a root")
        self.root = root
        self.n = n

    @classmethod
    def from_insertions(cls, values) -> "BinaryTree":
        """Standard BST insertion of the given sequence of distinct values."""
        values = list(values)
        if not values:
            raise TreeError("empty insertion sequence")
        root = BinaryNode(values[0])
        for v in values[1:]:
            node = root
            while True:
                if v == node.label:
                    raise TreeError(f"duplicate label {v}")
                if v < node.label:
                    if node.left is None:
                        node.left = BinaryNode(v)
                        break
                    node = node.left
                else:
                    if node.right is None:
                        node.right = BinaryNode(v)
                        break
                    node = node.right
        return cls(root, len(values))

    def validate(self, search_order: bool = True) -> None:
        seen = set()
        stack = [(self.root, None, None)]
        count = 0
        while stack:
            node, lo, hi = stack.pop()
            if node is None:
                continue
            count += 1
            if node.label in seen:
                raise TreeError(f"duplicate label {node.label}")
            seen.add(node.label)
            if search_order:
                if (lo is not None and node.label <= lo) or \
                   (hi is not None and node.label >= hi):
                    raise TreeError(
                        f"label {node.label} violates search order")
                stack.append((node.left, lo, node.label))
                stack.append((node.right, node.label, hi))
            else:
                stack.append((node.left, None, None))
                stack.append((node.right, None, None))
        if count != self.n:
            raise TreeError(f"declared size {self.n}, found {count} nodes")


def binary_postorder(root: Optional[BinaryNode]) -> Iterator[BinaryNode]:
    """Iterative postorder; safe for degenerate (path) trees."""
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if node is None:
            continue
        if done:
            yield node
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))


def binary_preorder_labels(root: Optional[BinaryNode]) -> list:
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        out.append(node.label)
        stack.append(node.right)
        stack.append(node.left)
    return out


# ---------------------------------------------------------------------------
# shapes


class BinaryShape:
    __slots__ = ("left", "right", "size", "_sig")

    mode = PLANE

    def __init__(self, left: Optional["BinaryShape"] = None,
                 right: Optional["BinaryShape"] = None):
        self.left = left
        self.right = right
        self.size = 1 + (left.size if left else 0) + (right.size if right else 0)
        self._sig = None

    def __eq__(self, other):
        return isinstance(other, BinaryShape) and signature(self) == signature(other)

    def __hash__(self):
        return hash(signature(self))

    def __repr__(self):
        return f"BinaryShape({signature(self)!r})"


class PolyaShape:
    __slots__ = ("children", "size", "_sig")

    mode = POLYA

    def __init__(self, children=()):
        # canonical order: by (size, signature); equal multisets of children
        # then share one representation
        kids = sorted(children, key=lambda c: (c.size, signature(c)))
        self.children = tuple(kids)
        self.size = 1 + sum(c.size for c in kids)
        self._sig = None

    def __eq__(self, other):
        return isinstance(other, PolyaShape) and signature(self) == signature(other)

    def __hash__(self):
        return hash(signature(self))

    def __repr__(self):
        return f"PolyaShape({signature(self)!r})"


Shape = (BinaryShape, PolyaShape)


def signature(shape) -> str:
    """Canonical identifier; equal iff isomorphic in the shape's mode."""
    if shape._sig is not None:
        return shape._sig
    if isinstance(shape, BinaryShape):
        ls = signature(shape.left) if shape.left else "-"
        rs = signature(shape.right) if shape.right else "-"
        sig = "(" + ls + rs + ")"
    else:
        sig = "(" + "".join(signature(c) for c in shape.children) + ")"
    shape._sig = sig
    return sig


def shape_of(tree: LabeledTree):
    """Forget the labels: recursive trees map to Polya shapes, binary trees
    to plane shapes.  Node count is preserved."""
    if isinstance(tree, BinaryTree):
        memo = {}
        for node in binary_postorder(tree.root):
            memo[id(node)] = BinaryShape(
                memo.get(id(node.left)), memo.get(id(node.right)))
        return memo[id(tree.root)]
    if isinstance(tree, RecursiveTree):
        out = {}
        stack = [(tree.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out[id(node)] = PolyaShape([out[id(c)] for c in node.children])
            else:
                stack.append((node, True))
                stack.extend((c, False) for c in node.children)
        return out[id(tree.root)]
    raise TreeError(f"not a labeled tree: {tree!r}")


def leaf_shape(mode: str):
    return BinaryShape() if mode == PLANE else PolyaShape()


def path_shape(mode: str, k: int, side: str = "left"):
    """The path of k nodes (unary chain; for plane mode on the given side)."""
    shape = leaf_shape(mode)
    for _ in range(k - 1):
        if mode == PLANE:
            shape = BinaryShape(shape, None) if side == "left" \
                else BinaryShape(None, shape)
        else:
            shape = PolyaShape([shape])
    return shape


# ---------------------------------------------------------------------------
# JSON interchange
#
# recursive node: {"label": int, "children": [node, ...]}
# binary node:    {"label": int, "left": node|null, "right": node|null}


def tree_to_obj(tree: LabeledTree):
    if isinstance(tree, BinaryTree):
        memo = {None: None}
        for node in binary_postorder(tree.root):
            memo[id(node)] = {"label": node.label,
                              "left": memo[id(node.left) if node.left else None],
                              "right": memo[id(node.right) if node.right else None]}
        return memo[id(tree.root)]
    out = {}
    stack = [(tree.root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out[id(node)] = {"label": node.label,
                             "children": [out[id(c)] for c in node.children]}
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return out[id(tree.root)]


def serialize(tree: LabeledTree) -> str:
    return json.dumps(tree_to_obj(tree))


def _require_int_label(obj, where):
    if not isinstance(obj, dict):
        raise TreeFormatError("node is not an object", where)
    if "label" not in obj:
        raise TreeFormatError("missing label", where)
    label = obj["label"]
    if not isinstance(label, int) or isinstance(label, bool):
        raise TreeFormatError(f"label {label!r} is not an integer", where)
    return label


def parse(text: str) -> LabeledTree:
    """Parse interchange JSON.  The node schema (``children`` versus
    ``left``/``right``) selects the tree kind."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeFormatError(str(exc), f"offset {exc.pos}") from exc
    if not isinstance(obj, dict):
        raise TreeFormatError("top-level value is not a node object", "$")
    if "children" in obj:
        root, count = _parse_recursive(obj, "$")
        tree = RecursiveTree(root, count)
        try:
            tree.validate()
        except TreeError as exc:
            raise TreeFormatError(str(exc), "$") from exc
        return tree
    if "left" in obj or "right" in obj:
        root, count = _parse_binary(obj, "$")
        tree = BinaryTree(root, count)
        try:
            tree.validate(search_order=False)
        except TreeError as exc:
            raise TreeFormatError(str(exc), "$") from exc
        return tree
    raise TreeFormatError("node has neither 'children' nor 'left'/'right'", "$")


def _parse_recursive(obj, where):
    label = _require_int_label(obj, where)
    kids = obj.get("children", [])
    if not isinstance(kids, list):
        raise TreeFormatError("'children' is not a list", where)
    node = RecursiveNode(label)
    count = 1
    for i, ch in enumerate(kids):
        sub, c = _parse_recursive(ch, f"{where}.children[{i}]")
        node.children.append(sub)
        count += c
    return node, count


def _parse_binary(obj, where):
    label = _require_int_label(obj, where)
    node = BinaryNode(label)
    count = 1
    for side in ("left", "right"):
        sub = obj.get(side)
        if sub is not None:
            child, c = _parse_binary(sub, f"{where}.{side}")
            setattr(node, side, child)
            count += c
    return node, count
