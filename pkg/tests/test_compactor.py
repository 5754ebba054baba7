import json
import random
from fractions import Fraction

import pytest

from treecompact.compactor import (Dag, compact, compact_shape,
                                   compaction_ratio, dag_signatures, unfold)
from treecompact.enumerator import enumerate_bsts, enumerate_recursive
from treecompact.sampler import sample_bst, sample_recursive
from treecompact.trees import (PLANE, POLYA, BinaryTree, RecursiveTree,
                               TreeError, binary_postorder, shape_of,
                               signature)


def _distinct_fringe_signatures(tree):
    """Independent oracle: the set of fringe subtree shape signatures."""
    if isinstance(tree, BinaryTree):
        return {signature(shape_of(BinaryTree(node, _count(node))))
                for node in binary_postorder(tree.root)}
    sigs = set()
    stack = [tree.root]
    while stack:
        node = stack.pop()
        sub = RecursiveTree(node, _count_rec(node))
        sigs.add(signature(shape_of(sub)))
        stack.extend(node.children)
    return sigs


def _count(node):
    return 1 + sum(_count(c) for c in (node.left, node.right) if c)


def _count_rec(node):
    return 1 + sum(_count_rec(c) for c in node.children)


def test_single_node():
    dag = compact(BinaryTree.from_insertions([5]), PLANE)
    assert len(dag) == 1
    assert dag.sizes == [1]
    assert dag.root == 0


def test_mode_mismatch_raises():
    with pytest.raises(TreeError):
        compact(BinaryTree.from_insertions([1]), POLYA)
    with pytest.raises(TreeError):
        compact(RecursiveTree.from_parents([1]), PLANE)


def test_balanced_bst_shares_shapes():
    # balanced BST on 1..7: distinct shapes are leaf, 3-cherry, 7-root
    tree = BinaryTree.from_insertions([4, 2, 6, 1, 3, 5, 7])
    dag = compact(tree, PLANE)
    assert len(dag) == 3
    assert dag.sizes == [1, 3, 7]


def test_dag_node_count_equals_distinct_fringe_shapes_exhaustive():
    for n in range(1, 7):
        for tree in enumerate_recursive(n):
            dag = compact(tree, POLYA)
            assert len(dag) == len(_distinct_fringe_signatures(tree))
    for n in range(1, 7):
        for tree in enumerate_bsts(n):
            dag = compact(tree, PLANE)
            assert len(dag) == len(_distinct_fringe_signatures(tree))


def test_isomorphic_recursive_trees_give_identical_dags():
    # same Polya shape reached through different label placements
    a = RecursiveTree.from_parents([1, 1, 2])   # children {2:{4}, 3}
    b = RecursiveTree.from_parents([1, 1, 3])   # children {2, 3:{4}}
    assert signature(shape_of(a)) == signature(shape_of(b))
    assert compact(a, POLYA) == compact(b, POLYA)


def test_children_ids_precede_parents():
    tree = sample_bst(200, 3)
    dag = compact(tree, PLANE)
    for i, kids in enumerate(dag.children):
        for c in kids:
            if c is not None:
                assert c < i
    assert dag.root == len(dag) - 1  # unique maximal size sorts last


def test_unfold_round_trip_shapes():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(1, 120)
        tree = sample_recursive(n, rng.getrandbits(63))
        dag = compact(tree, POLYA)
        assert unfold(dag) == shape_of(tree)


def test_compaction_is_idempotent():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(1, 120)
        for tree, mode in ((sample_bst(n, rng.getrandbits(63)), PLANE),
                           (sample_recursive(n, rng.getrandbits(63)), POLYA)):
            dag = compact(tree, mode)
            assert compact_shape(unfold(dag)) == dag


def test_fringe_monotonicity():
    # the shape set of any fringe subtree is a subset of the whole tree's
    tree = sample_bst(300, 17)
    whole = set(dag_signatures(compact(tree, PLANE)))
    for node in binary_postorder(tree.root):
        if 5 <= _count(node) <= 50:
            sub = compact_shape(shape_of(BinaryTree(node, _count(node))))
            assert set(dag_signatures(sub)) <= whole
            break
    else:
        pytest.fail("no mid-sized fringe subtree found")


def test_node_ids_of_size():
    dag = compact(BinaryTree.from_insertions([4, 2, 6, 1, 3, 5, 7]), PLANE)
    assert dag.node_ids_of_size(1) == [0]
    assert dag.node_ids_of_size(7) == [dag.root]


def test_to_json_schema():
    dag = compact(sample_recursive(30, 4), POLYA)
    obj = json.loads(dag.to_json())
    assert obj["mode"] == POLYA and obj["n"] == 30
    assert obj["nodes"][obj["root"]]["size"] == 30
    ids = [node["id"] for node in obj["nodes"]]
    assert ids == list(range(len(dag)))


def test_compaction_ratio_bounds():
    rng = random.Random(10)
    for _ in range(20):
        n = rng.randint(1, 200)
        ratio = compaction_ratio(sample_bst(n, rng.getrandbits(63)), PLANE)
        assert isinstance(ratio, Fraction)
        assert 0 < ratio <= 1
