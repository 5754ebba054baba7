import json

import pytest
from hypothesis import given, strategies as st

from treecompact.trees import (PLANE, POLYA, BinaryShape, BinaryTree,
                               PolyaShape, RecursiveTree, TreeError,
                               TreeFormatError, binary_postorder,
                               binary_preorder_labels, leaf_shape, parse,
                               path_shape, serialize, shape_of, signature)


def test_from_insertions_builds_search_order():
    t = BinaryTree.from_insertions([4, 8, 6, 2, 9, 1, 3, 7, 5])
    t.validate(search_order=True)
    assert t.n == 9
    assert t.root.label == 4
    assert t.root.right.label == 8
    assert t.root.right.left.label == 6


def test_from_insertions_rejects_duplicates():
    with pytest.raises(TreeError):
        BinaryTree.from_insertions([2, 1, 2])


def test_recursive_from_parents():
    # node i attaches to parents[i-2] (1-based parent of 2..n)
    t = RecursiveTree.from_parents([1, 1, 2, 2])
    t.validate()
    assert t.n == 5
    assert sorted(c.label for c in t.root.children) == [2, 3]


def test_recursive_rejects_bad_parent():
    # the parent label must be strictly below the child's
    with pytest.raises(TreeError):
        RecursiveTree.from_parents([1, 3])
    with pytest.raises(TreeError):
        RecursiveTree.from_parents([1, 1, 0])


def test_binary_postorder_and_preorder():
    t = BinaryTree.from_insertions([2, 1, 3])
    assert [n.label for n in binary_postorder(t.root)] == [1, 3, 2]
    assert binary_preorder_labels(t.root) == [2, 1, 3]


def test_serialize_parse_round_trip_binary():
    t = BinaryTree.from_insertions([5, 3, 8, 1, 4, 7, 9])
    again = parse(serialize(t))
    assert isinstance(again, BinaryTree)
    assert serialize(again) == serialize(t)


def test_serialize_parse_round_trip_recursive():
    t = RecursiveTree.from_parents([1, 2, 1, 3, 3])
    again = parse(serialize(t))
    assert isinstance(again, RecursiveTree)
    assert serialize(again) == serialize(t)


def test_parse_error_reports_location():
    bad = json.dumps({"label": 1, "left": {"label": "x", "left": None,
                                           "right": None}, "right": None})
    with pytest.raises(TreeFormatError) as err:
        parse(bad)
    assert "left" in str(err.value)


def test_parse_rejects_non_tree():
    with pytest.raises(TreeFormatError):
        parse("[1, 2, 3]")
    with pytest.raises(TreeFormatError):
        parse("not json")


def test_signature_leaf_and_paths():
    assert signature(leaf_shape(POLYA)) == "()"
    assert signature(leaf_shape(PLANE)) == "(--)"
    assert path_shape(POLYA, 4).size == 4
    left = path_shape(PLANE, 3, side="left")
    right = path_shape(PLANE, 3, side="right")
    assert left.size == right.size == 3
    assert signature(left) != signature(right)


def test_polya_signature_ignores_child_order():
    a = PolyaShape([PolyaShape([PolyaShape([])]), PolyaShape([])])
    b = PolyaShape([PolyaShape([]), PolyaShape([PolyaShape([])])])
    assert signature(a) == signature(b)


def test_plane_signature_keeps_child_order():
    cherry = BinaryShape(BinaryShape(None, None), None)
    mirror = BinaryShape(None, BinaryShape(None, None))
    assert signature(cherry) != signature(mirror)


def test_shape_of_matches_structure():
    t = BinaryTree.from_insertions([2, 1, 3])
    s = shape_of(t)
    assert s.size == 3
    assert signature(s) == "((--)(--))"


@given(st.permutations(list(range(1, 11))))
def test_bst_round_trip_any_permutation(perm):
    t = BinaryTree.from_insertions(perm)
    t.validate(search_order=True)
    assert serialize(parse(serialize(t))) == serialize(t)


@given(st.lists(st.integers(min_value=1, max_value=8), min_size=1,
                max_size=8))
def test_recursive_round_trip_any_parent_vector(raw):
    parents = [min(p, i + 1) for i, p in enumerate(raw)]
    t = RecursiveTree.from_parents(parents)
    t.validate()
    assert serialize(parse(serialize(t))) == serialize(t)
