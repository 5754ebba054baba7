#!/usr/bin/env python3
"""Walk through the compacted BST on a 9-element example.

Builds the BST for the insertion order (4, 8, 6, 2, 9, 1, 3, 7, 5),
compacts it, prints the retained head and the redirect lists, and then
traces a few searches, comparing operation counts against the plain tree.
"""

from treecompact import cbst
from treecompact.trees import BinaryTree

INSERTIONS = [4, 8, 6, 2, 9, 1, 3, 7, 5]


def main() -> None:
    tree = BinaryTree.from_insertions(INSERTIONS)
    compacted = cbst.build(tree)

    print(f"BST on {tree.n} values, insertion order {INSERTIONS}")
    print(f"distinct fringe shapes: {len(compacted)}")
    print()
    print("retained head (value, subtree size):")
    for value, sid in zip(compacted.values, compacted.shape_ids):
        print(f"  {value:>3}  size {compacted.dag.sizes[sid]}")
    print()
    print("redirect lists (preorder labels of the erased subtrees):")
    for sid, labels in compacted.redirects:
        print(f"  shape of size {compacted.dag.sizes[sid]}: {list(labels)}")
    print()

    plain_bytes = cbst.footprint(tree)
    compact_bytes = cbst.footprint(compacted)
    print(f"canonical footprint: plain {plain_bytes} B, "
          f"compacted {compact_bytes} B "
          f"(ratio {compact_bytes / plain_bytes:.2f} — overhead wins at "
          f"this tiny size; see the scaling demo)")
    print()

    for query in (7, 10, 4, 5):
        plain = cbst.plain_search(tree, query)
        comp = cbst.search(compacted, query)
        state = "found" if comp.found else "absent"
        print(f"search({query}): {state:6}  comparisons plain={plain.comparisons} "
              f"compacted={comp.comparisons}  index additions={comp.additions}")
    print()

    assert cbst.unfold(compacted) == tree
    print("unfold(build(tree)) reproduced the original tree exactly.")


if __name__ == "__main__":
    main()
