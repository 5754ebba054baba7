"""Compaction toolkit for recursive trees and binary search trees.

Builds and compacts random logarithmic-depth trees into the DAG of their
distinct fringe subtree shapes, verifies the underlying generating-function
quantities exactly at small scale, and provides a lossless compacted BST
with index-walk search.
"""

from .compactor import Dag, compact, compaction_ratio
from .trees import (BinaryTree, RecursiveTree, parse, serialize, shape_of,
                    signature)

__all__ = [
    "BinaryTree", "RecursiveTree", "Dag",
    "compact", "compaction_ratio",
    "parse", "serialize", "shape_of", "signature",
]

__version__ = "0.1.0"
