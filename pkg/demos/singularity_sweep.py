#!/usr/bin/env python3
"""Weights, avoidance singularities, and the crude bound.

For each shape size k, every shape carries a weight w = ell/k! (ell is its
number of increasing labelings).  The generating function of the trees
avoiding that shape as a fringe subtree has its dominant singularity at
1 + epsilon, with epsilon < 2w/k always, epsilon ~ w/k for Polya path
shapes and epsilon ~ 2w/k^2 for plane max-weight shapes.  This demo prints
the sweep so the normalized columns can be eyeballed drifting toward 1.
"""

from treecompact.analytics import (g_root_kw, max_plane_weight, u_root,
                                   weight)
from treecompact.enumerator import enumerate_shapes
from treecompact.trees import POLYA, path_shape, signature


def main() -> None:
    print("Polya shapes, exhaustive for k <= 6:")
    print(f"  {'k':>2} {'shape':<16} {'w':>8} {'epsilon':>12} "
          f"{'eps*k/w':>8} {'bound ok':>8}")
    for k in range(2, 7):
        for shape in enumerate_shapes(POLYA, k):
            ws = weight(shape)
            res = g_root_kw(k, ws.w, tol="1e-30")
            eps = float(res.epsilon)
            normalized = eps * k / float(ws.w)
            ok = eps < 2 * float(ws.w) / k
            print(f"  {k:>2} {signature(shape):<16} {str(ws.w):>8} "
                  f"{eps:>12.3e} {normalized:>8.4f} {str(ok):>8}")
    print()

    print("Polya path shapes (normalized ratio climbing toward 1):")
    for k in (8, 12, 16, 24, 32):
        ws = weight(path_shape(POLYA, k))
        digits = len(str(ws.w.denominator)) + 25
        res = g_root_kw(k, ws.w, tol=f"1e-{digits}")
        print(f"  k={k:>2}  eps*k/w = {float(res.epsilon) * k / float(ws.w):.6f}")
    print()

    print("plane max-weight shapes (eps*k^2/(2w)):")
    for k in range(4, 13):
        w = max_plane_weight(k)
        res = u_root(k=k, w=w, tol="1e-35")
        norm = float(res.epsilon) * k * k / (2 * float(w))
        print(f"  k={k:>2}  w={str(w):>8}  normalized = {norm:.4f}")


if __name__ == "__main__":
    main()
