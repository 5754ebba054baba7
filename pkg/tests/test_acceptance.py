"""Acceptance suite: one test (and one pass/fail line) per criterion.

Criteria 1-4: exact oracle equalities.  5-7: series/ODE cross-validation.
8-9: root-finding and epsilon asymptotics.  10-11: compacted BST.  12-14:
statistical scaling.  15: figure rendering.  Statistical tolerances were
calibrated once by frozen pilot runs; see the data package file.
"""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from treecompact import analytics, cbst, experiments
from treecompact.analytics import (expected_size_series, max_plane_weight,
                                   max_weight_plane_shape, random_plane_shape,
                                   series_S_t, series_T, u_root, u_series,
                                   weight)
from treecompact.compactor import compact
from treecompact.enumerator import (enumerate_shapes,
                                    expected_size_bruteforce,
                                    labelings_bruteforce)
from treecompact.sampler import SplitMix64, derive_seed, sample_bst
from treecompact.trees import (PLANE, POLYA, BinaryTree, leaf_shape,
                               path_shape)


def test_criterion_01_expected_size_exact():
    for family in ("recursive", "bst"):
        for n in range(1, 9):
            assert expected_size_series(family, n) == \
                expected_size_bruteforce(family, n), (family, n)
    assert expected_size_series("recursive", 3) == Fraction(5, 2)
    assert expected_size_series("bst", 3) == Fraction(8, 3)


def test_criterion_02_labeling_counts_exact():
    for mode in (POLYA, PLANE):
        for k in range(1, 9):
            for shape in enumerate_shapes(mode, k):
                assert weight(shape).ell == labelings_bruteforce(shape)
    for k in range(1, 10):
        total = sum(weight(s).ell for s in enumerate_shapes(POLYA, k))
        assert total == math.factorial(k - 1)


def test_criterion_03_weight_sum_rules():
    for k in range(1, 11):
        assert sum(weight(s).w for s in enumerate_shapes(POLYA, k)) \
            == Fraction(1, k)
        assert sum(weight(s).w for s in enumerate_shapes(PLANE, k)) == 1


def test_criterion_04_max_weights_and_bound():
    table = [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 8),
             Fraction(1, 15), Fraction(1, 36), Fraction(1, 63)]
    assert [max_plane_weight(k) for k in range(1, 8)] == table
    for k in range(2, 13):
        bound = Fraction(1, 2 ** (k - 2))
        for shape in enumerate_shapes(PLANE, k):
            assert weight(shape).w <= bound, (k, shape)


def test_criterion_05_u_series_cross_validation():
    rng = random.Random(0xACCE)
    seen = set()
    for _ in range(50):
        k = rng.randint(2, 10)
        shape = random_plane_shape(k, rng)
        ws = weight(shape)
        key = (ws.k, ws.w)
        a = u_series(shape, order=200, method="bessel")
        b = u_series(shape, order=200, method="ode")
        assert a.coeffs == b.coeffs, key
        assert a.coeffs[0] == -1 and a.coeffs[1] == 0
        seen.add(key)
    assert len(seen) >= 10  # genuine coverage across (k, w) classes


def test_criterion_06_leaf_series_vanish():
    for family, mode in (("recursive", POLYA), ("bst", PLANE)):
        s = series_S_t(family, leaf_shape(mode), 200)
        assert all(c == 0 for c in s.coeffs)


def test_criterion_07_coefficient_ratio_matches_singularity():
    n = 400
    for shape in enumerate_shapes(PLANE, 4):
        ws = weight(shape)
        s = series_S_t("bst", shape, n + 1)
        ratio = float(s[n + 1] / s[n])
        res = u_root(k=4, w=ws.w, tol="1e-40")
        expected = float(1 / res.rho)
        assert abs(ratio - expected) / expected < 0.01, ws.w


def test_criterion_08_polya_bound_and_residuals():
    for k in range(2, 9):
        for w in sorted({weight(s).w for s in enumerate_shapes(POLYA, k)}):
            res = analytics.g_root_kw(k, w, tol="1e-35")
            assert res.residual < mpmath.mpf("1e-30"), (k, w)
            assert 0 < res.epsilon < 2 * mpmath.mpf(w.numerator) \
                / w.denominator / k, (k, w)


def test_criterion_09_epsilon_asymptotics():
    # recursive model, path shapes: epsilon*k/w increases toward 1
    norms = []
    for k in (8, 16, 32):
        w = weight(path_shape(POLYA, k)).w
        digits = len(str(w.denominator)) + 25
        res = analytics.g_root_kw(k, w, tol=f"1e-{digits}")
        norms.append(float(res.epsilon) * k / float(w))
    assert norms[0] < norms[1] < norms[2]
    assert 0.85 <= norms[2] <= 1.15
    # binary model, max-weight shapes: epsilon*k^2/(2w) lands in [0.7, 1.3]
    for k in range(8, 13):
        w = max_plane_weight(k)
        res = u_root(k=k, w=w, tol="1e-35")
        norm = float(res.epsilon) * k * k / (2 * float(w))
        assert 0.7 <= norm <= 1.3, (k, norm)


def test_criterion_10_cbst_golden_example():
    tree = BinaryTree.from_insertions([4, 8, 6, 2, 9, 1, 3, 7, 5])
    c = cbst.build(tree)
    assert sorted(c.values) == [1, 2, 4, 8]
    assert sorted(c.dag.sizes[s] for s in c.shape_ids) == [1, 3, 5, 9]
    lists = sorted(list(labels) for _, labels in c.redirects)
    assert lists == [[3], [6, 5, 7], [9]]
    hit = cbst.search(c, 7)
    assert hit.found and hit.comparisons == 4
    assert hit.additions == 1  # the single i := i+2 index step
    miss = cbst.search(c, 10)
    assert not miss.found and miss.comparisons == 3
    assert cbst.unfold(c) == tree


def test_criterion_11_cbst_randomized_equivalence():
    rng = SplitMix64(0xBEEF)
    for trial in range(10_000):
        n = rng.below(512) + 1
        tree = sample_bst(n, derive_seed(0xBEEF, trial))
        c = cbst.build(tree)
        assert cbst.unfold(c) == tree
        for _ in range(100):
            q = rng.below(n + 4)  # mix of present and absent keys
            plain = cbst.plain_search(tree, q)
            comp = cbst.search(c, q)
            assert plain.found == comp.found
            assert plain.comparisons == comp.comparisons
            assert comp.additions <= comp.comparisons


def test_criterion_12_means_inside_pilot_bands():
    bands = experiments.load_pilot_bands()
    anchors = {("recursive", 500): 250, ("recursive", 5000): 663,
               ("bst", 500): 172, ("bst", 5000): 1361}
    problems = []
    for (family, n), anchor in anchors.items():
        records = experiments.run_scaling(family, [n], 200, seed=0xACCE12)
        mean = sum(r[4] for r in records) / len(records)
        band = bands[(family, n)]
        if not band.contains(mean):
            problems.append(f"{family} n={n}: mean {mean:.1f} outside {band}")
        # the frozen band must contain the single-sample anchor value
        if not band.contains(anchor):
            problems.append(f"{family} n={n}: anchor {anchor} outside {band}")
    assert not problems, problems


def test_criterion_13_nlogn_scaling_and_exact_growth():
    sizes = [1 << p for p in range(10, 18)]
    for family in ("recursive", "bst"):
        records = experiments.run_scaling(family, sizes, 6, seed=0xACCE13)
        _, r2 = experiments.fit_nlogn(records)
        assert r2 >= 0.95, (family, r2)
    for family in ("recursive", "bst"):
        previous = Fraction(0)
        for n in range(1, 13):
            value = expected_size_series(family, n)
            assert (2 if n >= 2 else 1) <= value <= n
            assert value > previous  # strict growth
            previous = value


def test_criterion_14_footprint_ratio_curve():
    sizes = range(250, 20001, 250)
    records = experiments.run_fig5(sizes=sizes, trials=2, seed=0xACCE14,
                                   queries=10)
    by_n = {}
    for row in records:
        by_n.setdefault(row[0], []).append(row[4])
    ns = sorted(by_n)
    ys = [sum(v) / len(v) for n in ns for v in [by_n[n]]]
    # decreasing trend: every 8-point block average beats the next one
    blocks = [sum(ys[i:i + 8]) / len(ys[i:i + 8])
              for i in range(0, len(ys), 8)]
    problems = []
    if not all(a > b for a, b in zip(blocks, blocks[1:])):
        problems.append(f"ratio curve not decreasing: {blocks}")
    if not ys[-1] < 0.6:
        problems.append(f"ratio at n=20000 is {ys[-1]:.3f}, not < 0.6")
    _, r2 = experiments.fit_inverse_log(ns, ys)
    if not r2 >= 0.9:
        problems.append(f"alpha/ln(x) fit has R^2 = {r2:.3f}, not >= 0.9")
    assert not problems, problems


def test_criterion_15_plots_render_and_alpha():
    treeplots = pytest.importorskip("treeplots")
    import tempfile, os
    with tempfile.TemporaryDirectory() as tmp:
        scaling = experiments.run_scaling("bst", [256, 512, 1024, 2048, 4096],
                                          4, seed=0xACCE15)
        scaling_csv = os.path.join(tmp, "scaling.csv")
        experiments.write_csv(scaling_csv, experiments.SCALING_HEADER, scaling)
        fig5 = experiments.run_fig5(sizes=range(500, 8001, 500), trials=2,
                                    seed=0xACCE15, queries=10)
        fig5_csv = os.path.join(tmp, "fig5.csv")
        experiments.write_csv(fig5_csv, experiments.FIG5_HEADER, fig5)
        lemma = experiments.run_lemma_sweep(POLYA, range(2, 6))
        lemma_csv = os.path.join(tmp, "lemma.csv")
        experiments.write_csv(lemma_csv, experiments.LEMMA_HEADER, lemma)

        results = {}
        for kind, csv_path in (("fig5-ratio", fig5_csv),
                               ("fig5-cost", fig5_csv),
                               ("scaling", scaling_csv),
                               ("lemma", lemma_csv)):
            out = os.path.join(tmp, kind + ".png")
            results[kind] = treeplots.render(csv_path, kind, out)
            assert os.path.getsize(out) > 0
        by_n = {}
        for row in fig5:
            by_n.setdefault(row[0], []).append(row[4])
        ns = sorted(by_n)
        ys = [sum(v) / len(v) for n in ns for v in [by_n[n]]]
        alpha, _ = experiments.fit_inverse_log(ns, ys)
        assert abs(results["fig5-ratio"].alpha - alpha) < 1e-6
