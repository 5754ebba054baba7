"""Batch studies writing versioned CSV records.

Three record schemas (the header row is the schema):

* scaling:  family,n,trial,seed,x_compact,ratio,x_norm
* fig5:     n,trial,bytes_plain,bytes_compact,ratio,cmp_plain,cmp_compact,adds
* lemma:    mode,k,shape_sig,w_num,w_den,epsilon,normalized,bound_ok

Per-trial seeds derive from the master seed and the trial index, so
reruns are byte-identical regardless of worker count (records are sorted
before writing).
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

from . import cbst
from .analytics import g_root_kw, max_plane_weight, u_root, weight
from .compactor import compact
from .enumerator import enumerate_shapes
from .sampler import SplitMix64, derive_seed, sample_bst, sample_recursive
from .trees import PLANE, POLYA, signature

SCALING_HEADER = ["family", "n", "trial", "seed", "x_compact", "ratio",
                  "x_norm"]
FIG5_HEADER = ["n", "trial", "bytes_plain", "bytes_compact", "ratio",
               "cmp_plain", "cmp_compact", "adds"]
LEMMA_HEADER = ["mode", "k", "shape_sig", "w_num", "w_den", "epsilon",
                "normalized", "bound_ok"]


_FAMILY_TAG = {"recursive": 1, "bst": 2, "fig5": 3}


def _trial_seed(seed: int, tag: str, n: int, trial: int) -> int:
    if tag not in _FAMILY_TAG:
        raise ValueError(f"unknown family {tag!r}")
    return derive_seed(derive_seed(derive_seed(seed, _FAMILY_TAG[tag]), n),
                       trial)


def _sample(family: str, n: int, seed: int):
    if family == "recursive":
        return sample_recursive(n, seed), POLYA
    if family == "bst":
        return sample_bst(n, seed), PLANE
    raise ValueError(f"unknown family {family!r}")


def compacted_size(family: str, n: int, seed: int) -> int:
    tree, mode = _sample(family, n, seed)
    return len(compact(tree, mode))


def _map_tasks(fn, tasks, jobs: int) -> list:
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks, chunksize=4))
    return [fn(task) for task in tasks]


def _scaling_row(task) -> list:
    family, n, trial, trial_seed = task
    x = compacted_size(family, n, trial_seed)
    return [family, n, trial, trial_seed, x, x / n,
            x * math.log(n) / n if n > 1 else float(x)]


def run_scaling(family: str, sizes, trials: int, seed: int,
                jobs: int = 1) -> list:
    """Compacted size X, ratio X/n and normalized X ln(n)/n per trial."""
    tasks = [(family, n, trial, _trial_seed(seed, family, n, trial))
             for n in sizes for trial in range(trials)]
    records = _map_tasks(_scaling_row, tasks, jobs)
    records.sort(key=lambda r: (r[0], r[1], r[2]))
    return records


def fit_nlogn(records) -> tuple:
    """Least-squares fit of mean X against alpha * n / ln n.

    Accepts scaling records (or any rows with n at index 1 and X at index
    4).  Requires at least 5 distinct sizes spanning two octaves.  Returns
    (alpha, r_squared).
    """
    by_n: dict = {}
    for row in records:
        by_n.setdefault(int(row[1]), []).append(float(row[4]))
    sizes = sorted(by_n)
    if len(sizes) < 5 or sizes[-1] < 4 * sizes[0]:
        raise ValueError("need >= 5 sizes spanning >= 2 octaves")
    xs = [sum(v) / len(v) for n in sizes for v in [by_n[n]]]
    ps = [n / math.log(n) for n in sizes]
    alpha = sum(p * x for p, x in zip(ps, xs)) / sum(p * p for p in ps)
    mean_x = sum(xs) / len(xs)
    ss_res = sum((x - alpha * p) ** 2 for p, x in zip(ps, xs))
    ss_tot = sum((x - mean_x) ** 2 for x in xs)
    return alpha, 1.0 - ss_res / ss_tot if ss_tot else 1.0


def fit_inverse_log(ns, ys) -> tuple:
    """Least-squares fit of y against alpha / ln(n); returns (alpha, R^2)."""
    ps = [1.0 / math.log(n) for n in ns]
    alpha = sum(p * y for p, y in zip(ps, ys)) / sum(p * p for p in ps)
    mean_y = sum(ys) / len(ys)
    ss_res = sum((y - alpha * p) ** 2 for p, y in zip(ps, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    return alpha, 1.0 - ss_res / ss_tot if ss_tot else 1.0


def _fig5_row(task) -> list:
    n, trial, trial_seed, queries = task
    tree = sample_bst(n, trial_seed)
    compacted = cbst.build(tree)
    bytes_plain = cbst.footprint(tree)
    bytes_compact = cbst.footprint(compacted)
    rng = SplitMix64(derive_seed(trial_seed, 1))
    cmp_plain = cmp_compact = adds = 0
    for _ in range(queries):
        q = rng.below(n) + 1  # keys are exactly 1..n, all present
        plain = cbst.plain_search(tree, q)
        comp = cbst.search(compacted, q)
        if (not plain.found or not comp.found
                or plain.comparisons != comp.comparisons):
            raise AssertionError(
                "compacted search disagrees with the plain BST")
        cmp_plain += plain.comparisons
        cmp_compact += comp.comparisons
        adds += comp.additions
    return [n, trial, bytes_plain, bytes_compact,
            bytes_compact / bytes_plain,
            cmp_plain / queries, cmp_compact / queries, adds / queries]


def run_fig5(sizes=None, trials: int = 30, seed: int = 0,
             queries: int = 1000, jobs: int = 1) -> list:
    """Footprint ratio and mean search operation counts per sampled BST.

    Defaults: sizes 250..20000 in steps of 250, 30 trees per size, 1000
    random present-key queries each.
    """
    if sizes is None:
        sizes = range(250, 20001, 250)
    tasks = [(n, trial, _trial_seed(seed, "fig5", n, trial), queries)
             for n in sizes for trial in range(trials)]
    records = _map_tasks(_fig5_row, tasks, jobs)
    records.sort(key=lambda r: (r[0], r[1]))
    return records


def run_lemma_sweep(mode: str, k_range, tol="1e-35") -> list:
    """Per shape: its weight, the singularity offset epsilon, the
    normalized ratio (epsilon*k/w for Polya, epsilon*k^2/(2w) for plane
    max-weight shapes) and whether the crude bound epsilon < 2w/k holds."""
    records = []
    for k in k_range:
        if k < 2:
            continue
        if mode == POLYA:
            cache: dict = {}  # (k, w) -> result columns; S_t depends only on them
            for shape in enumerate_shapes(POLYA, k):
                ws = weight(shape)
                sig = signature(shape)
                if ws.w not in cache:
                    try:
                        res = g_root_kw(k, ws.w, tol)
                        eps = float(res.epsilon)
                        cache[ws.w] = (eps, eps * k / float(ws.w),
                                       res.epsilon < 2 * _mpf_frac(ws.w) / k)
                    except Exception as exc:  # recorded per row, not fatal
                        cache[ws.w] = ("", "", f"error:{exc}")
                records.append([POLYA, k, sig, ws.w.numerator,
                                ws.w.denominator, *cache[ws.w]])
        elif mode == PLANE:
            w = max_plane_weight(k)
            try:
                res = u_root(k=k, w=w, tol=tol)
            except Exception as exc:
                records.append([PLANE, k, "max-weight", w.numerator,
                                w.denominator, "", "", f"error:{exc}"])
                continue
            eps = float(res.epsilon)
            normalized = eps * k * k / (2 * float(w))
            bound_ok = res.epsilon < 2 * _mpf_frac(w) / k
            records.append([PLANE, k, "max-weight", w.numerator,
                            w.denominator, eps, normalized, bound_ok])
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return records


def _mpf_frac(w):
    import mpmath
    return mpmath.mpf(int(w.numerator)) / int(w.denominator)


def write_csv(path: str, header, records) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(records)


@dataclass
class Band:
    lo: float
    hi: float

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def load_pilot_bands() -> dict:
    """Frozen acceptance bands for mean compacted sizes, calibrated once
    by a 1000-trial pilot (band = mean +/- 5 sd)."""
    import json
    path = os.path.join(os.path.dirname(__file__), "data", "pilot_bands.json")
    with open(path) as handle:
        raw = json.load(handle)
    return {(family, int(n)): Band(*pair)
            for family, per_n in raw["mean_bands"].items()
            for n, pair in per_n.items()}
