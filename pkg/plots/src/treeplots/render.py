"""Render experiment CSV logs to static figures.

The input contract is the versioned CSV schema of the experiments runner
(the header row); anything else is a :class:`SchemaError`.  Output is
deterministic for identical input: fixed figure size, default fonts, no
timestamps.  Costs on the fig5-cost plot are operation counts, not wall
clock.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

SCALING_HEADER = ["family", "n", "trial", "seed", "x_compact", "ratio",
                  "x_norm"]
FIG5_HEADER = ["n", "trial", "bytes_plain", "bytes_compact", "ratio",
               "cmp_plain", "cmp_compact", "adds"]
LEMMA_HEADER = ["mode", "k", "shape_sig", "w_num", "w_den", "epsilon",
                "normalized", "bound_ok"]

KINDS = ("fig5-ratio", "fig5-cost", "scaling", "lemma")

_FIGSIZE = (7.0, 4.5)


class SchemaError(ValueError):
    """CSV header does not match the expected versioned schema."""


@dataclass
class RenderResult:
    kind: str
    out_path: str
    points: int
    alpha: float | None = None


def _load(csv_path: str, header: list) -> list:
    with open(csv_path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise SchemaError(f"{csv_path}: empty file")
    if rows[0] != header:
        raise SchemaError(
            f"{csv_path}: header {rows[0]!r} does not match {header!r}")
    if len(rows) == 1:
        raise SchemaError(f"{csv_path}: no records")
    return rows[1:]


def _fit_inverse_log(ns, ys):
    """Least-squares y = alpha / ln(n); identical formula to the
    experiments runner so the reported alpha agrees with it."""
    ps = [1.0 / math.log(n) for n in ns]
    return sum(p * y for p, y in zip(ps, ys)) / sum(p * p for p in ps)


def _group_means(pairs):
    by_key: dict = {}
    for key, value in pairs:
        by_key.setdefault(key, []).append(value)
    keys = sorted(by_key)
    return keys, [sum(by_key[k]) / len(by_key[k]) for k in keys]


def _render_fig5_ratio(rows, out_path: str) -> RenderResult:
    ns, ratios = _group_means((int(r[0]), float(r[4])) for r in rows)
    alpha = _fit_inverse_log(ns, ratios)
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(ns, ratios, "o-", markersize=3, label="measured ratio")
    ax.plot(ns, [alpha / math.log(n) for n in ns], "--",
            label=f"fit: {alpha:.4f} / ln x")
    ax.set_xlabel("n")
    ax.set_ylabel("compacted / plain bytes")
    ax.set_title("Compression ratio")
    ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return RenderResult("fig5-ratio", out_path, len(ns), alpha)


def _render_fig5_cost(rows, out_path: str) -> RenderResult:
    ns, cmp_plain = _group_means((int(r[0]), float(r[5])) for r in rows)
    _, cmp_compact = _group_means((int(r[0]), float(r[6])) for r in rows)
    _, adds = _group_means((int(r[0]), float(r[7])) for r in rows)
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(ns, cmp_plain, "o-", markersize=3, label="comparisons, plain")
    ax.plot(ns, cmp_compact, "x--", markersize=4,
            label="comparisons, compacted")
    ax.plot(ns, adds, "s-", markersize=3, label="index additions")
    ax.set_xlabel("n")
    ax.set_ylabel("mean operations per query")
    ax.set_title("Search cost (operation counts)")
    ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return RenderResult("fig5-cost", out_path, len(ns))


def _render_scaling(rows, out_path: str) -> RenderResult:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    count = 0
    for family in sorted({r[0] for r in rows}):
        ns, norms = _group_means((int(r[1]), float(r[6]))
                                 for r in rows if r[0] == family)
        ax.plot(ns, norms, "o-", markersize=3, label=family)
        count += len(ns)
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("X ln(n) / n")
    ax.set_title("Normalized compacted size")
    ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return RenderResult("scaling", out_path, count)


def _render_lemma(rows, out_path: str) -> RenderResult:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    count = 0
    for mode in sorted({r[0] for r in rows}):
        ks, epss, bounds = [], [], []
        for r in rows:
            if r[0] != mode or not r[5]:
                continue
            k, w = int(r[1]), int(r[3]) / int(r[4])
            ks.append(k)
            epss.append(float(r[5]))
            bounds.append(2 * w / k)
        ax.scatter(ks, epss, s=12, label=f"epsilon ({mode})")
        ax.scatter(ks, bounds, s=12, marker="_",
                   label=f"bound 2w/k ({mode})")
        count += len(ks)
    ax.set_yscale("log")
    ax.set_xlabel("shape size k")
    ax.set_ylabel("epsilon")
    ax.set_title("Singularity offsets against the crude bound")
    ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return RenderResult("lemma", out_path, count)


def render(csv_path: str, kind: str, out_path: str) -> RenderResult:
    """Render one CSV log to an image file; returns figure metadata
    (including the fitted alpha for the fig5-ratio kind)."""
    if kind == "fig5-ratio":
        return _render_fig5_ratio(_load(csv_path, FIG5_HEADER), out_path)
    if kind == "fig5-cost":
        return _render_fig5_cost(_load(csv_path, FIG5_HEADER), out_path)
    if kind == "scaling":
        return _render_scaling(_load(csv_path, SCALING_HEADER), out_path)
    if kind == "lemma":
        return _render_lemma(_load(csv_path, LEMMA_HEADER), out_path)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
