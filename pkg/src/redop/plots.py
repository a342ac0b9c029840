"""Figures written next to CLI reports."""

from __future__ import annotations

import math
import os
from collections import Counter
from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .linear import format_scalar  # noqa: E402

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_matrices(operators: Dict[str, object], path: str, title: str = "") -> str:
    """Heat maps of operator matrices (column j = image of the j-th generator)."""
    names = list(operators)
    cols = min(4, len(names))
    rows = math.ceil(len(names) / cols)
    n = len(next(iter(operators.values())).basis)
    size = max(2.2, 0.45 * n)
    fig, axes = plt.subplots(rows, cols, figsize=(size * cols, size * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, name in zip(axes.flat, names):
        op = operators[name]
        m = op.matrix()
        vals = [[float(c) for c in row] for row in m]
        ax.imshow(vals, cmap="coolwarm", vmin=-1, vmax=1)
        if n <= 12:
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c:
                        ax.text(j, i, format_scalar(c), ha="center", va="center", fontsize=8)
            labels = [str(g) for g in op.basis]
            ax.set_xticks(range(n), labels, fontsize=7, rotation=90)
            ax.set_yticks(range(n), labels, fontsize=7)
            ax.axis("on")
        ax.set_title(name, fontsize=10)
    fig.subplots_adjust(hspace=0.45)
    if title:
        fig.suptitle(title)
    return _save(fig, path)


def plot_rewriting_graph(operators: Dict[str, object], path: str, dashed: Sequence[str] = ()) -> str:
    """Generators on a vertical axis, one arrow ``g -> h`` per ``h`` in ``supp(T(g))``."""
    names = list(operators)
    basis = next(iter(operators.values())).basis
    n = len(basis)
    fig, ax = plt.subplots(figsize=(5, max(3, 0.6 * n)))
    for k, g in enumerate(basis):
        ax.text(0, k, str(g), ha="center", va="center",
                bbox=dict(boxstyle="round", fc="white", ec="0.5"))
    handles = []
    for c, name in enumerate(names):
        color = _COLORS[c % len(_COLORS)]
        style = "--" if name in dashed else "-"
        op = operators[name]
        bend = 0.25 + 0.12 * c
        for g, img in op.action.items():
            src = basis.rank(g)
            for h in img.support():
                dst = basis.rank(h)
                ax.add_patch(FancyArrowPatch((0.08, src), (0.08, dst), arrowstyle="-|>",
                                             connectionstyle=f"arc3,rad={-bend}", color=color,
                                             linestyle=style, mutation_scale=10, shrinkA=6, shrinkB=6))
        handles.append(plt.Line2D([], [], color=color, linestyle=style, label=name))
    ax.set_xlim(-0.6, 1.6)
    ax.set_ylim(-0.8, n - 0.2)
    ax.axis("off")
    if handles:
        ax.legend(handles=handles, loc="upper right", fontsize=8, frameon=False)
    return _save(fig, path)


def plot_normal_form_profile(series: Dict[str, Sequence], degree_bound: int, path: str) -> str:
    """Count of normal-form monomials per degree for each named generator set."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.8 / max(1, len(series))
    for k, (label, monomials) in enumerate(series.items()):
        counts = Counter(m.degree for m in monomials)
        xs = [d + (k - (len(series) - 1) / 2) * width for d in range(degree_bound + 1)]
        ax.bar(xs, [counts.get(d, 0) for d in range(degree_bound + 1)], width=width, label=label)
    ax.set_xlabel("degree")
    ax.set_ylabel("normal-form monomials")
    ax.set_xticks(range(degree_bound + 1))
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)
