"""Figures for FP-trees and likelihood tables (written to files, never shown)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from fpnb.fpgrowth import FPNode, FPTree  # noqa: E402
from fpnb.nbmodel import ClassModel  # noqa: E402

__all__ = ["tree_layout", "plot_fp_tree", "plot_likelihoods"]


def tree_layout(tree: FPTree) -> dict[FPNode, tuple[float, float]]:
    """x by leaf order (parents centred over children), y = -depth."""
    pos: dict[FPNode, tuple[float, float]] = {}
    next_leaf = [0.0]

    def place(node: FPNode, depth: int) -> float:
        kids = sorted(node.children.values(), key=lambda c: tree.rank(c.item))
        if not kids:
            x = next_leaf[0]
            next_leaf[0] += 1.0
        else:
            xs = [place(k, depth + 1) for k in kids]
            x = (xs[0] + xs[-1]) / 2
        pos[node] = (x, -float(depth))
        return x

    place(tree.root, 0)
    return pos


def plot_fp_tree(tree: FPTree, path: str | Path, title: str | None = None, node_links: bool = True) -> Path:
    pos = tree_layout(tree)
    width = max(4.0, 1.3 * (max(x for x, _ in pos.values()) + 2))
    height = max(3.0, 1.1 * (1 - min(y for _, y in pos.values())) + 1)
    fig, ax = plt.subplots(figsize=(width, height))

    for node, (x, y) in pos.items():
        for child in node.children.values():
            cx, cy = pos[child]
            ax.plot([x, cx], [y, cy], color="black", lw=1, zorder=1)
    if node_links:
        for item in tree.item_order:
            chain = list(tree.header[item].nodes())
            for a, b in zip(chain, chain[1:]):
                (ax_, ay), (bx, by) = pos[a], pos[b]
                ax.annotate(
                    "", xy=(bx, by), xytext=(ax_, ay),
                    arrowprops=dict(arrowstyle="->", ls="--", color="tab:blue",
                                    connectionstyle="arc3,rad=0.25", lw=0.8),
                    zorder=0,
                )
    for node, (x, y) in pos.items():
        label = "null" if node is tree.root else f"{node.item}:{node.count}"
        ax.text(x, y, label, ha="center", va="center", fontsize=9, zorder=2,
                bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="black", lw=0.8))

    header = "\n".join(f"{it}: {tree.header[it].support}" for it in tree.item_order)
    if header:
        ax.text(1.02, 1.0, "header\n" + header, transform=ax.transAxes, ha="left", va="top",
                fontsize=8, family="monospace")
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    ax.margins(0.15)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_likelihoods(model: ClassModel, path: str | Path) -> Path:
    """Horizontal grouped bars: one row per word set, one bar per class."""
    labels = ["{" + ", ".join(s) + "}" for s in model.vocabulary]
    k = len(model.classes)
    bar = 0.8 / k
    fig, ax = plt.subplots(figsize=(7, 0.3 * len(labels) + 1.5))
    for j, cls in enumerate(model.classes):
        values = [model.likelihood(s, cls) for s in model.vocabulary]
        ax.barh([i + j * bar for i in range(len(labels))], values, height=bar, label=cls)
    ax.set_yticks([i + bar * (k - 1) / 2 for i in range(len(labels))])
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("P(word set | class)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
