"""Matplotlib rendering of Hasse diagrams and corpus summaries to files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import bits
from .topology import kq


def _heights(P):
    order = sorted(range(P.n), key=lambda i: P.down(i).bit_count())
    h = [0] * P.n
    for x in order:
        below = P.down(x) & ~(1 << x)
        h[x] = 1 + max((h[y] for y in bits.bits(below)), default=-1)
    return h


def _layout(P):
    h = _heights(P)
    by_level = {}
    pos = {}
    for x in range(P.n):
        by_level.setdefault(h[x], []).append(x)
    for level, xs in sorted(by_level.items()):
        for k, x in enumerate(xs):
            pos[x] = (k - (len(xs) - 1) / 2.0, level)
    return pos


def draw_space(ax, X, title):
    """Hasse diagram of the KQ poset; class members share one node label."""
    K = kq(X)
    P = K.poset
    pos = _layout(P) if P.n else {}
    for a, b in P.covers():
        (x1, y1), (x2, y2) = pos[a], pos[b]
        ax.plot([x1, x2], [y1, y2], color="0.55", lw=1.2, zorder=1)
    for c in range(P.n):
        x, y = pos[c]
        members = list(bits.bits(K.classes[c]))
        if X.labels is not None:
            text = "|".join(X.labels[m] for m in members)
        else:
            text = "|".join(str(m) for m in members)
        multi = len(members) > 1
        ax.scatter(
            [x], [y], s=260, zorder=2,
            facecolor="#ffd27f" if multi else "#9fcdff",
            edgecolor="black",
        )
        ax.annotate(text, (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_title(f"{title} ({X.n} pts{'' if X.is_t0() else ', not T0'})", fontsize=9)
    ax.set_axis_off()
    ax.margins(0.25)


def render_spaces(path, named):
    """One figure with a panel per (title, space); writes `path`."""
    named = list(named)
    fig, axes = plt.subplots(
        1, max(1, len(named)), figsize=(3.2 * max(1, len(named)), 3.2)
    )
    if len(named) <= 1:
        axes = [axes]
    for ax, (title, X) in zip(axes, named):
        draw_space(ax, X, title)
    for ax in axes[len(named):]:
        ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_corpus(path, results):
    """Bar chart of cases and failures per suite; writes `path`."""
    names = [r.name for r in results]
    cases = [r.cases for r in results]
    failures = [len(r.failures) for r in results]
    xs = range(len(names))
    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(names)), 4))
    ax.bar(xs, cases, color="#9fcdff", label="cases")
    ax.bar(xs, failures, color="#e26d5a", label="failures")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_yscale("symlog")
    ax.set_ylabel("count")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
