"""Graphviz DOT output: Hasse diagrams, not full relations.

Posets are drawn by their cover relation (transitive reduction).  For
non-T0 spaces the covers of the KQ poset are drawn between class
representatives and the members of each class are tied together with
dashed double edges.
"""

from . import bits
from .finposet import FinPoset
from .topology import kq


def _node_label(labels, i):
    return labels[i] if labels is not None else str(i)


def _poset_lines(P, prefix=""):
    lines = []
    for i in range(P.n):
        lines.append(f'  "{prefix}{i}" [label="{_node_label(P.labels, i)}"];')
    for i, j in P.covers():
        lines.append(f'  "{prefix}{i}" -> "{prefix}{j}";')
    return lines


def poset_dot(P, name="poset"):
    body = "\n".join(_poset_lines(P))
    return f'digraph "{name}" {{\n  rankdir=BT;\n{body}\n}}\n'


def _space_lines(X, prefix=""):
    lines = []
    for x in range(X.n):
        lines.append(f'  "{prefix}{x}" [label="{_node_label(X.labels, x)}"];')
    K = kq(X)
    reps = [(c & -c).bit_length() - 1 for c in K.classes]
    for a, b in K.poset.covers():
        lines.append(f'  "{prefix}{reps[a]}" -> "{prefix}{reps[b]}";')
    for c in K.classes:
        members = list(bits.bits(c))
        for x, y in zip(members, members[1:]):
            lines.append(
                f'  "{prefix}{x}" -> "{prefix}{y}" [dir=both, style=dashed];'
            )
    return lines


def space_dot(X, name="space"):
    body = "\n".join(_space_lines(X))
    return f'digraph "{name}" {{\n  rankdir=BT;\n{body}\n}}\n'


def spaces_dot(named, name="spaces"):
    """Several spaces in one digraph, one cluster per (title, space) pair."""
    chunks = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for k, (title, X) in enumerate(named):
        chunks.append(f'  subgraph "cluster_{k}" {{')
        chunks.append(f'    label="{title}";')
        chunks.extend("  " + line for line in _space_lines(X, prefix=f"s{k}_"))
        chunks.append("  }")
    chunks.append("}")
    return "\n".join(chunks) + "\n"


def lattice_order_poset(L):
    """The element order of a lattice as a poset labelled by generator sets."""
    rows = []
    for i in range(len(L)):
        r = 0
        for j in range(len(L)):
            if L.le(i, j):
                r |= 1 << j
        rows.append(r)
    labels = []
    for m in L.elements:
        names = [
            L.ji.labels[p] if L.ji.labels is not None else f"p{p}"
            for p in bits.bits(m)
        ]
        labels.append("{" + ",".join(names) + "}")
    return FinPoset(len(L), tuple(rows), tuple(labels))


def lattice_dot(L, name="lattice"):
    """Hasse diagram of the element order, elements shown as generator sets."""
    return poset_dot(lattice_order_poset(L), name)
