"""JSON schemas for every artifact the CLI reads and writes.

Values that name another artifact (a space inside a fork file, a lattice
inside a map file) may be given inline as an object or as a string path,
resolved relative to the containing file.  Emission is normalized: full
closed relations as sorted non-reflexive pairs, sorted keys, two-space
indent, trailing newline; re-parsing and re-emitting is byte-idempotent.
"""

import json
import os

from .descent import CoeqProblem, DescentDiagram, GroupAction
from .dlat import DistLattice, LatticeMap, from_birkhoff, from_tables
from .finposet import FinPoset, validate_poset
from .fork import ForkDiagram, LadderDiagram
from .topology import EquivRelation, FinSpace, SpectralMap, partition, validate_space


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_file(path):
    with open(path) as fh:
        return json.load(fh)


def _resolve(node, base):
    if isinstance(node, str):
        path = os.path.join(base, node)
        return load_file(path), os.path.dirname(path)
    return node, base


def _relation_pairs(n, rows):
    out = []
    for i in range(n):
        for j in range(n):
            if i != j and rows[i] >> j & 1:
                out.append([i, j])
    return out


def parse_poset(obj, base="."):
    obj, _ = _resolve(obj, base)
    return validate_poset(obj["n"], obj.get("leq", []), obj.get("labels"))


def emit_poset(P):
    out = {"n": P.n, "leq": _relation_pairs(P.n, P.leq)}
    if P.labels is not None:
        out["labels"] = list(P.labels)
    return out


def parse_space(obj, base="."):
    obj, _ = _resolve(obj, base)
    return validate_space(obj["n"], obj.get("pre", []), obj.get("labels"))


def emit_space(X):
    out = {"n": X.n, "pre": _relation_pairs(X.n, X.pre)}
    if X.labels is not None:
        out["labels"] = list(X.labels)
    return out


def parse_lattice(obj, base="."):
    obj, base = _resolve(obj, base)
    if "birkhoff" in obj:
        return from_birkhoff(parse_poset(obj["birkhoff"], base))
    if "tables" in obj:
        t = obj["tables"]
        lattice, _ = from_tables(t["n"], t["meet"], t["join"], t["bot"], t["top"])
        return lattice
    raise ValueError("lattice file needs a 'birkhoff' or 'tables' key")


def emit_lattice(L):
    return {"birkhoff": emit_poset(L.ji)}


def parse_lattice_map(obj, base="."):
    obj, base = _resolve(obj, base)
    src = parse_lattice(obj["src"], base)
    dst = parse_lattice(obj["dst"], base)
    return LatticeMap(src, dst, tuple(obj["assign"]))


def parse_coeq_problem(obj, base="."):
    obj, base = _resolve(obj, base)
    z = parse_space(obj["z"], base)
    y = parse_space(obj["y"], base)
    g = SpectralMap(z, y, tuple(obj["g"]))
    h = SpectralMap(z, y, tuple(obj["h"]))
    return CoeqProblem(z, y, g, h)


def parse_relation(obj, X, base="."):
    obj, _ = _resolve(obj, base)
    return partition(X, obj["classes"])


def parse_action(obj, base="."):
    obj, base = _resolve(obj, base)
    space = parse_space(obj["space"], base)
    return GroupAction(space, tuple(tuple(g) for g in obj["elements"]))


def _parse_fork(obj):
    return ForkDiagram(
        obj["x0"],
        obj["x1"],
        obj["x2"],
        tuple(obj["f"]),
        tuple(obj["alpha"]),
        tuple(obj["beta"]),
        tuple(obj["u"]) if "u" in obj else None,
        tuple(obj["v"]) if "v" in obj else None,
    )


def parse_fork_file(obj, base="."):
    """A bare fork, or a ladder tagged with the lemma it is meant for.

    Returns ("fork", ForkDiagram) or (lemma_name, LadderDiagram) with
    lemma_name one of "injective" / "retraction".
    """
    obj, _ = _resolve(obj, base)
    if "lemma" not in obj:
        return "fork", _parse_fork(obj)
    lemma = obj["lemma"]
    if lemma not in ("injective", "retraction"):
        raise ValueError(f"unknown lemma {lemma!r}")
    ladder = LadderDiagram(
        _parse_fork(obj["top"]),
        _parse_fork(obj["bottom"]),
        tuple(obj["i0"]),
        tuple(obj["i1"]),
        tuple(obj["i2"]),
        tuple(obj["r0"]) if "r0" in obj else None,
        tuple(obj["r1"]) if "r1" in obj else None,
        tuple(obj["r2"]) if "r2" in obj else None,
    )
    return lemma, ladder


def parse_descent_diagram(obj, base="."):
    obj, base = _resolve(obj, base)
    l0 = parse_lattice(obj["l0"], base)
    l1 = parse_lattice(obj["l1"], base)
    l2 = parse_lattice(obj["l2"], base)
    return DescentDiagram(
        l0,
        l1,
        l2,
        LatticeMap(l0, l1, tuple(obj["f"])),
        LatticeMap(l1, l2, tuple(obj["alpha"])),
        LatticeMap(l1, l2, tuple(obj["beta"])),
        tuple(obj["u"]),
        tuple(obj["v"]),
    )
