"""Finite posets with downset machinery and exact isomorphism search.

Elements are indices 0..n-1.  The order relation is stored closed, one
bitmask row per element (bit j of leq[i] set iff i <= j).  Downsets double
as the element carrier of every distributive lattice in this package, so
their enumeration order is pinned: sorted by size, then by bitmask value.
"""

import os
from dataclasses import dataclass, field

from . import bits
from .errors import CycleError, NotMonotone, SizeError

DEFAULT_DOWNSET_CAP = 1 << 20
_CAP_ENV = "STONEKIT_MAX_DOWNSETS"


def downset_cap():
    """Active enumeration cap; the STONEKIT_MAX_DOWNSETS env var overrides."""
    raw = os.environ.get(_CAP_ENV)
    return int(raw) if raw else DEFAULT_DOWNSET_CAP


@dataclass(frozen=True)
class FinPoset:
    """Immutable partial order on {0..n-1}; leq rows must arrive closed."""

    n: int
    leq: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative element count")
        if len(self.leq) != self.n:
            raise ValueError(f"{len(self.leq)} relation rows for {self.n} elements")
        full = (1 << self.n) - 1
        for r in self.leq:
            if r & ~full:
                raise ValueError("relation row mentions elements out of range")
        if not bits.is_closed(self.n, self.leq):
            raise ValueError("relation is not reflexively and transitively closed")
        bad = bits.antisymmetry_violation(self.n, self.leq)
        if bad is not None:
            raise CycleError(f"antisymmetry fails at {bad}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count differs from element count")
        object.__setattr__(self, "_down", bits.transpose(self.n, self.leq))

    def le(self, i, j):
        return self.leq[i] >> j & 1 == 1

    def up(self, i):
        """Mask of elements >= i (inclusive)."""
        return self.leq[i]

    def down(self, i):
        """Mask of elements <= i (inclusive)."""
        return self._down[i]

    def covers(self):
        """Hasse pairs (i, j): i < j with nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.leq[i] & ~(1 << i)
            for j in bits.bits(strict):
                if strict & self._down[j] & ~(1 << j) == 0:
                    out.append((i, j))
        return out

    def __repr__(self):
        return f"FinPoset({self.n}, covers={self.covers()})"


def validate_poset(n, pairs, labels=None):
    """Close generator pairs reflexively and transitively into a poset.

    Raises IndexError if a pair mentions an element outside 0..n-1 and
    CycleError if the closure would identify two distinct elements.
    """
    if n < 0:
        raise ValueError("negative element count")
    rows = [0] * n
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"pair ({x}, {y}) out of range for n={n}")
        rows[x] |= 1 << y
    closed = bits.close_reflexive_transitive(n, rows)
    bad = bits.antisymmetry_violation(n, closed)
    if bad is not None:
        raise CycleError(f"generators force {bad[0]} <= {bad[1]} <= {bad[0]}")
    return FinPoset(n, closed, tuple(labels) if labels is not None else None)


def chain(n):
    return validate_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    return validate_poset(n, [])


def opposite(P):
    """Order reversed on the same element indices; an exact involution."""
    return FinPoset(P.n, bits.transpose(P.n, P.leq), P.labels)


def disjoint_union(P, Q):
    """P and Q side by side; Q's elements are shifted up by P.n."""
    rows = list(P.leq) + [r << P.n for r in Q.leq]
    labels = None
    if P.labels is not None and Q.labels is not None:
        labels = P.labels + Q.labels
    return FinPoset(P.n + Q.n, tuple(rows), labels)


def linear_extension(P):
    """A topological order (all predecessors first), ties broken by index."""
    return sorted(range(P.n), key=lambda i: (P.down(i).bit_count(), i))


def downsets(P, cap=None):
    """Every down-closed subset of P as a bitmask, sorted by (size, mask).

    The scan walks a linear extension, so each intermediate set is already a
    downset of P and the work is linear in the output.  Raises SizeError if
    more than `cap` downsets would be produced (default downset_cap()).
    """
    limit = downset_cap() if cap is None else cap
    found = [0]
    for x in linear_extension(P):
        need = P.down(x) & ~(1 << x)
        bit = 1 << x
        grown = [s | bit for s in found if need & ~s == 0]
        if len(found) + len(grown) > limit:
            raise SizeError(f"more than {limit} downsets (cap exceeded)")
        found.extend(grown)
    found.sort(key=lambda s: (s.bit_count(), s))
    return found


def _profiles(P):
    """Per-element order invariants, refined twice through neighborhoods."""
    prof = [(P.down(i).bit_count(), P.up(i).bit_count()) for i in range(P.n)]
    for _ in range(2):
        prof = [
            (
                prof[i],
                tuple(sorted(prof[j] for j in bits.bits(P.down(i)))),
                tuple(sorted(prof[j] for j in bits.bits(P.up(i)))),
            )
            for i in range(P.n)
        ]
    return prof


def is_isomorphic(P, Q):
    """An order-isomorphism witness P -> Q as an index tuple, or None.

    Exact backtracking over profile-compatible candidates; elements are
    assigned in index order and candidates tried lowest-index first, so the
    witness is deterministic.  Note the empty witness () for empty posets is
    falsy: compare against None, not by truth value.
    """
    if P.n != Q.n:
        return None
    pp, qq = _profiles(P), _profiles(Q)
    if sorted(pp) != sorted(qq):
        return None
    cand = [[j for j in range(Q.n) if qq[j] == pp[i]] for i in range(P.n)]
    assign = [-1] * P.n
    used = [False] * Q.n

    def compatible(i, j):
        for k in range(i):
            if P.le(k, i) != Q.le(assign[k], j):
                return False
            if P.le(i, k) != Q.le(j, assign[k]):
                return False
        return True

    def search(i):
        if i == P.n:
            return True
        for j in cand[i]:
            if not used[j] and compatible(i, j):
                assign[i] = j
                used[j] = True
                if search(i + 1):
                    return True
                used[j] = False
        return False

    return tuple(assign) if search(0) else None


def _check_assignment(name, assignment, src_n, dst_n):
    if len(assignment) != src_n:
        raise ValueError(f"{name} must be total on {src_n} elements")
    for x, y in enumerate(assignment):
        if not 0 <= y < dst_n:
            raise IndexError(f"{name}({x}) = {y} out of range")


@dataclass(frozen=True)
class MonotoneMap:
    """Order-preserving map between posets, checked on construction."""

    src: FinPoset
    dst: FinPoset
    assignment: tuple

    def __post_init__(self):
        _check_assignment("map", self.assignment, self.src.n, self.dst.n)
        a = self.assignment
        for i in range(self.src.n):
            for j in bits.bits(self.src.leq[i]):
                if not self.dst.le(a[i], a[j]):
                    raise NotMonotone(
                        f"{i} <= {j} but f({i}) = {a[i]} is not <= f({j}) = {a[j]}",
                        witness=(i, j),
                    )

    def __call__(self, i):
        return self.assignment[i]

    def then(self, g):
        """Composite x -> g(self(x))."""
        return MonotoneMap(
            self.src, g.dst, tuple(g.assignment[y] for y in self.assignment)
        )
