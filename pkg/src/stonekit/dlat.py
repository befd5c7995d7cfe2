"""Finite distributive lattices in Birkhoff normal form.

Every lattice here is stored as the downset lattice of its poset of
join-irreducible elements: elements are downset bitmasks, join is union,
meet is intersection, and equality is structural.  Table input and
sublattices are renormalized into this form, so two constructions agree
exactly whenever they are equal, not merely isomorphic.
"""

from dataclasses import dataclass, field

from . import bits
from .errors import (
    BoundsViolated,
    InternalError,
    NotALattice,
    NotDistributive,
    NotJoinPreserving,
    NotMeetPreserving,
    NotMonotone,
)
from .finposet import (
    FinPoset,
    antichain,
    chain,
    disjoint_union,
    downsets,
    opposite as opposite_poset,
)


@dataclass(frozen=True)
class DistLattice:
    """Downset lattice of the join-irreducible poset `ji`.

    elements[i] is a downset mask over ji's elements; the list is sorted by
    (size, mask), which forces bottom (the empty downset) to index 0 and top
    (everything) to the last index.
    """

    ji: FinPoset
    elements: tuple
    bottom: int
    top: int

    def __post_init__(self):
        elems = self.elements
        if not elems:
            raise ValueError("a lattice must contain 0 and 1")
        full = (1 << self.ji.n) - 1
        index = {}
        prev_key = (-1, -1)
        for i, m in enumerate(elems):
            if m & ~full:
                raise ValueError("element mentions unknown join-irreducibles")
            key = (m.bit_count(), m)
            if key <= prev_key:
                raise ValueError("elements not in canonical (size, mask) order")
            prev_key = key
            for p in bits.bits(m):
                if self.ji.down(p) & ~m:
                    raise ValueError(f"element {i} is not a downset of ji")
            index[m] = i
        if self.bottom != 0 or elems[0] != 0:
            raise ValueError("bottom must be the empty downset at index 0")
        if self.top != len(elems) - 1 or elems[-1] != full:
            raise ValueError("top must be the full downset at the last index")
        for a in elems:
            for b in elems:
                if (a | b) not in index or (a & b) not in index:
                    raise ValueError("elements are not closed under join and meet")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.elements)

    def le(self, i, j):
        return self.elements[i] & ~self.elements[j] == 0

    def join(self, i, j):
        return self._index[self.elements[i] | self.elements[j]]

    def meet(self, i, j):
        return self._index[self.elements[i] & self.elements[j]]

    def index_of(self, mask):
        return self._index[mask]

    def __repr__(self):
        return f"DistLattice({len(self.elements)} elements, ji={self.ji.n})"


def from_birkhoff(P, cap=None):
    """Downset lattice of P; P becomes the poset of join-irreducibles."""
    elems = tuple(downsets(P, cap))
    return DistLattice(P, elems, 0, len(elems) - 1)


def trivial():
    """The one-element lattice (0 = 1)."""
    return from_birkhoff(antichain(0))


def two():
    """The two-element lattice 0 < 1."""
    return from_birkhoff(antichain(1))


def boolean(k):
    """The Boolean lattice with 2**k elements."""
    return from_birkhoff(antichain(k))


def chain_lattice(k):
    """The totally ordered lattice with k elements (k >= 1)."""
    if k < 1:
        raise ValueError("a chain lattice needs at least one element")
    return from_birkhoff(chain(k - 1))


@dataclass(frozen=True)
class LatticeMap:
    """Map preserving join, meet, 0 and 1, validated on construction.

    The checks run in a fixed order (monotone, bounds, joins, meets) so the
    reported violation is deterministic.
    """

    src: DistLattice
    dst: DistLattice
    assignment: tuple

    def __post_init__(self):
        n = len(self.src)
        a = self.assignment
        if len(a) != n:
            raise ValueError(f"map must be total on {n} elements")
        for x, y in enumerate(a):
            if not 0 <= y < len(self.dst):
                raise IndexError(f"f({x}) = {y} out of range")
        src, dst = self.src, self.dst
        for i in range(n):
            for j in range(n):
                if src.le(i, j) and not dst.le(a[i], a[j]):
                    raise NotMonotone(
                        f"{i} <= {j} but f({i}) = {a[i]} is not <= f({j}) = {a[j]}",
                        witness=(i, j),
                    )
        if a[src.bottom] != dst.bottom:
            raise BoundsViolated(
                f"f(0) = {a[src.bottom]} is not the bottom", witness=src.bottom
            )
        if a[src.top] != dst.top:
            raise BoundsViolated(
                f"f(1) = {a[src.top]} is not the top", witness=src.top
            )
        for i in range(n):
            for j in range(n):
                if a[src.join(i, j)] != dst.join(a[i], a[j]):
                    raise NotJoinPreserving((i, j))
        for i in range(n):
            for j in range(n):
                if a[src.meet(i, j)] != dst.meet(a[i], a[j]):
                    raise NotMeetPreserving((i, j))

    def __call__(self, i):
        return self.assignment[i]

    def then(self, g):
        """Composite x -> g(self(x))."""
        return LatticeMap(
            self.src, g.dst, tuple(g.assignment[y] for y in self.assignment)
        )

    def is_bijective(self):
        return len(self.src) == len(self.dst) and len(set(self.assignment)) == len(
            self.assignment
        )

    def inverse(self):
        """Inverse map; bijective lattice morphisms are isomorphisms."""
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * len(self.dst)
        for x, y in enumerate(self.assignment):
            inv[y] = x
        return LatticeMap(self.dst, self.src, tuple(inv))


def validate_lattice_map(src, dst, assignment):
    """Check an assignment for the lattice morphism laws and wrap it."""
    return LatticeMap(src, dst, tuple(assignment))


def identity_lattice_map(L):
    return LatticeMap(L, L, tuple(range(len(L))))


@dataclass(frozen=True)
class Ideal:
    """Nonempty, down-closed, join-closed subset of element indices."""

    lattice: DistLattice = field(compare=False)
    carrier: frozenset

    def members(self):
        return sorted(self.carrier)


@dataclass(frozen=True)
class PrimeIdeal(Ideal):
    """Proper ideal with a&b in I implying a in I or b in I."""


def is_ideal(L, subset):
    s = frozenset(subset)
    if not s:
        return False
    for a in s:
        for b in range(len(L)):
            if L.le(b, a) and b not in s:
                return False
        for b in s:
            if L.join(a, b) not in s:
                return False
    return True


def is_prime_ideal(L, subset):
    s = frozenset(subset)
    if not is_ideal(L, s) or len(s) == len(L):
        return False
    for a in range(len(L)):
        if a in s:
            continue
        for b in range(len(L)):
            if b not in s and L.meet(a, b) in s:
                return False
    return True


def prime_ideals(L):
    """The spectrum, one prime ideal per join-irreducible generator.

    For a Birkhoff-form lattice the prime ideals are exactly
    I_p = { S : p not in S } with p a join-irreducible; the list is returned
    in generator order, which fixes the point order of the spectrum.
    """
    out = []
    for p in range(L.ji.n):
        carrier = frozenset(
            i for i, m in enumerate(L.elements) if not m >> p & 1
        )
        out.append(PrimeIdeal(L, carrier))
    return out


def elements_poset(L):
    """The underlying order of L's elements as a FinPoset."""
    rows = []
    for i in range(len(L)):
        r = 0
        for j in range(len(L)):
            if L.le(i, j):
                r |= 1 << j
        rows.append(r)
    return FinPoset(len(L), tuple(rows))


def prime_ideals_bruteforce(L):
    """Independent oracle: filter candidate subsets by the raw axioms.

    Small lattices get the literal all-subsets filter; larger ones first
    enumerate down-closed subsets of the element order (every ideal is one),
    which keeps the search output-bounded without touching the fast path's
    join-irreducible structure.
    """
    n = len(L)
    if n <= 16:
        cands = (
            frozenset(i for i in range(n) if s >> i & 1) for s in range(1 << n)
        )
    else:
        cands = (
            frozenset(bits.bits(m)) for m in downsets(elements_poset(L), cap=1 << 24)
        )
    found = [s for s in cands if is_prime_ideal(L, s)]
    found.sort(key=lambda s: (len(s), sorted(s)))
    return [PrimeIdeal(L, s) for s in found]


def sublattice(L, carrier):
    """Renormalize a join/meet-closed carrier with bounds to Birkhoff form.

    Returns (E, to_ambient) where to_ambient[e] is the L-index of E's
    element e.  Raises ValueError if the carrier is not a sublattice with
    0 and 1, and InternalError if the Birkhoff reconstruction fails (which
    would contradict distributivity of sublattices).
    """
    c = sorted(set(carrier))
    cs = set(c)
    if L.bottom not in cs or L.top not in cs:
        raise ValueError("carrier does not contain both bounds")
    for x in c:
        for y in c:
            if L.join(x, y) not in cs:
                raise ValueError(f"carrier not join-closed at ({x}, {y})")
            if L.meet(x, y) not in cs:
                raise ValueError(f"carrier not meet-closed at ({x}, {y})")
    gens = []
    for x in c:
        j = L.bottom
        for y in c:
            if y != x and L.le(y, x):
                j = L.join(j, y)
        if j != x:
            gens.append(x)
    rows = []
    for g in gens:
        r = 0
        for k, g2 in enumerate(gens):
            if L.le(g, g2):
                r |= 1 << k
        rows.append(r)
    E = from_birkhoff(FinPoset(len(gens), tuple(rows)))
    if len(E) != len(c):
        raise InternalError("sublattice is not spanned by its join-irreducibles")
    to_ambient = [None] * len(E)
    for x in c:
        mask = 0
        for k, g in enumerate(gens):
            if L.le(g, x):
                mask |= 1 << k
        e = E.index_of(mask)
        if to_ambient[e] is not None:
            raise InternalError("Birkhoff embedding of sublattice is not injective")
        to_ambient[e] = x
    return E, tuple(to_ambient)


def equalizer(alpha, beta):
    """Equalizer of two parallel lattice maps, created from the set level.

    The carrier is literally { x : alpha(x) = beta(x) }; the forgetful
    functor creates limits, so it must be a sublattice containing 0 and 1.
    A failure of that check raises InternalError.  Returns the equalizer in
    Birkhoff form together with its inclusion map.
    """
    if alpha.src != beta.src or alpha.dst != beta.dst:
        raise ValueError("parallel maps must share source and target")
    L = alpha.src
    carrier = [x for x in range(len(L)) if alpha(x) == beta(x)]
    try:
        E, to_ambient = sublattice(L, carrier)
    except ValueError as e:  # pragma: no cover - limit creation trap
        raise InternalError(f"equalizer carrier is not a sublattice: {e}")
    try:
        incl = LatticeMap(E, L, to_ambient)
    except Exception as e:  # pragma: no cover - limit creation trap
        raise InternalError(f"equalizer inclusion is not a lattice map: {e}")
    return E, incl


def product(L1, L2, cap=None):
    """Product lattice with projections; ji poset is the disjoint union."""
    P = disjoint_union(L1.ji, L2.ji)
    L = from_birkhoff(P, cap)
    m1 = L1.ji.n
    low = (1 << m1) - 1
    p1 = LatticeMap(L, L1, tuple(L1.index_of(m & low) for m in L.elements))
    p2 = LatticeMap(L, L2, tuple(L2.index_of(m >> m1) for m in L.elements))
    return L, p1, p2


def opposite(L):
    """Order-reversed lattice, renormalized to Birkhoff form.

    Complementation identifies downsets of the opposite ji poset with the
    opposite of the downset lattice, so this is from_birkhoff(ji^op).
    """
    return from_birkhoff(opposite_poset(L.ji))


def finite_elements(L):
    """All elements: in a finite lattice every element is a finite one.

    Kept so the compact/finite-element accessor has a home even though it
    degenerates at this scale.
    """
    return list(range(len(L)))


def to_tables(L):
    """Export meet/join tables (the import format of from_tables)."""
    n = len(L)
    return {
        "n": n,
        "meet": [[L.meet(i, j) for j in range(n)] for i in range(n)],
        "join": [[L.join(i, j) for j in range(n)] for i in range(n)],
        "bot": L.bottom,
        "top": L.top,
    }


def from_tables(n, meet, join, bot, top):
    """Validate meet/join tables and renormalize to Birkhoff form.

    Checks commutativity, idempotence, associativity, absorption, the bound
    laws, and distributivity, reporting the first failing tuple.  Returns
    (lattice, witness) with witness[a] the index of table element a in the
    normalized lattice.
    """
    if n < 1:
        raise ValueError("a lattice must contain 0 and 1")
    for name, t in (("meet", meet), ("join", join)):
        if len(t) != n or any(len(row) != n for row in t):
            raise ValueError(f"{name} table is not {n}x{n}")
        for row in t:
            for v in row:
                if not 0 <= v < n:
                    raise IndexError(f"{name} table entry {v} out of range")
    if not 0 <= bot < n or not 0 <= top < n:
        raise IndexError("bot or top out of range")
    for a in range(n):
        if meet[a][a] != a:
            raise NotALattice("meet idempotence", (a,))
        if join[a][a] != a:
            raise NotALattice("join idempotence", (a,))
        for b in range(n):
            if meet[a][b] != meet[b][a]:
                raise NotALattice("meet commutativity", (a, b))
            if join[a][b] != join[b][a]:
                raise NotALattice("join commutativity", (a, b))
            if meet[a][join[a][b]] != a:
                raise NotALattice("absorption a&(a|b)=a", (a, b))
            if join[a][meet[a][b]] != a:
                raise NotALattice("absorption a|(a&b)=a", (a, b))
    for a in range(n):
        if join[a][bot] != a or meet[a][bot] != bot:
            raise NotALattice("bottom laws", (a,))
        if meet[a][top] != a or join[a][top] != top:
            raise NotALattice("top laws", (a,))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    raise NotALattice("meet associativity", (a, b, c))
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    raise NotALattice("join associativity", (a, b, c))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    raise NotDistributive((a, b, c))

    def le(a, b):
        return meet[a][b] == a

    gens = []
    for x in range(n):
        j = bot
        for y in range(n):
            if y != x and le(y, x):
                j = join[j][y]
        if x != bot and j != x:
            gens.append(x)
    rows = []
    for g in gens:
        r = 0
        for k, g2 in enumerate(gens):
            if le(g, g2):
                r |= 1 << k
        rows.append(r)
    L = from_birkhoff(FinPoset(len(gens), tuple(rows)))
    if len(L) != n:
        raise InternalError(
            "join-irreducibles do not span a validated distributive lattice"
        )
    witness = []
    for a in range(n):
        mask = 0
        for k, g in enumerate(gens):
            if le(g, a):
                mask |= 1 << k
        witness.append(L.index_of(mask))
    if len(set(witness)) != n:
        raise InternalError("Birkhoff witness is not a bijection")
    for a in range(n):
        for b in range(n):
            if witness[meet[a][b]] != L.meet(witness[a], witness[b]):
                raise InternalError("Birkhoff witness breaks a meet")
            if witness[join[a][b]] != L.join(witness[a], witness[b]):
                raise InternalError("Birkhoff witness breaks a join")
    return L, tuple(witness)
