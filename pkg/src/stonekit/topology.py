"""Finite topological spaces as preorders.

Convention: the specialization preorder has x <= y iff y lies in the closure
of {x}.  Open sets are then exactly the down-closed subsets and closed sets
the up-closed ones; complement swaps the two.  A map between finite spaces
is continuous iff it is monotone for these preorders, and every continuous
map between finite spaces is spectral.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from . import bits
from .errors import InternalError, NotMonotone, NotT0, OracleMismatch
from .finposet import FinPoset, downsets as poset_downsets


@dataclass(frozen=True)
class FinSpace:
    """Finite space via its specialization preorder; cycles are allowed."""

    n: int
    pre: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative point count")
        if len(self.pre) != self.n:
            raise ValueError(f"{len(self.pre)} relation rows for {self.n} points")
        full = (1 << self.n) - 1
        for r in self.pre:
            if r & ~full:
                raise ValueError("relation row mentions points out of range")
        if not bits.is_closed(self.n, self.pre):
            raise ValueError("preorder is not reflexively and transitively closed")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count differs from point count")
        object.__setattr__(self, "_down", bits.transpose(self.n, self.pre))

    def le(self, x, y):
        return self.pre[x] >> y & 1 == 1

    def up(self, x):
        """Closure of the point x as a mask."""
        return self.pre[x]

    def down(self, x):
        """Smallest open set containing x, as a mask."""
        return self._down[x]

    def closure_of(self, mask):
        out = 0
        for x in bits.bits(mask):
            out |= self.pre[x]
        return out

    def is_open(self, mask):
        for y in bits.bits(mask):
            if self._down[y] & ~mask:
                return False
        return True

    def is_closed_set(self, mask):
        for x in bits.bits(mask):
            if self.pre[x] & ~mask:
                return False
        return True

    def is_t0(self):
        return bits.antisymmetry_violation(self.n, self.pre) is None

    def __repr__(self):
        return f"FinSpace({self.n}, pre={[tuple(bits.bits(r)) for r in self.pre]})"


def validate_space(n, pairs, labels=None):
    """Close generator pairs into a preorder; cycles are permitted."""
    if n < 0:
        raise ValueError("negative point count")
    rows = [0] * n
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"pair ({x}, {y}) out of range for n={n}")
        rows[x] |= 1 << y
    return FinSpace(
        n,
        bits.close_reflexive_transitive(n, rows),
        tuple(labels) if labels is not None else None,
    )


def space_of_poset(P):
    return FinSpace(P.n, P.leq, P.labels)


def poset_of_space(X):
    if not X.is_t0():
        raise NotT0("space has topologically indistinguishable points")
    return FinPoset(X.n, X.pre, X.labels)


def disjoint_union_spaces(spaces):
    """Coproduct space; returns (space, offsets) with block offsets."""
    offsets = []
    rows = []
    total = 0
    labelled = all(X.labels is not None for X in spaces) and spaces
    labels = [] if labelled else None
    for X in spaces:
        offsets.append(total)
        rows.extend(r << total for r in X.pre)
        if labelled:
            labels.extend(X.labels)
        total += X.n
    return (
        FinSpace(total, tuple(rows), tuple(labels) if labelled else None),
        tuple(offsets),
    )


@dataclass(frozen=True)
class SpectralMap:
    """Continuous (= preorder-monotone) map between finite spaces."""

    src: FinSpace
    dst: FinSpace
    assignment: tuple

    def __post_init__(self):
        if len(self.assignment) != self.src.n:
            raise ValueError(f"map must be total on {self.src.n} points")
        a = self.assignment
        for x, y in enumerate(a):
            if not 0 <= y < self.dst.n:
                raise IndexError(f"f({x}) = {y} out of range")
        for x in range(self.src.n):
            for y in bits.bits(self.src.pre[x]):
                if not self.dst.le(a[x], a[y]):
                    raise NotMonotone(
                        f"not continuous: {x} <= {y} but f({x}) = {a[x]} "
                        f"is not <= f({y}) = {a[y]}",
                        witness=(x, y),
                    )

    def __call__(self, x):
        return self.assignment[x]

    def then(self, g):
        """Composite x -> g(self(x))."""
        return SpectralMap(
            self.src, g.dst, tuple(g.assignment[y] for y in self.assignment)
        )

    def image_mask(self, mask):
        out = 0
        for x in bits.bits(mask):
            out |= 1 << self.assignment[x]
        return out

    def preimage_mask(self, mask):
        out = 0
        for x, y in enumerate(self.assignment):
            if mask >> y & 1:
                out |= 1 << x
        return out

    def is_bijective(self):
        return self.src.n == self.dst.n and len(set(self.assignment)) == self.src.n

    def inverse(self):
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.dst.n
        for x, y in enumerate(self.assignment):
            inv[y] = x
        return SpectralMap(self.dst, self.src, tuple(inv))

    def is_homeomorphism(self):
        if not self.is_bijective():
            return False
        inv = [0] * self.dst.n
        for x, y in enumerate(self.assignment):
            inv[y] = x
        for x in range(self.dst.n):
            for y in bits.bits(self.dst.pre[x]):
                if not self.src.le(inv[x], inv[y]):
                    return False
        return True


def identity_map(X):
    return SpectralMap(X, X, tuple(range(X.n)))


def closure(X, mask):
    """Topological closure of a point set, as a mask."""
    return X.closure_of(mask)


class KQ(NamedTuple):
    poset: FinPoset
    projection: SpectralMap
    classes: tuple


def _merged_labels(labels, classes):
    if labels is None:
        return None
    return tuple("|".join(labels[x] for x in bits.bits(c)) for c in classes)


def kq(X):
    """Kolmogorov quotient: collapse points with equal closures.

    Classes are listed by least member; the induced relation on classes is
    automatically a partial order.
    """
    classes = []
    class_of = [0] * X.n
    seen = 0
    for x in range(X.n):
        if seen >> x & 1:
            continue
        c = X.up(x) & X.down(x)
        for m in bits.bits(c):
            class_of[m] = len(classes)
        classes.append(c)
        seen |= c
    k = len(classes)
    rows = []
    for a in range(k):
        rep = (classes[a] & -classes[a]).bit_length() - 1
        r = 0
        for b in range(k):
            other = (classes[b] & -classes[b]).bit_length() - 1
            if X.le(rep, other):
                r |= 1 << b
        rows.append(r)
    poset = FinPoset(k, tuple(rows), _merged_labels(X.labels, classes))
    projection = SpectralMap(X, space_of_poset(poset), tuple(class_of))
    return KQ(poset, projection, tuple(classes))


@dataclass(frozen=True)
class ReflectionReport:
    t0: bool
    unit_injective: bool
    unit_surjective: bool
    unit_homeomorphism: bool


def spectral_reflection(X):
    """Reflection into spectral spaces; for finite X this is the KQ quotient.

    Every finite T0 space is a noetherian spectral space, so the unit is a
    homeomorphism exactly when X is already T0, is injective iff X is T0,
    and is always surjective.
    """
    K = kq(X)
    t0 = X.is_t0()
    report = ReflectionReport(
        t0=t0, unit_injective=t0, unit_surjective=True, unit_homeomorphism=t0
    )
    return K.projection.dst, K.projection, report


@dataclass(frozen=True)
class EquivRelation:
    """Partition of a space's points; classes canonical by least member."""

    space: FinSpace
    classes: tuple

    def __post_init__(self):
        total = 0
        prev = -1
        for c in self.classes:
            if c == 0:
                raise ValueError("empty class")
            if c & total:
                raise ValueError("classes overlap")
            least = (c & -c).bit_length() - 1
            if least <= prev:
                raise ValueError("classes not sorted by least member")
            prev = least
            total |= c
        if total != (1 << self.space.n) - 1:
            raise ValueError("classes do not cover all points")
        class_of = [0] * self.space.n
        for i, c in enumerate(self.classes):
            for x in bits.bits(c):
                class_of[x] = i
        object.__setattr__(self, "_class_of", tuple(class_of))

    def class_index(self, x):
        return self._class_of[x]

    def class_mask(self, x):
        return self.classes[self._class_of[x]]


def partition(X, blocks):
    """EquivRelation from an iterable of iterables of points."""
    masks = sorted(bits.mask_of(b) for b in blocks if bits.mask_of(b))
    masks.sort(key=lambda c: (c & -c).bit_length())
    return EquivRelation(X, tuple(masks))


def equiv_from_pairs(X, pairs):
    """Smallest equivalence relation containing the given pairs."""
    parent = list(range(X.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    blocks = {}
    for x in range(X.n):
        blocks.setdefault(find(x), []).append(x)
    return partition(X, blocks.values())


def saturation(X, R, mask):
    """Union of the classes meeting the set: the smallest invariant superset."""
    out = 0
    for c in R.classes:
        if c & mask:
            out |= c
    return out


def open_sets(X):
    """All open subsets as point masks, in the canonical lattice order.

    Opens correspond to downsets of the KQ poset; the order here matches the
    element order of omega(X) exactly.
    """
    K = kq(X)
    out = []
    for s in poset_downsets(K.poset):
        m = 0
        for c in bits.bits(s):
            m |= K.classes[c]
        out.append(m)
    return tuple(out)


def _direct_quotient_opens(X, R):
    """Oracle: subsets of classes whose preimage is open, by exhaustion."""
    k = len(R.classes)
    out = []
    for sub in range(1 << k):
        pre = 0
        for i in bits.bits(sub):
            pre |= R.classes[i]
        if X.is_open(pre):
            out.append(sub)
    return sorted(out)


def quotient(X, R, *, oracle="auto", oracle_limit=12):
    """Quotient space of X by the partition R, with its projection.

    The relation on classes is the reflexive-transitive closure of the
    projected point relation.  Below `oracle_limit` classes (or always, with
    oracle="on") the opens of the constructed space are compared against the
    direct quotient-topology definition; disagreement raises OracleMismatch.
    """
    if R.space != X:
        raise ValueError("relation is defined on a different space")
    k = len(R.classes)
    rows = [0] * k
    for x in range(X.n):
        cx = R.class_index(x)
        for y in bits.bits(X.pre[x]):
            rows[cx] |= 1 << R.class_index(y)
    closed = bits.close_reflexive_transitive(k, rows)
    Q = FinSpace(k, closed, _merged_labels(X.labels, R.classes))
    proj = SpectralMap(X, Q, tuple(R.class_index(x) for x in range(X.n)))
    if oracle == "on" or (oracle == "auto" and k <= oracle_limit):
        direct = _direct_quotient_opens(X, R)
        constructed = sorted(open_sets(Q))
        if direct != constructed:
            diff = set(direct) ^ set(constructed)
            raise OracleMismatch(
                f"quotient opens disagree with the direct definition at "
                f"class masks {sorted(diff)}"
            )
    return Q, proj


def topological_coequalizer(g, h, *, oracle="auto", oracle_limit=12):
    """Coequalizer in spaces: quotient of the target by the generated relation."""
    if g.src != h.src or g.dst != h.dst:
        raise ValueError("parallel maps must share source and target")
    R = equiv_from_pairs(g.dst, zip(g.assignment, h.assignment))
    return quotient(g.dst, R, oracle=oracle, oracle_limit=oracle_limit)


def is_closed_map(f):
    """True iff the image of every closed subset is closed."""
    full = (1 << f.src.n) - 1
    for u in open_sets(f.src):
        if not f.dst.is_closed_set(f.image_mask(full & ~u)):
            return False
    return True


def is_t1_subspace(X, mask):
    """True iff the subspace is discrete (no distinct comparable points)."""
    for x in bits.bits(mask):
        if X.up(x) & mask & ~(1 << x):
            return False
    return True


@dataclass(frozen=True)
class CriterionReport:
    """Per-hypothesis verdicts for the spectral-quotient criterion."""

    quotient_map_closed: bool
    fibers_t1: bool
    t1_witness: tuple | None
    fibers_in_saturated_closure: bool
    saturation_witness: tuple | None
    comparison_homeo: bool
    topological: FinSpace
    spectral: FinSpace
    comparison: SpectralMap

    @property
    def hypotheses_hold(self):
        return (
            self.quotient_map_closed
            and self.fibers_t1
            and self.fibers_in_saturated_closure
        )


def check_quotient_criterion(X, R, *, oracle="auto"):
    """Evaluate the three quotient-criterion hypotheses and the conclusion.

    Hypotheses: the spectral quotient map is closed, its fibers are T1
    subspaces, and each fiber sits inside the saturation of the point's
    closure.  When all three hold the comparison map from the topological
    quotient must be a homeomorphism; observing otherwise raises
    InternalError, since that would refute the theorem.
    """
    if not X.is_t0():
        raise NotT0("the quotient criterion is stated for T0 spaces")
    from .descent import spectral_quotient  # deferred: descent imports topology

    XS, ps = spectral_quotient(X, R)
    h1 = is_closed_map(ps)
    fibers = [ps.preimage_mask(1 << t) for t in range(XS.n)]
    h2, t1_witness = True, None
    for t, fib in enumerate(fibers):
        if not is_t1_subspace(X, fib):
            h2, t1_witness = False, (t, fib)
            break
    h3, sat_witness = True, None
    for x in range(X.n):
        fib = fibers[ps(x)]
        target = saturation(X, R, X.closure_of(1 << x))
        if fib & ~target:
            h3, sat_witness = False, (x, fib & ~target)
            break
    XT, pt = quotient(X, R, oracle=oracle)
    assign = [None] * XT.n
    for x in range(X.n):
        c = pt(x)
        if assign[c] is None:
            assign[c] = ps(x)
        elif assign[c] != ps(x):
            raise InternalError("spectral quotient map does not respect R-classes")
    try:
        c_map = SpectralMap(XT, XS, tuple(assign))
    except NotMonotone as e:  # pragma: no cover - theorem trap
        raise InternalError(f"comparison map is not continuous: {e}")
    homeo = c_map.is_homeomorphism()
    if h1 and h2 and h3 and not homeo:
        raise InternalError("quotient criterion implication falsified")
    return CriterionReport(
        quotient_map_closed=h1,
        fibers_t1=h2,
        t1_witness=t1_witness,
        fibers_in_saturated_closure=h3,
        saturation_witness=sat_witness,
        comparison_homeo=homeo,
        topological=XT,
        spectral=XS,
        comparison=c_map,
    )
