"""Coequalizers of finite spectral spaces computed through the duality.

The coequalizer of g, h: Z -> Y is the spectrum of the equalizer of the
induced maps on open-set lattices.  That equalizer is materialized directly
as the sublattice of opens U of Y with g^-1(U) = h^-1(U), which is the same
carrier the two omega maps would equalize but avoids building the lattice of
opens of Z (a disjoint union of group copies would blow it up exponentially).
The comparison machinery then relates this spectral coequalizer to the
topological one, and the split-descent checker certifies the lattice-level
mechanism behind it on user-supplied diagrams.
"""

from dataclasses import dataclass

from . import bits
from .dlat import DistLattice, LatticeMap, equalizer, sublattice
from .errors import (
    InternalError,
    NotAutomorphism,
    NotEqualizerImage,
    NotMonotone,
    NotT0,
    SplitEquationFailed,
)
from .stone import omega_opens, round_trip_space, spec_of_lattice, spec_of_map
from .topology import (
    EquivRelation,
    FinSpace,
    SpectralMap,
    disjoint_union_spaces,
    is_closed_map,
    kq,
    partition,
    quotient,
    saturation,
    space_of_poset,
    topological_coequalizer,
)


@dataclass(frozen=True)
class CoeqProblem:
    """A parallel pair of spectral maps between T0 finite spaces."""

    z: FinSpace
    y: FinSpace
    g: SpectralMap
    h: SpectralMap

    def __post_init__(self):
        if self.g.src != self.z or self.h.src != self.z:
            raise ValueError("maps must start at Z")
        if self.g.dst != self.y or self.h.dst != self.y:
            raise ValueError("maps must land in Y")
        if not self.z.is_t0():
            raise NotT0("Z must be T0; apply kq first")
        if not self.y.is_t0():
            raise NotT0("Y must be T0; apply kq first")


def _dualize_invariant_opens(Y, L, opens, keep):
    """spec of the sublattice of `keep` indices, with the coequalizing map."""
    try:
        E, to_ambient = sublattice(L, keep)
        incl = LatticeMap(E, L, to_ambient)
    except ValueError as e:  # pragma: no cover - limit creation trap
        raise InternalError(f"invariant opens are not a sublattice: {e}")
    T = spec_of_lattice(E)
    phi = round_trip_space(Y).then(spec_of_map(incl))
    return T, phi


def spectral_coequalizer(P):
    """Coequalizer in spectral spaces, via the lattice equalizer of opens.

    Returns (T, phi) with phi: Y -> T; phi coequalizes g and h, which is
    asserted (a failure would contradict the duality and raises
    InternalError).
    """
    L, opens = omega_opens(P.y)
    keep = [
        i
        for i, u in enumerate(opens)
        if P.g.preimage_mask(u) == P.h.preimage_mask(u)
    ]
    T, phi = _dualize_invariant_opens(P.y, L, opens, keep)
    if P.g.then(phi).assignment != P.h.then(phi).assignment:
        raise InternalError("spectral coequalizer map does not coequalize")
    return T, phi


def spectral_quotient(X, R):
    """Spectral quotient X//R: spectrum of the R-invariant open sublattice."""
    if not X.is_t0():
        raise NotT0("spectral quotients are taken on T0 spaces")
    L, opens = omega_opens(X)
    keep = [i for i, u in enumerate(opens) if saturation(X, R, u) == u]
    T, p = _dualize_invariant_opens(X, L, opens, keep)
    for c in R.classes:
        values = {p(x) for x in bits.bits(c)}
        if len(values) != 1:
            raise InternalError("spectral quotient map does not respect R")
    return T, p


@dataclass(frozen=True)
class ComparisonReport:
    """Side-by-side of the topological and spectral coequalizers.

    p is the canonical comparison map from the topological coequalizer to
    the spectral one; for finite (hence noetherian spectral) inputs it is
    the T0 reflection, so it is a homeomorphism exactly when the topological
    coequalizer is already T0.
    """

    topological: FinSpace
    spectral: FinSpace
    phi_top: SpectralMap
    phi_spec: SpectralMap
    p: SpectralMap
    p_injective: bool
    p_surjective: bool
    phi_spec_closed: bool
    p_closed: bool
    t0: bool
    homeomorphism: bool
    kq_points: int

    @property
    def flags(self):
        out = []
        if not self.t0:
            out.append("not T0")
        if not self.p_injective:
            out.append("p not injective")
        return out


def comparison(P, *, oracle="auto"):
    """Compute both coequalizers and the comparison map, fully verified.

    Asserted along the way (InternalError on failure, as each is a theorem
    for finite inputs): the spectral map factors through the topological
    coequalizer, p is surjective and continuous, closedness transfers from
    phi_spec to p, p has exactly the KQ fibers and induces a homeomorphism
    from the T0 reflection, and p is a homeomorphism iff the topological
    coequalizer is T0.
    """
    T_top, phi_top = topological_coequalizer(P.g, P.h, oracle=oracle)
    T_spec, phi_spec = spectral_coequalizer(P)
    assign = [None] * T_top.n
    for y in range(P.y.n):
        c = phi_top(y)
        if assign[c] is None:
            assign[c] = phi_spec(y)
        elif assign[c] != phi_spec(y):
            raise InternalError("phi_spec does not factor through phi_top")
    try:
        p = SpectralMap(T_top, T_spec, tuple(assign))
    except NotMonotone as e:  # pragma: no cover - theorem trap
        raise InternalError(f"comparison map is not continuous: {e}")
    if p.image_mask((1 << T_top.n) - 1) != (1 << T_spec.n) - 1:
        raise InternalError("comparison map is not surjective")
    p_injective = len(set(assign)) == len(assign)
    phi_spec_closed = is_closed_map(phi_spec)
    p_closed = is_closed_map(p)
    if phi_spec_closed and not p_closed:
        raise InternalError("closedness failed to transfer to the comparison map")
    K = kq(T_top)
    induced = [None] * K.poset.n
    for c in range(T_top.n):
        k = K.projection(c)
        if induced[k] is None:
            induced[k] = p(c)
        elif induced[k] != p(c):
            raise InternalError("comparison map separates indistinguishable points")
    if len(set(induced)) != len(induced) or K.poset.n != T_spec.n:
        raise InternalError("comparison map is not the T0 reflection")
    try:
        theta = SpectralMap(space_of_poset(K.poset), T_spec, tuple(induced))
    except NotMonotone as e:  # pragma: no cover - theorem trap
        raise InternalError(f"T0 reflection comparison is not continuous: {e}")
    if not theta.is_homeomorphism():
        raise InternalError("T0 reflection of the coequalizer is not the spectrum")
    t0 = T_top.is_t0()
    homeo = p.is_homeomorphism()
    if homeo != t0:
        raise InternalError("homeomorphism criterion violated")
    return ComparisonReport(
        topological=T_top,
        spectral=T_spec,
        phi_top=phi_top,
        phi_spec=phi_spec,
        p=p,
        p_injective=p_injective,
        p_surjective=True,
        phi_spec_closed=phi_spec_closed,
        p_closed=p_closed,
        t0=t0,
        homeomorphism=homeo,
        kq_points=K.poset.n,
    )


@dataclass(frozen=True)
class DescentDiagram:
    """Lattice fork f: L0 -> L1, alpha, beta: L1 -> L2 with set-level sections.

    u and v are plain index maps (sections of lattice maps are generally not
    lattice maps themselves), so they are stored as bare tuples.
    """

    l0: DistLattice
    l1: DistLattice
    l2: DistLattice
    f: LatticeMap
    alpha: LatticeMap
    beta: LatticeMap
    u: tuple
    v: tuple

    def __post_init__(self):
        if self.f.src != self.l0 or self.f.dst != self.l1:
            raise ValueError("f must map L0 to L1")
        if self.alpha.src != self.l1 or self.alpha.dst != self.l2:
            raise ValueError("alpha must map L1 to L2")
        if self.beta.src != self.l1 or self.beta.dst != self.l2:
            raise ValueError("beta must map L1 to L2")
        if len(self.u) != len(self.l1) or any(
            not 0 <= x < len(self.l0) for x in self.u
        ):
            raise ValueError("u must be a total map L1 -> L0")
        if len(self.v) != len(self.l2) or any(
            not 0 <= x < len(self.l1) for x in self.v
        ):
            raise ValueError("v must be a total map L2 -> L1")
        for x in range(len(self.l0)):
            if self.alpha(self.f(x)) != self.beta(self.f(x)):
                raise ValueError(f"not a fork: alpha(f({x})) != beta(f({x}))")


@dataclass(frozen=True)
class DescentReport:
    """Certificate that a split lattice fork dualizes to a coequalizer."""

    equalizer_lattice: DistLattice
    lattice_iso: LatticeMap
    spec_l0: FinSpace
    spec_l1: FinSpace
    spec_l2: FinSpace
    spec_f: SpectralMap
    spec_alpha: SpectralMap
    spec_beta: SpectralMap
    coequalizer: FinSpace
    coequalizing_map: SpectralMap
    homeomorphism: SpectralMap


def verify_split_descent(D):
    """Check the split equations and certify the dual coequalizer.

    On the set level: u.f = id, v.beta = id and v.alpha = f.u force f to be
    the equalizer of (alpha, beta); the agreement set is then a sublattice
    isomorphic to L0 through f.  Dually, spec(f) is the coequalizer of
    spec(alpha), spec(beta): the report materializes spec of the equalizer
    lattice, the coequalizing map, and an explicit homeomorphism onto
    spec(L0) commuting with everything.
    """
    n0, n1 = len(D.l0), len(D.l1)
    for x in range(n0):
        if D.u[D.f(x)] != x:
            raise SplitEquationFailed("u.f = id", x)
    for y in range(n1):
        if D.v[D.beta(y)] != y:
            raise SplitEquationFailed("v.beta = id", y)
    for y in range(n1):
        if D.v[D.alpha(y)] != D.f(D.u[y]):
            raise SplitEquationFailed("v.alpha = f.u", y)
    image = [D.f(x) for x in range(n0)]
    if len(set(image)) != n0:  # pragma: no cover - u.f = id forces injectivity
        raise InternalError("f is not injective despite a retraction")
    agreement = {y for y in range(n1) if D.alpha(y) == D.beta(y)}
    missing = sorted(agreement - set(image))
    if missing:  # pragma: no cover - split fork => equalizer
        raise NotEqualizerImage(missing)
    E, incl = equalizer(D.alpha, D.beta)
    position = {amb: e for e, amb in enumerate(incl.assignment)}
    try:
        iso = LatticeMap(D.l0, E, tuple(position[D.f(x)] for x in range(n0)))
    except Exception as e:  # pragma: no cover - Birkhoff trap
        raise InternalError(f"f does not restrict to an isomorphism: {e}")
    if not iso.is_bijective():
        raise InternalError("f is not bijective onto the agreement sublattice")
    s0, s1, s2 = spec_of_lattice(D.l0), spec_of_lattice(D.l1), spec_of_lattice(D.l2)
    sf, sa, sb = spec_of_map(D.f), spec_of_map(D.alpha), spec_of_map(D.beta)
    if sa.then(sf).assignment != sb.then(sf).assignment:
        raise InternalError("spec(f) does not coequalize spec(alpha), spec(beta)")
    coeq_map = spec_of_map(incl)
    homeo = spec_of_map(iso)
    if not homeo.is_homeomorphism():
        raise InternalError("dual of the lattice isomorphism is not a homeomorphism")
    if coeq_map.then(homeo).assignment != sf.assignment:
        raise InternalError("coequalizer homeomorphism does not commute with spec(f)")
    return DescentReport(
        equalizer_lattice=E,
        lattice_iso=iso,
        spec_l0=s0,
        spec_l1=s1,
        spec_l2=s2,
        spec_f=sf,
        spec_alpha=sa,
        spec_beta=sb,
        coequalizer=coeq_map.dst,
        coequalizing_map=coeq_map,
        homeomorphism=homeo,
    )


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a T0 finite space by automorphisms.

    `elements` lists every group element as a point assignment, identity
    included; closure under composition is validated.
    """

    space: FinSpace
    elements: tuple

    def __post_init__(self):
        X = self.space
        if not X.is_t0():
            raise NotT0("group actions are taken on T0 spaces")
        if not self.elements:
            raise ValueError("a group needs at least the identity element")
        seen = set()
        for g in self.elements:
            if len(g) != X.n:
                raise NotAutomorphism(f"assignment of length {len(g)} on {X.n} points")
            if sorted(g) != list(range(X.n)):
                raise NotAutomorphism(f"assignment {g} is not a bijection")
            for x in range(X.n):
                for y in bits.bits(X.pre[x]):
                    if not X.le(g[x], g[y]):
                        raise NotAutomorphism(
                            f"{x} <= {y} but g({x}) = {g[x]} is not <= g({y}) = {g[y]}"
                        )
            if g in seen:
                raise ValueError("duplicate group element")
            seen.add(g)
        if tuple(range(X.n)) not in seen:
            raise ValueError("identity is missing from the group")
        for g in self.elements:
            for h in self.elements:
                if tuple(h[x] for x in g) not in seen:
                    raise ValueError("group elements are not closed under composition")


def orbit_relation(A):
    """Partition of the space into orbits of the action."""
    blocks = []
    seen = 0
    for x in range(A.space.n):
        if seen >> x & 1:
            continue
        orbit = {g[x] for g in A.elements}
        blocks.append(orbit)
        seen |= bits.mask_of(orbit)
    return partition(A.space, blocks)


@dataclass(frozen=True)
class OrbitReport:
    """Orbit space of an action with the homeomorphism to the coequalizer."""

    orbit_space: FinSpace
    projection: SpectralMap
    spectral: FinSpace
    witness: SpectralMap
    comparison: ComparisonReport


def group_coequalizer(A, *, oracle="auto"):
    """Coequalize the action fork and identify it with the orbit space.

    The fork is the projection and the action map from the disjoint union of
    one copy of the space per group element.  The topological coequalizer is
    the orbit space, which for a poset action is again T0, so the comparison
    map is a homeomorphism; all of that is asserted and the witness returned.
    """
    X, G = A.space, A.elements
    copies, offsets = disjoint_union_spaces([X] * len(G))
    proj = SpectralMap(
        copies, X, tuple(x for _ in G for x in range(X.n))
    )
    act = SpectralMap(copies, X, tuple(g[x] for g in G for x in range(X.n)))
    P = CoeqProblem(z=copies, y=X, g=proj, h=act)
    rep = comparison(P, oracle=oracle)
    R = orbit_relation(A)
    orbit_space, orbit_proj = quotient(X, R, oracle=oracle)
    if orbit_space != rep.topological:
        raise InternalError("orbit space differs from the topological coequalizer")
    if not orbit_space.is_t0():
        raise InternalError("orbit space of a poset action is not T0")
    if not rep.homeomorphism:
        raise InternalError("orbit comparison map is not a homeomorphism")
    return OrbitReport(
        orbit_space=orbit_space,
        projection=orbit_proj,
        spectral=rep.spectral,
        witness=rep.p,
        comparison=rep,
    )
