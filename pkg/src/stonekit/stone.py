"""The duality dictionary between finite distributive lattices and spaces.

spec sends a lattice to its prime-ideal spectrum with basic opens
d(a) = { I : a not in I }; omega sends a space to its lattice of opens.
With the downset convention both round trips come out identity-like on
Birkhoff-form inputs, and both directions return materialized witnesses
that are verified before being handed back.
"""

from . import bits
from .dlat import (
    DistLattice,
    LatticeMap,
    from_birkhoff,
    opposite as opposite_lattice,
    prime_ideals,
)
from .errors import InternalError, NotMonotone, NotT0
from .topology import FinSpace, SpectralMap, kq

__all__ = [
    "SpectralMap",
    "spec_of_lattice",
    "spec_of_map",
    "omega",
    "omega_opens",
    "omega_of_map",
    "hochster_dual",
    "round_trip_space",
    "round_trip_lattice",
]


def spec_of_lattice(L):
    """Prime-ideal spectrum; specialization order is carrier inclusion.

    Points come in the canonical prime_ideals order (one per join-irreducible
    generator), so spec(from_birkhoff(P)) reproduces P on the nose.
    """
    primes = prime_ideals(L)
    rows = []
    for I in primes:
        r = 0
        for j, J in enumerate(primes):
            if I.carrier <= J.carrier:
                r |= 1 << j
        rows.append(r)
    return FinSpace(len(primes), tuple(rows), L.ji.labels)


def spec_of_map(f):
    """Contravariant point map I -> f^-1(I) from spec(dst) to spec(src)."""
    lookup = {I.carrier: i for i, I in enumerate(prime_ideals(f.src))}
    assignment = []
    for J in prime_ideals(f.dst):
        pre = frozenset(a for a in range(len(f.src)) if f(a) in J.carrier)
        idx = lookup.get(pre)
        if idx is None:  # pragma: no cover - primality trap
            raise InternalError("preimage of a prime ideal is not prime")
        assignment.append(idx)
    try:
        return SpectralMap(
            spec_of_lattice(f.dst), spec_of_lattice(f.src), tuple(assignment)
        )
    except NotMonotone as e:  # pragma: no cover - continuity trap
        raise InternalError(f"spec of a lattice map is not continuous: {e}")


def omega_opens(X):
    """(omega(X), opens) with opens[i] the point mask of lattice element i.

    Opens of X correspond to downsets of the KQ poset; the lattice is the
    Birkhoff form of that poset and `opens` lifts each element back to a
    point set in matching order.
    """
    K = kq(X)
    L = from_birkhoff(K.poset)
    opens = []
    for m in L.elements:
        pts = 0
        for c in bits.bits(m):
            pts |= K.classes[c]
        opens.append(pts)
    return L, tuple(opens)


def omega(X):
    """Lattice of open subsets of X (all opens are quasi-compact here)."""
    return omega_opens(X)[0]


def omega_of_map(phi):
    """Preimage map omega(dst) -> omega(src) of a continuous map."""
    Ld, opens_d = omega_opens(phi.dst)
    Ls, opens_s = omega_opens(phi.src)
    idx = {m: i for i, m in enumerate(opens_s)}
    assignment = []
    for u in opens_d:
        e = idx.get(phi.preimage_mask(u))
        if e is None:  # pragma: no cover - continuity trap
            raise InternalError("preimage of an open set is not open")
        assignment.append(e)
    return LatticeMap(Ld, Ls, tuple(assignment))


def hochster_dual(X):
    """The dual spectral topology: spec of the opposite lattice of opens.

    For finite spaces this is exactly the opposite specialization order on
    the same points.
    """
    if not X.is_t0():
        raise NotT0("Hochster duality is taken on T0 spaces")
    return spec_of_lattice(opposite_lattice(omega(X)))


def round_trip_space(X):
    """Verified homeomorphism X -> spec(omega(X)) for a T0 space.

    A point goes to the prime ideal of opens avoiding it.  Bijectivity and
    bicontinuity are checked; failure raises InternalError because the
    duality theorem guarantees both.
    """
    if not X.is_t0():
        raise NotT0("the space round trip needs a T0 space")
    L, opens = omega_opens(X)
    S = spec_of_lattice(L)
    carriers = {I.carrier: i for i, I in enumerate(prime_ideals(L))}
    assignment = []
    for x in range(X.n):
        ideal = frozenset(a for a, u in enumerate(opens) if not u >> x & 1)
        idx = carriers.get(ideal)
        if idx is None:  # pragma: no cover - duality trap
            raise InternalError("neighborhood ideal of a point is not prime")
        assignment.append(idx)
    try:
        unit = SpectralMap(X, S, tuple(assignment))
    except NotMonotone as e:  # pragma: no cover - duality trap
        raise InternalError(f"space unit is not continuous: {e}")
    if not unit.is_homeomorphism():
        raise InternalError("space unit is not a homeomorphism")
    return unit


def round_trip_lattice(L):
    """Verified isomorphism L -> omega(spec(L)), a |-> d(a)."""
    S = spec_of_lattice(L)
    M, opens = omega_opens(S)
    idx = {u: i for i, u in enumerate(opens)}
    primes = prime_ideals(L)
    assignment = []
    for a in range(len(L)):
        d = 0
        for i, I in enumerate(primes):
            if a not in I.carrier:
                d |= 1 << i
        e = idx.get(d)
        if e is None:  # pragma: no cover - duality trap
            raise InternalError("d(a) is not an open set of the spectrum")
        assignment.append(e)
    try:
        unit = LatticeMap(L, M, tuple(assignment))
    except Exception as e:  # pragma: no cover - duality trap
        raise InternalError(f"lattice unit is not a lattice map: {e}")
    if not unit.is_bijective():
        raise InternalError("lattice unit is not bijective")
    return unit
