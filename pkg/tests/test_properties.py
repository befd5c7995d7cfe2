"""Law-style invariants driven by hypothesis strategies."""

from hypothesis import given, settings, strategies as st

from stonekit import downsets, is_isomorphic, kq, validate_poset, validate_space
from stonekit.finposet import opposite
from stonekit.gen import dual_lattice_map, rng_for
from stonekit.topology import space_of_poset


@st.composite
def posets(draw, max_n=6):
    n = draw(st.integers(min_value=0, max_value=max_n))
    perm = draw(st.permutations(range(n)))
    flags = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if flags[k]:
                pairs.append((perm[i], perm[j]))
            k += 1
    return validate_poset(n, pairs)


@st.composite
def spaces(draw, max_n=5):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=max(0, n - 1)),
                st.integers(min_value=0, max_value=max(0, n - 1)),
            ),
            max_size=2 * n,
        )
    )
    if n == 0:
        pairs = []
    return validate_space(n, pairs)


@given(posets())
@settings(max_examples=60, deadline=None)
def test_downsets_closed_under_union_and_intersection(P):
    ds = set(downsets(P))
    for a in ds:
        for b in ds:
            assert (a | b) in ds and (a & b) in ds


@given(posets())
@settings(max_examples=60, deadline=None)
def test_opposite_is_exact_involution(P):
    assert opposite(opposite(P)) == P


@given(posets(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_isomorphism_symmetric_with_inverse_witness(P, rnd):
    perm = list(range(P.n))
    rnd.shuffle(perm)
    rows = [0] * P.n
    for i in range(P.n):
        for j in range(P.n):
            if P.le(i, j):
                rows[perm[i]] |= 1 << perm[j]
    from stonekit.finposet import FinPoset

    Q = FinPoset(P.n, tuple(rows))
    w = is_isomorphic(P, Q)
    assert w is not None
    inverse = [0] * P.n
    for i, j in enumerate(w):
        inverse[j] = i
    for i in range(P.n):
        for j in range(P.n):
            assert Q.le(i, j) == P.le(inverse[i], inverse[j])
    # transitivity: composing witnesses P -> Q -> P is an automorphism of P
    back = is_isomorphic(Q, P)
    assert back is not None
    composite = [back[w[i]] for i in range(P.n)]
    for i in range(P.n):
        for j in range(P.n):
            assert P.le(i, j) == P.le(composite[i], composite[j])


@given(spaces())
@settings(max_examples=60, deadline=None)
def test_kq_idempotent_and_fixes_t0(X):
    once = space_of_poset(kq(X).poset)
    assert space_of_poset(kq(once).poset) == once
    if X.is_t0():
        assert once == X


@given(spaces())
@settings(max_examples=40, deadline=None)
def test_open_closed_complement_duality(X):
    full = (1 << X.n) - 1
    for mask in range(1 << X.n):
        assert X.is_open(mask) == X.is_closed_set(full & ~mask)


@given(posets(max_n=4), posets(max_n=4), st.integers(min_value=0, max_value=2**30))
@settings(max_examples=40, deadline=None)
def test_dual_lattice_maps_compose(P, Q, seed):
    from stonekit.dlat import from_birkhoff
    from stonekit.gen import random_monotone_assignment

    rng = rng_for(seed, "compose")
    a = random_monotone_assignment(rng, Q, P)
    b = random_monotone_assignment(rng, P, Q)
    if a is None or b is None:
        return
    LP, LQ = from_birkhoff(P), from_birkhoff(Q)
    f = dual_lattice_map(LP, LQ, a)
    g = dual_lattice_map(LQ, LP, b)
    composite_point_map = tuple(a[b[x]] for x in range(P.n))
    assert f.then(g).assignment == dual_lattice_map(LP, LP, composite_point_map).assignment
