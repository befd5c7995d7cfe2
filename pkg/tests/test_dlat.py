import pytest

from stonekit import (
    BoundsViolated,
    NotDistributive,
    NotJoinPreserving,
    equalizer,
    from_birkhoff,
    from_tables,
    prime_ideals,
    prime_ideals_bruteforce,
    validate_lattice_map,
)
from stonekit.dlat import (
    LatticeMap,
    boolean,
    chain_lattice,
    elements_poset,
    finite_elements,
    identity_lattice_map,
    opposite,
    product,
    sublattice,
    to_tables,
    trivial,
    two,
)
from stonekit.finposet import antichain, chain, is_isomorphic, validate_poset
from stonekit.finposet import opposite as opposite_poset


def test_from_birkhoff_one_point_is_two():
    # the one-point space side of the dictionary: its lattice is 0 < 1
    L = from_birkhoff(antichain(1))
    assert len(L) == 2 and L.bottom == 0 and L.top == 1
    assert L == two()


def test_from_birkhoff_two_antichain_is_boolean4():
    L = from_birkhoff(antichain(2))
    assert len(L) == 4
    assert L.join(1, 2) == 3 and L.meet(1, 2) == 0


def test_from_birkhoff_empty_poset_is_trivial():
    L = from_birkhoff(antichain(0))
    assert len(L) == 1 and L.bottom == L.top == 0


def test_distributivity_holds_structurally():
    L = from_birkhoff(validate_poset(4, [(0, 1), (0, 2), (2, 3)]))
    n = len(L)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert L.meet(a, L.join(b, c)) == L.join(L.meet(a, b), L.meet(a, c))


M3_MEET = [
    [0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1],
    [0, 0, 2, 0, 2],
    [0, 0, 0, 3, 3],
    [0, 1, 2, 3, 4],
]
M3_JOIN = [
    [0, 1, 2, 3, 4],
    [1, 1, 4, 4, 4],
    [2, 4, 2, 4, 4],
    [3, 4, 4, 3, 4],
    [4, 4, 4, 4, 4],
]


def test_from_tables_two_identity_witness():
    t = to_tables(two())
    L, w = from_tables(t["n"], t["meet"], t["join"], t["bot"], t["top"])
    assert L == two() and w == (0, 1)


def test_from_tables_m3_not_distributive():
    # a&(b|c) = a&1 = a while (a&b)|(a&c) = 0|0 = 0
    with pytest.raises(NotDistributive) as exc:
        from_tables(5, M3_MEET, M3_JOIN, 0, 4)
    assert exc.value.triple == (1, 2, 3)


def n5_tables():
    # 0 < a=1 < c=3 < 4 and 0 < b=2 < 4, b incomparable to a and c
    order = [[True] * 5 for _ in range(5)]
    le = {
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 1), (1, 3), (1, 4), (2, 2), (2, 4), (3, 3), (3, 4), (4, 4),
    }
    meet = [[0] * 5 for _ in range(5)]
    join = [[0] * 5 for _ in range(5)]
    for a in range(5):
        for b in range(5):
            lower = [x for x in range(5) if (x, a) in le and (x, b) in le]
            upper = [x for x in range(5) if (a, x) in le and (b, x) in le]
            meet[a][b] = max(lower, key=lambda x: sum((y, x) in le for y in range(5)))
            join[a][b] = min(upper, key=lambda x: sum((y, x) in le for y in range(5)))
    return meet, join


def test_from_tables_n5_not_distributive():
    meet, join = n5_tables()
    with pytest.raises(NotDistributive) as exc:
        from_tables(5, meet, join, 0, 4)
    a, b, c = exc.value.triple
    assert meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]


def test_from_tables_boolean4_witness():
    t = to_tables(boolean(2))
    L, w = from_tables(t["n"], t["meet"], t["join"], t["bot"], t["top"])
    assert L == boolean(2)
    assert w[0] == 0 and w[3] == 3 and sorted(w[1:3]) == [1, 2]


def test_from_tables_trivial():
    L, w = from_tables(1, [[0]], [[0]], 0, 0)
    assert L == trivial() and w == (0,)


def test_prime_ideals_two():
    # dual to the one-point space: exactly one prime ideal, {0}
    L = two()
    primes = prime_ideals(L)
    assert [sorted(I.carrier) for I in primes] == [[0]]


def test_prime_ideals_boolean4_bruteforce_frozen():
    # brute-force filter of all 16 subsets: {0, a} and {0, b}
    L = boolean(2)
    brute = {I.carrier for I in prime_ideals_bruteforce(L)}
    assert brute == {frozenset({0, 1}), frozenset({0, 2})}
    assert {I.carrier for I in prime_ideals(L)} == brute


def test_prime_ideals_trivial_empty():
    assert prime_ideals(trivial()) == []


@pytest.mark.parametrize(
    "pairs,n",
    [([], 0), ([], 1), ([(0, 1)], 2), ([], 2), ([(0, 1), (0, 2)], 3), ([(0, 1), (1, 2)], 3)],
)
def test_prime_ideals_fast_path_matches_oracle(pairs, n):
    L = from_birkhoff(validate_poset(n, pairs))
    fast = {I.carrier for I in prime_ideals(L)}
    slow = {I.carrier for I in prime_ideals_bruteforce(L)}
    assert fast == slow


def test_validate_lattice_map_identity():
    L = boolean(2)
    m = validate_lattice_map(L, L, range(4))
    assert m.is_bijective()


def test_cardinality_map_not_join_preserving():
    # order-preserving but c({a} | {b}) = 2 != 1 = c({a}) | c({b})
    with pytest.raises(NotJoinPreserving) as exc:
        validate_lattice_map(boolean(2), chain_lattice(3), (0, 1, 1, 2))
    assert exc.value.witness == (1, 2)


def test_constant_to_top_bounds_violated():
    with pytest.raises(BoundsViolated):
        validate_lattice_map(two(), two(), (1, 1))


def test_equalizer_of_identity_pair():
    L = boolean(2)
    E, incl = equalizer(identity_lattice_map(L), identity_lattice_map(L))
    assert len(E) == len(L)
    assert incl.assignment == (0, 1, 2, 3)


def test_equalizer_atom_swap_is_two():
    # pointwise fixed set of the swap automorphism: only 0 and 1
    L = boolean(2)
    swap = LatticeMap(L, L, (0, 2, 1, 3))
    E, incl = equalizer(identity_lattice_map(L), swap)
    assert E == two()
    assert incl.assignment == (0, 3)


def test_equalizer_id_vs_composite_id():
    L = two()
    ident = identity_lattice_map(L)
    E, incl = equalizer(ident, ident.then(ident))
    assert E == two() and incl.assignment == (0, 1)


def test_product_two_two_is_boolean4():
    L, p1, p2 = product(two(), two())
    assert L == boolean(2)
    assert p1.assignment == (0, 1, 0, 1) and p2.assignment == (0, 0, 1, 1)


def test_product_with_trivial_is_identity():
    L = from_birkhoff(chain(2))
    P, p1, _ = product(L, trivial())
    assert P == L and p1.is_bijective()


def test_iterated_product_is_boolean8():
    L, _, _ = product(two(), two())
    M, _, _ = product(L, two())
    assert M == boolean(3)


def test_opposite_two_self_dual():
    assert opposite(two()) == two()


def test_opposite_chain_self_dual():
    L = chain_lattice(3)
    assert is_isomorphic(opposite(L).ji, L.ji) is not None


def test_opposite_v_lattice_iso_to_lambda_lattice():
    V = validate_poset(3, [(0, 1), (0, 2)])
    LV = from_birkhoff(V)
    LL = from_birkhoff(opposite_poset(V))
    assert opposite(LV) == LL
    # derived check: the element order of the opposite is the reversed order
    w = is_isomorphic(elements_poset(opposite(LV)), opposite_poset(elements_poset(LV)))
    assert w is not None


def test_opposite_involution_up_to_iso():
    L = from_birkhoff(validate_poset(4, [(0, 2), (1, 2), (1, 3)]))
    assert is_isomorphic(opposite(opposite(L)).ji, L.ji) is not None


def test_finite_elements_lists_everything():
    assert finite_elements(two()) == [0, 1]
    assert finite_elements(boolean(2)) == [0, 1, 2, 3]
    assert finite_elements(trivial()) == [0]


def test_tables_roundtrip_small_corpus():
    posets = [antichain(0), antichain(1), antichain(2), chain(2), chain(3),
              validate_poset(3, [(0, 1), (0, 2)]),
              validate_poset(4, [(0, 1), (2, 3)])]
    for P in posets:
        L = from_birkhoff(P)
        if len(L) > 64:
            continue
        t = to_tables(L)
        M, w = from_tables(t["n"], t["meet"], t["join"], t["bot"], t["top"])
        assert is_isomorphic(M.ji, L.ji) is not None
        assert len(set(w)) == len(L)


def test_bijective_map_has_lattice_inverse():
    L = boolean(2)
    swap = LatticeMap(L, L, (0, 2, 1, 3))
    inv = swap.inverse()
    assert swap.then(inv).assignment == (0, 1, 2, 3)


def test_sublattice_rejects_missing_bounds():
    with pytest.raises(ValueError):
        sublattice(boolean(2), [0, 1])


def test_sublattice_rejects_unclosed_carrier():
    # the two atoms of B8 without their join
    with pytest.raises(ValueError):
        sublattice(boolean(3), [0, 1, 2, 7])


def test_sublattice_renormalizes_a_chain():
    E, to_ambient = sublattice(boolean(2), [0, 1, 3])
    assert E == chain_lattice(3) and to_ambient == (0, 1, 3)
