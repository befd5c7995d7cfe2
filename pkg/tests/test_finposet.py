import pytest

from stonekit import CycleError, SizeError, downsets, is_isomorphic, validate_poset
from stonekit.finposet import MonotoneMap, antichain, chain, disjoint_union, opposite


def brute_downsets(P):
    """Oracle: filter every subset for down-closure."""
    out = []
    for s in range(1 << P.n):
        if all(P.down(y) & ~s == 0 for y in range(P.n) if s >> y & 1):
            out.append(s)
    out.sort(key=lambda s: (s.bit_count(), s))
    return out


def test_validate_singleton():
    P = validate_poset(1, [])
    assert P.n == 1 and P.leq == (1,)


def test_validate_two_chain():
    P = validate_poset(2, [(0, 1)])
    assert P.le(0, 1) and not P.le(1, 0)


def test_validate_cycle_rejected():
    with pytest.raises(CycleError):
        validate_poset(2, [(0, 1), (1, 0)])


def test_validate_out_of_range():
    with pytest.raises(IndexError):
        validate_poset(2, [(0, 2)])


def test_validate_closes_transitively():
    P = validate_poset(3, [(0, 1), (1, 2)])
    assert P.le(0, 2)


def test_downsets_two_chain():
    # brute force over all 4 subsets gives [{}, {0}, {0,1}]
    P = chain(2)
    expected = brute_downsets(P)
    assert expected == [0b00, 0b01, 0b11]
    assert downsets(P) == expected


def test_downsets_two_antichain():
    P = antichain(2)
    expected = brute_downsets(P)
    assert expected == [0b00, 0b01, 0b10, 0b11]
    assert downsets(P) == expected


def test_downsets_one_point():
    assert downsets(validate_poset(1, [])) == [0, 1]


@pytest.mark.parametrize("n", range(7))
def test_downset_counts_chain_antichain(n):
    assert len(downsets(chain(n))) == n + 1
    assert len(downsets(antichain(n))) == 2**n


def test_downsets_cap():
    with pytest.raises(SizeError):
        downsets(antichain(8), cap=100)


def test_downsets_match_bruteforce_on_mixed_posets():
    posets = [
        validate_poset(4, [(0, 1), (0, 2), (1, 3)]),
        validate_poset(5, [(0, 2), (1, 2), (2, 3), (2, 4)]),
        validate_poset(3, [(0, 1)]),
    ]
    for P in posets:
        assert downsets(P) == brute_downsets(P)


def test_iso_identity_on_chain():
    P = chain(2)
    assert is_isomorphic(P, P) == (0, 1)


def test_iso_distinguishes_chain_antichain():
    assert is_isomorphic(chain(2), antichain(2)) is None


def test_iso_finds_relabelling():
    P = validate_poset(3, [(0, 1), (0, 2)])
    Q = validate_poset(3, [(2, 0), (2, 1)])
    w = is_isomorphic(P, Q)
    assert w is not None
    for i in range(3):
        for j in range(3):
            assert P.le(i, j) == Q.le(w[i], w[j])


def test_opposite_involution_is_exact():
    P = validate_poset(4, [(0, 1), (1, 2), (0, 3)])
    assert opposite(opposite(P)) == P


def test_opposite_reverses():
    P = chain(2)
    Q = opposite(P)
    assert Q.le(1, 0) and not Q.le(0, 1)


def test_opposite_of_antichain_identical():
    P = antichain(3)
    assert opposite(P) == P


def test_opposite_v_to_lambda():
    V = validate_poset(3, [(0, 1), (0, 2)])
    L = opposite(V)
    assert L.le(1, 0) and L.le(2, 0)


def test_disjoint_union_counts():
    P = disjoint_union(chain(2), antichain(2))
    assert P.n == 4
    assert P.le(0, 1) and not P.le(2, 3) and not P.le(1, 2)


def test_monotone_map_validation():
    P, Q = chain(2), chain(2)
    MonotoneMap(P, Q, (0, 1))
    from stonekit import NotMonotone

    with pytest.raises(NotMonotone):
        MonotoneMap(P, Q, (1, 0))


def test_covers_are_transitive_reduction():
    P = chain(3)
    assert P.covers() == [(0, 1), (1, 2)]
