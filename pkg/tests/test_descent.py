import pytest

from stonekit import (
    CoeqProblem,
    DescentDiagram,
    GroupAction,
    NotAutomorphism,
    NotT0,
    SplitEquationFailed,
    comparison,
    group_coequalizer,
    is_isomorphic,
    spectral_coequalizer,
    spectral_quotient,
    verify_split_descent,
)
from stonekit.descent import orbit_relation
from stonekit.dlat import LatticeMap, boolean, equalizer, two
from stonekit.finposet import chain, validate_poset
from stonekit.gen import (
    monotone_assignments,
    poset_iso_classes,
    random_coeq_problem,
    rng_for,
)
from stonekit.jsonio import parse_coeq_problem, parse_descent_diagram
from stonekit.corpus import bundled
from stonekit.stone import omega_of_map
from stonekit.topology import (
    SpectralMap,
    partition,
    poset_of_space,
    space_of_poset,
    topological_coequalizer,
    validate_space,
)


def example41_problem():
    return parse_coeq_problem(bundled("example41.json"))


def test_coeq_problem_requires_t0():
    bad = validate_space(2, [(0, 1), (1, 0)])
    pt = validate_space(1, [])
    with pytest.raises(NotT0):
        CoeqProblem(bad, pt, SpectralMap(bad, pt, (0, 0)), SpectralMap(bad, pt, (0, 0)))


def test_spectral_coequalizer_of_identity_pair():
    Y = space_of_poset(chain(2))
    Z = Y
    ident = SpectralMap(Z, Y, (0, 1))
    P = CoeqProblem(Z, Y, ident, ident)
    T, phi = spectral_coequalizer(P)
    assert is_isomorphic(poset_of_space(T), chain(2)) is not None
    assert phi.is_homeomorphism()


def test_spectral_coequalizer_example41_is_point():
    T, _ = spectral_coequalizer(example41_problem())
    assert T.n == 1


def test_spectral_coequalizer_swap_on_discrete():
    # dual computation: the equalizer of identity and atom swap on B4 is 2
    Y = validate_space(2, [])
    Z = validate_space(4, [])
    g = SpectralMap(Z, Y, (0, 1, 0, 1))
    h = SpectralMap(Z, Y, (0, 1, 1, 0))
    T, _ = spectral_coequalizer(CoeqProblem(Z, Y, g, h))
    assert T.n == 1
    E, _ = equalizer(
        LatticeMap(boolean(2), boolean(2), (0, 1, 2, 3)),
        LatticeMap(boolean(2), boolean(2), (0, 2, 1, 3)),
    )
    assert E == two()


def test_spectral_coequalizer_agrees_with_materialized_equalizer():
    # same carrier through omega_of_map + dlat.equalizer, per the definition
    rng = rng_for(21, "materialized")
    from stonekit.stone import omega_opens

    for _ in range(30):
        P = random_coeq_problem(rng, 4)
        E, incl = equalizer(omega_of_map(P.g), omega_of_map(P.h))
        _, opens = omega_opens(P.y)
        keep = [
            i
            for i, u in enumerate(opens)
            if P.g.preimage_mask(u) == P.h.preimage_mask(u)
        ]
        assert sorted(incl.assignment) == keep
        T, _ = spectral_coequalizer(P)
        assert T.n == E.ji.n


def test_comparison_identity_pair_is_homeo():
    Y = space_of_poset(validate_poset(3, [(0, 1), (0, 2)]))
    ident = SpectralMap(Y, Y, (0, 1, 2))
    rep = comparison(CoeqProblem(Y, Y, ident, ident))
    assert rep.homeomorphism and rep.t0 and rep.flags == []


def test_comparison_example41_report():
    rep = comparison(example41_problem())
    assert rep.topological.n == 2 and not rep.t0
    assert rep.spectral.n == 1
    assert not rep.p_injective and rep.p_surjective
    assert rep.kq_points == 1
    assert rep.flags == ["not T0", "p not injective"]


def test_comparison_orbit_fork_is_homeo():
    X = validate_space(4, [(0, 1), (2, 3)])
    A = GroupAction(X, ((0, 1, 2, 3), (2, 3, 0, 1)))
    rep = group_coequalizer(A).comparison
    assert rep.homeomorphism and rep.p_closed


def _universal_property_topological(problem, T, phi, candidates):
    for W in candidates:
        if W.n == 0 and T.n > 0:
            continue
        for code in range(W.n ** problem.y.n if W.n else 1):
            assign = []
            c = code
            for _ in range(problem.y.n):
                assign.append(c % W.n)
                c //= W.n
            try:
                psi = SpectralMap(problem.y, W, tuple(assign))
            except Exception:
                continue
            if psi.src.n and [psi(problem.g(z)) for z in range(problem.z.n)] != [
                psi(problem.h(z)) for z in range(problem.z.n)
            ]:
                continue
            # existence: theta with theta . phi = psi, defined on fibers
            theta = [None] * T.n
            ok = True
            for y in range(problem.y.n):
                t = phi(y)
                if theta[t] is None:
                    theta[t] = psi(y)
                elif theta[t] != psi(y):
                    ok = False
                    break
            if not ok:
                return False
            if any(v is None for v in theta):
                continue  # phi not surjective cannot happen; guard anyway
            try:
                SpectralMap(T, W, tuple(theta))
            except Exception:
                return False
    return True


def test_universal_property_small_corpus():
    rng = rng_for(22, "universal")
    preorders = [
        W
        for n in range(4)
        for W in __import__("stonekit").gen.all_preorders(n)
    ]
    posets = [space_of_poset(P) for n in range(4) for P in poset_iso_classes(n)]
    for _ in range(6):
        problem = random_coeq_problem(rng, 3)
        T_top, phi_top = topological_coequalizer(problem.g, problem.h)
        assert _universal_property_topological(problem, T_top, phi_top, preorders)
        T_spec, phi_spec = spectral_coequalizer(problem)
        assert _universal_property_topological(problem, T_spec, phi_spec, posets)


def test_pipeline_agreement_exhaustive_tiny():
    from stonekit.topology import kq

    classes = [P for n in range(3) for P in poset_iso_classes(n)]
    for Z in classes:
        for Y in classes:
            if Y.n == 0 and Z.n > 0:
                continue
            sz, sy = space_of_poset(Z), space_of_poset(Y)
            maps = list(monotone_assignments(Z, Y))
            for ag in maps:
                for ah in maps:
                    P = CoeqProblem(
                        sz, sy, SpectralMap(sz, sy, ag), SpectralMap(sz, sy, ah)
                    )
                    T_spec, _ = spectral_coequalizer(P)
                    T_top, _ = topological_coequalizer(P.g, P.h)
                    reflected = kq(T_top).poset
                    assert (
                        is_isomorphic(poset_of_space(T_spec), reflected) is not None
                    )


def test_spectral_quotient_matches_coequalizer_route():
    Y = validate_space(4, [(1, 0), (2, 3)])
    R = partition(Y, [[0, 2], [1, 3]])
    T, p = spectral_quotient(Y, R)
    assert T.n == 1 and p.assignment == (0, 0, 0, 0)


def trivial_descent_diagram():
    L = two()
    ident = LatticeMap(L, L, (0, 1))
    return DescentDiagram(L, L, L, ident, ident, ident, (0, 1), (0, 1))


def test_split_descent_trivial():
    rep = verify_split_descent(trivial_descent_diagram())
    assert rep.coequalizer.n == 1
    assert rep.homeomorphism.is_homeomorphism()


def test_split_descent_bundled_instance():
    D = parse_descent_diagram(bundled("descent_split.json"))
    rep = verify_split_descent(D)
    assert len(rep.equalizer_lattice) == 2
    assert rep.spec_l1.n == 2 and rep.spec_l2.n == 4
    assert rep.coequalizer.n == 1 and rep.spec_l0.n == 1
    assert rep.coequalizing_map.then(rep.homeomorphism).assignment == rep.spec_f.assignment


def test_split_descent_mutated_v_fails():
    D = parse_descent_diagram(bundled("descent_split.json"))
    v = list(D.v)
    pinned = D.beta(1)  # v must send beta(y) back to y
    v[pinned] = (v[pinned] + 1) % len(D.l1)
    bad = DescentDiagram(D.l0, D.l1, D.l2, D.f, D.alpha, D.beta, D.u, tuple(v))
    with pytest.raises(SplitEquationFailed) as exc:
        verify_split_descent(bad)
    assert exc.value.which == "v.beta = id" and exc.value.witness == 1


def test_group_action_validation():
    X = validate_space(2, [(0, 1)])
    with pytest.raises(NotAutomorphism):
        GroupAction(X, ((0, 1), (1, 0)))  # swap breaks the order
    with pytest.raises(ValueError):
        GroupAction(X, ((0, 1), (0, 1)))  # duplicate element
    Y = validate_space(2, [])
    with pytest.raises(ValueError):
        GroupAction(Y, ((1, 0),))  # identity missing
    ok = GroupAction(X, ((0, 1),))
    assert orbit_relation(ok).classes == (1, 2)


def test_group_coequalizer_trivial_group():
    X = validate_space(3, [(0, 1), (0, 2)])
    rep = group_coequalizer(GroupAction(X, ((0, 1, 2),)))
    assert rep.orbit_space == X
    assert rep.witness.is_homeomorphism()


def test_group_coequalizer_c2_chains():
    X = validate_space(4, [(0, 1), (2, 3)])
    rep = group_coequalizer(GroupAction(X, ((0, 1, 2, 3), (2, 3, 0, 1))))
    assert poset_of_space(rep.orbit_space) == chain(2)
    assert is_isomorphic(poset_of_space(rep.spectral), chain(2)) is not None


def test_group_coequalizer_diamond_swap():
    X = validate_space(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    rep = group_coequalizer(GroupAction(X, ((0, 1, 2, 3), (0, 2, 1, 3))))
    assert poset_of_space(rep.orbit_space) == chain(3)
