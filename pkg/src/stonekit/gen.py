"""Deterministic instance generators: seeded random and exhaustive.

The randomized generators build hypothesis-satisfying instances directly
(split forks get their equations by construction, ladders inject sub-forks,
group actions permute blocks equivariantly) because uniform sampling would
essentially never satisfy the side conditions.  Everything is driven by a
caller-supplied random.Random, so suites are reproducible per seed.
"""

import random
from itertools import permutations

from . import bits
from .descent import CoeqProblem, GroupAction
from .dlat import LatticeMap, from_birkhoff
from .finposet import FinPoset, downsets, linear_extension, validate_poset
from .fork import ForkDiagram, LadderDiagram
from .topology import EquivRelation, FinSpace, SpectralMap, partition, space_of_poset


def rng_for(seed, suite=""):
    """Stable RNG; string seeding is deterministic across runs and platforms."""
    return random.Random(f"{seed}/{suite}")


def random_poset(rng, n, density=None):
    """Random poset on n elements via a random DAG plus closure."""
    p = rng.uniform(0.1, 0.7) if density is None else density
    perm = rng.sample(range(n), n)
    pairs = [
        (perm[i], perm[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return validate_poset(n, pairs)


def random_space(rng, n, density=None):
    """Random preorder (cycles allowed) on n points."""
    p = rng.uniform(0.05, 0.5) if density is None else density
    pairs = [
        (i, j) for i in range(n) for j in range(n) if i != j and rng.random() < p
    ]
    from .topology import validate_space

    return validate_space(n, pairs)


def random_partition(rng, n):
    """Random set partition of range(n) as a list of blocks."""
    if n == 0:
        return []
    k = rng.randint(1, n)
    pts = list(range(n))
    rng.shuffle(pts)
    blocks = [[pts[i]] for i in range(k)]
    for x in pts[k:]:
        blocks[rng.randrange(k)].append(x)
    return blocks


def monotone_assignments(P, Q):
    """All order-preserving assignments P -> Q, by backtracking."""
    order = linear_extension(P)
    assign = [0] * P.n

    def rec(k):
        if k == len(order):
            yield tuple(assign)
            return
        x = order[k]
        preds = [order[i] for i in range(k) if P.le(order[i], x)]
        for q in range(Q.n):
            if all(Q.le(assign[p], q) for p in preds):
                assign[x] = q
                yield from rec(k + 1)

    yield from rec(0)


def random_monotone_assignment(rng, P, Q):
    """One random order-preserving assignment P -> Q, or None if none exists."""
    order = linear_extension(P)
    assign = [0] * P.n

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        preds = [order[i] for i in range(k) if P.le(order[i], x)]
        cands = list(range(Q.n))
        rng.shuffle(cands)
        for q in cands:
            if all(Q.le(assign[p], q) for p in preds):
                assign[x] = q
                if rec(k + 1):
                    return True
        return False

    if P.n > 0 and Q.n == 0:
        return None
    return tuple(assign) if rec(0) else None


def dual_lattice_map(LP, LQ, phi):
    """Lattice map downsets(P) -> downsets(Q) from a monotone phi: Q -> P."""
    assignment = []
    for m in LP.elements:
        pre = 0
        for q, pq in enumerate(phi):
            if m >> pq & 1:
                pre |= 1 << q
        assignment.append(LQ.index_of(pre))
    return LatticeMap(LP, LQ, tuple(assignment))


def random_lattice(rng, max_ji=5):
    return from_birkhoff(random_poset(rng, rng.randint(0, max_ji)))


def random_lattice_map_pair(rng, max_ji=5):
    """Two lattice maps with shared endpoints, via spectral duality."""
    while True:
        P = random_poset(rng, rng.randint(0, max_ji))
        Q = random_poset(rng, rng.randint(0, max_ji))
        a1 = random_monotone_assignment(rng, Q, P)
        a2 = random_monotone_assignment(rng, Q, P)
        if a1 is None or a2 is None:
            continue
        LP, LQ = from_birkhoff(P), from_birkhoff(Q)
        return dual_lattice_map(LP, LQ, a1), dual_lattice_map(LP, LQ, a2)


def random_split_fork(rng, max_size=6):
    """A fork satisfying the three split equations by construction."""
    n0 = rng.randint(1, max(1, max_size - 2))
    n1 = n0 + rng.randint(0, max_size - n0)
    n2 = n1 + rng.randint(0, max(0, max_size - n1))
    f = tuple(rng.sample(range(n1), n0))
    u = [rng.randrange(n0) for _ in range(n1)]
    for x, y in enumerate(f):
        u[y] = x
    beta = tuple(rng.sample(range(n2), n1))
    v = [rng.randrange(n1) for _ in range(n2)]
    for y, z in enumerate(beta):
        v[z] = y
    image_f = set(f)
    alpha = []
    for y in range(n1):
        if y in image_f:
            alpha.append(beta[y])
        else:
            target = f[u[y]]
            alpha.append(rng.choice([z for z in range(n2) if v[z] == target]))
    return ForkDiagram(n0, n1, n2, f, tuple(alpha), beta, tuple(u), tuple(v))


def random_injective_ladder(rng, max_size=6):
    """Ladder satisfying the injective lemma's hypotheses by construction."""
    T = random_split_fork(rng, max_size)
    y1 = sorted(rng.sample(range(T.x1), rng.randint(0, T.x1)))
    pos1 = {v: k for k, v in enumerate(y1)}
    base2 = {T.alpha[y] for y in y1} | {T.beta[y] for y in y1}
    extra2 = [z for z in range(T.x2) if z not in base2 and rng.random() < 0.3]
    y2 = sorted(base2 | set(extra2))
    pos2 = {v: k for k, v in enumerate(y2)}
    gamma = tuple(pos2[T.alpha[y]] for y in y1)
    delta = tuple(pos2[T.beta[y]] for y in y1)
    candidates = [x for x in range(T.x0) if T.f[x] in pos1]
    y0 = sorted(rng.sample(candidates, rng.randint(0, len(candidates))))
    g = tuple(pos1[T.f[x]] for x in y0)
    bottom = ForkDiagram(len(y0), len(y1), len(y2), g, gamma, delta)
    return LadderDiagram(T, bottom, tuple(y0), tuple(y1), tuple(y2))


def random_retraction_ladder(rng, max_size=6):
    """Ladder satisfying the retraction lemma's hypotheses by construction."""
    n1 = rng.randint(1, max_size)
    n2 = rng.randint(1, max_size)
    alpha = tuple(rng.randrange(n2) for _ in range(n1))
    beta = tuple(rng.randrange(n2) for _ in range(n1))
    agree = [y for y in range(n1) if alpha[y] == beta[y]]
    top = ForkDiagram(len(agree), n1, n2, tuple(agree), alpha, beta)
    i1 = tuple(rng.sample(range(n1), n1))
    r1 = [0] * n1
    for y, x in enumerate(i1):
        r1[x] = y
    base2 = set(alpha) | set(beta) or {0}
    extra2 = [z for z in range(n2) if z not in base2 and rng.random() < 0.3]
    y2 = sorted(base2 | set(extra2))
    pos2 = {v: k for k, v in enumerate(y2)}
    i2 = tuple(y2)
    r2 = [rng.randrange(len(y2)) for _ in range(n2)]
    for w, z in enumerate(i2):
        r2[z] = w
    gamma = tuple(pos2[alpha[i1[y]]] for y in range(n1))
    delta = tuple(pos2[beta[i1[y]]] for y in range(n1))
    n0 = len(agree)
    m0 = rng.randint(min(1, n0), n0)
    i0 = tuple(sorted(rng.sample(range(n0), m0)))
    pos0 = {v: k for k, v in enumerate(i0)}
    r0 = [rng.randrange(m0) if m0 else 0 for _ in range(n0)]
    for y, x in enumerate(i0):
        r0[x] = y
    g = tuple(r1[top.f[x]] for x in i0)
    bottom = ForkDiagram(m0, n1, len(y2), g, gamma, delta)
    return LadderDiagram(
        top, bottom, i0, i1, i2, tuple(r0), tuple(r1), tuple(r2)
    )


def random_coeq_problem(rng, max_n=6):
    """Random parallel pair of monotone maps between random posets."""
    ny = rng.randint(1, max_n)
    nz = rng.randint(0, max_n)
    Y = random_poset(rng, ny)
    Z = random_poset(rng, nz)
    SY, SZ = space_of_poset(Y), space_of_poset(Z)
    g = SpectralMap(SZ, SY, random_monotone_assignment(rng, Z, Y))
    h = SpectralMap(SZ, SY, random_monotone_assignment(rng, Z, Y))
    return CoeqProblem(SZ, SY, g, h)


def random_equiv(rng, X):
    return partition(X, random_partition(rng, X.n))


def _compose(g, h):
    return tuple(h[x] for x in g)


def random_group_action(rng, order, max_n=8):
    """Cyclic action of the given order on a random poset.

    The poset is built from `order` copies of a block permuted cyclically
    plus a fixed part, then thickened with random orbit-closed relations that
    keep antisymmetry, so every group element is an automorphism by
    construction.
    """
    k = order
    nb = rng.randint(1, max(1, max_n // k))
    nf = rng.randint(0, max(0, min(2, max_n - k * nb)))
    B = random_poset(rng, nb)
    F = random_poset(rng, nf)
    n = k * nb + nf

    def sigma(x):
        if x < k * nb:
            t, b = divmod(x, nb)
            return ((t + 1) % k) * nb + b
        return x

    rows = [0] * n
    for t in range(k):
        for b in range(nb):
            rows[t * nb + b] = B.leq[b] << (t * nb)
    for i in range(nf):
        rows[k * nb + i] = F.leq[i] << (k * nb)
    rows = list(bits.close_reflexive_transitive(n, rows))
    for _ in range(rng.randint(0, 4)):
        x, y = rng.randrange(n), rng.randrange(n)
        trial = list(rows)
        px, py = x, y
        for _ in range(k):
            trial[px] |= 1 << py
            px, py = sigma(px), sigma(py)
        trial = list(bits.close_reflexive_transitive(n, trial))
        if bits.antisymmetry_violation(n, trial) is None:
            rows = trial
    space = FinSpace(n, tuple(rows))
    g = tuple(sigma(x) for x in range(n))
    elems = [tuple(range(n))]
    for _ in range(k - 1):
        elems.append(_compose(elems[-1], g))
    return GroupAction(space, tuple(elems))


def natural_posets(n):
    """All posets on 0..n-1 whose index order is a linear extension."""
    level = [FinPoset(0, ())]
    for size in range(n):
        grown = []
        for P in level:
            for D in downsets(P):
                rows = list(P.leq)
                for i in bits.bits(D):
                    rows[i] |= 1 << size
                rows.append(1 << size)
                grown.append(FinPoset(size + 1, tuple(rows)))
        level = grown
    return level


def _relabel_rows(n, rows, perm):
    out = [0] * n
    for i in range(n):
        m = 0
        for j in bits.bits(rows[i]):
            m |= 1 << perm[j]
        out[perm[i]] = m
    return tuple(out)


_ISO_CACHE = {}


def poset_iso_classes(n):
    """One representative per isomorphism class of posets on n elements."""
    if n in _ISO_CACHE:
        return _ISO_CACHE[n]
    reps = {}
    perms = list(permutations(range(n)))
    for P in natural_posets(n):
        key = min(_relabel_rows(n, P.leq, perm) for perm in perms)
        reps.setdefault(key, P)
    out = list(reps.values())
    _ISO_CACHE[n] = out
    return out


def all_preorders(n):
    """Every preorder on n labelled points (closures of all relations)."""
    seen = set()
    out = []
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for code in range(1 << len(offdiag)):
        rows = [0] * n
        for b, (i, j) in enumerate(offdiag):
            if code >> b & 1:
                rows[i] |= 1 << j
        closed = bits.close_reflexive_transitive(n, rows)
        if closed not in seen:
            seen.add(closed)
            out.append(FinSpace(n, closed))
    return out


def all_partitions(n):
    """All set partitions of range(n), by restricted growth strings."""
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def rec(i, maxval):
        if i == n:
            blocks = [[] for _ in range(maxval + 1)]
            for x, b in enumerate(rgs):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(maxval + 2):
            rgs[i] = b
            yield from rec(i + 1, max(maxval, b))

    yield from rec(1, 0)
