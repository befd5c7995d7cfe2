"""Split-fork recognition and two ladder-diagram lemmas over finite sets.

Objects are sizes, maps are index tuples; the poset-level applications are
obtained by forgetting order, which is exactly how the lemmas get used.
Each decider validates the hypotheses pointwise, evaluates every side of the
lemma's equivalence by brute force, and raises InternalError if the sides
disagree: a counterexample to the lemma is a build-breaking event, never a
reportable result.
"""

from dataclasses import dataclass

from .errors import HypothesisFailed, InternalError, MissingSplitting


def _check_map(name, m, src, dst):
    if len(m) != src:
        raise ValueError(f"{name} must be total on {src} elements")
    for x, y in enumerate(m):
        if not 0 <= y < dst:
            raise IndexError(f"{name}({x}) = {y} out of range")


@dataclass(frozen=True)
class ForkDiagram:
    """f: X0 -> X1 followed by a parallel pair alpha, beta: X1 -> X2.

    The fork identity alpha(f(x)) = beta(f(x)) is enforced on construction;
    u and v are the optional splitting maps.
    """

    x0: int
    x1: int
    x2: int
    f: tuple
    alpha: tuple
    beta: tuple
    u: tuple | None = None
    v: tuple | None = None

    def __post_init__(self):
        if min(self.x0, self.x1, self.x2) < 0:
            raise ValueError("negative set size")
        _check_map("f", self.f, self.x0, self.x1)
        _check_map("alpha", self.alpha, self.x1, self.x2)
        _check_map("beta", self.beta, self.x1, self.x2)
        if self.u is not None:
            _check_map("u", self.u, self.x1, self.x0)
        if self.v is not None:
            _check_map("v", self.v, self.x2, self.x1)
        for x in range(self.x0):
            if self.alpha[self.f[x]] != self.beta[self.f[x]]:
                raise ValueError(f"not a fork: alpha(f({x})) != beta(f({x}))")


def split_fork_violation(D):
    """First violated split equation as (equation, point), or None."""
    if D.u is None or D.v is None:
        raise MissingSplitting("u and v are required to test the split equations")
    for x in range(D.x0):
        if D.u[D.f[x]] != x:
            return ("u.f = id", x)
    for y in range(D.x1):
        if D.v[D.beta[y]] != y:
            return ("v.beta = id", y)
    for y in range(D.x1):
        if D.v[D.alpha[y]] != D.f[D.u[y]]:
            return ("v.alpha = f.u", y)
    return None


def is_split_fork(D):
    return split_fork_violation(D) is None


def equalizer_violation(D):
    """Why f fails to equalize alpha and beta, or None.

    Returns ("not-injective", (x, x')) or ("not-onto-agreement", y) with the
    first witness in index order.
    """
    seen = {}
    for x in range(D.x0):
        y = D.f[x]
        if y in seen:
            return ("not-injective", (seen[y], x))
        seen[y] = x
    for y in range(D.x1):
        if D.alpha[y] == D.beta[y] and y not in seen:
            return ("not-onto-agreement", y)
    return None


def is_equalizer(D):
    """Brute force: f injective with image the agreement set of alpha, beta."""
    return equalizer_violation(D) is None


@dataclass(frozen=True)
class LadderDiagram:
    """Two stacked forks with vertical maps bottom -> top (and retractions).

    The bottom fork's maps play the roles conventionally written g, gamma,
    delta; they are stored under the uniform ForkDiagram field names.
    """

    top: ForkDiagram
    bottom: ForkDiagram
    i0: tuple
    i1: tuple
    i2: tuple
    r0: tuple | None = None
    r1: tuple | None = None
    r2: tuple | None = None

    def __post_init__(self):
        _check_map("i0", self.i0, self.bottom.x0, self.top.x0)
        _check_map("i1", self.i1, self.bottom.x1, self.top.x1)
        _check_map("i2", self.i2, self.bottom.x2, self.top.x2)
        if self.r0 is not None:
            _check_map("r0", self.r0, self.top.x0, self.bottom.x0)
        if self.r1 is not None:
            _check_map("r1", self.r1, self.top.x1, self.bottom.x1)
        if self.r2 is not None:
            _check_map("r2", self.r2, self.top.x2, self.bottom.x2)


def _first_duplicate(m):
    seen = {}
    for x, y in enumerate(m):
        if y in seen:
            return (seen[y], x)
        seen[y] = x
    return None


@dataclass(frozen=True)
class InjectiveLemmaReport:
    bottom_is_equalizer: bool
    lifts_exist: bool
    equalizer_witness: tuple | None
    lift_witness: int | None


def lemma_injective_decide(L):
    """Decide the injective-ladder lemma on a concrete diagram.

    Hypotheses: the top fork is split, i0 and i1 are injective, and the
    verticals commute with the horizontal maps.  Conclusion sides evaluated
    independently: (a) the bottom fork is an equalizer; (b) every bottom
    agreement point lifts along i0 through u.  Their equivalence is asserted.
    """
    T, B = L.top, L.bottom
    viol = split_fork_violation(T)
    if viol is not None:
        raise HypothesisFailed("(i) top fork is split", viol)
    for name, m in (("i0", L.i0), ("i1", L.i1)):
        dup = _first_duplicate(m)
        if dup is not None:
            raise HypothesisFailed(f"(ii) {name} is injective", dup)
    for y0 in range(B.x0):
        if T.f[L.i0[y0]] != L.i1[B.f[y0]]:
            raise HypothesisFailed("(iii) f.i0 = i1.g", y0)
    for y1 in range(B.x1):
        if T.alpha[L.i1[y1]] != L.i2[B.alpha[y1]]:
            raise HypothesisFailed("(iv) alpha.i1 = i2.gamma", y1)
        if T.beta[L.i1[y1]] != L.i2[B.beta[y1]]:
            raise HypothesisFailed("(iv) beta.i1 = i2.delta", y1)
    a_violation = equalizer_violation(B)
    image_i0 = set(L.i0)
    lift_witness = None
    for y1 in range(B.x1):
        if B.alpha[y1] == B.beta[y1] and T.u[L.i1[y1]] not in image_i0:
            lift_witness = y1
            break
    a = a_violation is None
    b = lift_witness is None
    if a != b:
        raise InternalError("injective ladder lemma violated: (a) != (b)")
    return InjectiveLemmaReport(
        bottom_is_equalizer=a,
        lifts_exist=b,
        equalizer_witness=a_violation,
        lift_witness=lift_witness,
    )


@dataclass(frozen=True)
class RetractionLemmaReport:
    r0_bijective: bool
    square_commutes: bool
    bottom_is_equalizer: bool
    r0_witness: tuple | None
    square_witness: int | None
    equalizer_witness: tuple | None


def lemma_retraction_decide(L):
    """Decide the retraction-ladder lemma on a concrete diagram.

    Hypotheses: the top fork is an equalizer, each r_k retracts i_k, i1 is
    bijective, and the three squares commute.  Conclusion sides evaluated
    independently: (a) r0 is bijective; (b) g.r0 = r1.f; (c) the bottom fork
    is an equalizer.  The three-way equivalence is asserted.
    """
    T, B = L.top, L.bottom
    if L.r0 is None or L.r1 is None or L.r2 is None:
        raise MissingSplitting("r0, r1 and r2 are required for this lemma")
    ev = equalizer_violation(T)
    if ev is not None:
        raise HypothesisFailed("(i) top fork is an equalizer", ev)
    for name, r, i in (("r0", L.r0, L.i0), ("r1", L.r1, L.i1), ("r2", L.r2, L.i2)):
        for y, x in enumerate(i):
            if r[x] != y:
                raise HypothesisFailed(f"(ii) {name} retracts i{name[1]}", y)
    if T.x1 != B.x1 or len(set(L.i1)) != B.x1:
        raise HypothesisFailed("(iii) i1 is bijective", None)
    for y0 in range(B.x0):
        if T.f[L.i0[y0]] != L.i1[B.f[y0]]:
            raise HypothesisFailed("(iv) f.i0 = i1.g", y0)
    for y1 in range(B.x1):
        if T.alpha[L.i1[y1]] != L.i2[B.alpha[y1]]:
            raise HypothesisFailed("(iv) alpha.i1 = i2.gamma", y1)
        if T.beta[L.i1[y1]] != L.i2[B.beta[y1]]:
            raise HypothesisFailed("(iv) beta.i1 = i2.delta", y1)
    r0_witness = _first_duplicate(L.r0) if T.x0 != B.x0 or len(set(L.r0)) != T.x0 else None
    a = T.x0 == B.x0 and len(set(L.r0)) == T.x0
    square_witness = None
    for x0 in range(T.x0):
        if B.f[L.r0[x0]] != L.r1[T.f[x0]]:
            square_witness = x0
            break
    b = square_witness is None
    c_violation = equalizer_violation(B)
    c = c_violation is None
    if not (a == b == c):
        raise InternalError("retraction ladder lemma violated: (a), (b), (c) differ")
    return RetractionLemmaReport(
        r0_bijective=a,
        square_commutes=b,
        bottom_is_equalizer=c,
        r0_witness=r0_witness,
        square_witness=square_witness,
        equalizer_witness=c_violation,
    )
