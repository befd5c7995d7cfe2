"""Bundled verification suites: exhaustive small cases plus seeded random runs.

Each suite returns a SuiteResult with a reproducer dict per failure; the
corpus runner prints one line per suite, optionally writes a delimited
summary and a figure, and dumps reproducer files for anything that failed.
These are the same suites the acceptance tests assert on.
"""

import csv
import os
import time
from dataclasses import dataclass, field
from importlib.resources import files

from . import gen, jsonio
from .descent import CoeqProblem, comparison, group_coequalizer, spectral_coequalizer
from .dlat import from_birkhoff, equalizer
from .errors import InvariantViolation, StonekitError
from .finposet import is_isomorphic
from .stone import round_trip_lattice, round_trip_space
from .topology import (
    SpectralMap,
    check_quotient_criterion,
    kq,
    partition,
    poset_of_space,
    quotient,
    space_of_poset,
    topological_coequalizer,
)


def bundled(name):
    """A bundled data file (see src/stonekit/data) parsed as JSON."""
    import json

    return json.loads(files("stonekit").joinpath(f"data/{name}").read_text())


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    return wrapper


@_timed
def suite_example41(seed=0, cases=1, max_n=None, oracle="auto"):
    """The diverging-pushout fork: 1 spectral point vs 2 indiscrete ones."""
    result = SuiteResult("example41", cases=min(1, cases))
    if result.cases == 0:
        return result
    problem = jsonio.parse_coeq_problem(bundled("example41.json"))
    try:
        spec_space, _ = spectral_coequalizer(problem)
        rep = comparison(problem, oracle=oracle)
        checks = [
            ("spectral has 1 point", spec_space.n == 1),
            ("topological has 2 points", rep.topological.n == 2),
            (
                "topological is indiscrete",
                rep.topological.pre == ((1 << rep.topological.n) - 1,) * rep.topological.n,
            ),
            ("kq of topological has 1 point", rep.kq_points == 1),
            ("flagged not T0", "not T0" in rep.flags),
            ("flagged p not injective", "p not injective" in rep.flags),
        ]
        bad = [name for name, okay in checks if not okay]
        if bad:
            result.failures.append({"failed_checks": bad})
    except StonekitError as e:
        result.failures.append({"error": repr(e)})
    return result


@_timed
def suite_round_trips(seed=0, cases=1000, max_n=8, oracle="auto"):
    """Both duality round trips: exhaustive posets <= 5, then random ones."""
    result = SuiteResult("round_trips", cases=0)
    instances = []
    if cases > 0:
        for n in range(min(5, max_n) + 1):
            instances.extend(gen.poset_iso_classes(n))
    rng = gen.rng_for(seed, "round_trips")
    for _ in range(cases):
        instances.append(gen.random_poset(rng, rng.randint(0, max_n)))
    result.cases = len(instances)
    for P in instances:
        try:
            round_trip_space(space_of_poset(P))
            round_trip_lattice(from_birkhoff(P))
        except StonekitError as e:
            result.failures.append({"poset": jsonio.emit_poset(P), "error": repr(e)})
    return result


@_timed
def suite_equalizers(seed=0, cases=500, max_n=5, oracle="auto"):
    """Lattice equalizers: carrier = set equalizer, and it is a sublattice."""
    result = SuiteResult("equalizers", cases=cases)
    rng = gen.rng_for(seed, "equalizers")
    for _ in range(cases):
        alpha, beta = gen.random_lattice_map_pair(rng, max_ji=max_n)
        L = alpha.src
        expected = [x for x in range(len(L)) if alpha(x) == beta(x)]
        repro = {
            "lattice": jsonio.emit_lattice(L),
            "alpha": list(alpha.assignment),
            "beta": list(beta.assignment),
        }
        try:
            E, incl = equalizer(alpha, beta)
            carrier = sorted(incl.assignment)
            if carrier != expected:
                result.failures.append({**repro, "carrier": carrier})
                continue
            cs = set(carrier)
            closed = all(
                L.join(x, y) in cs and L.meet(x, y) in cs
                for x in carrier
                for y in carrier
            )
            if not (closed and L.bottom in cs and L.top in cs):
                result.failures.append({**repro, "not_sublattice": carrier})
        except StonekitError as e:
            result.failures.append({**repro, "error": repr(e)})
    return result


def _pipeline_agreement_case(problem):
    spec_space, _ = spectral_coequalizer(problem)
    top_space, _ = topological_coequalizer(problem.g, problem.h)
    reflected = kq(top_space).poset
    return is_isomorphic(poset_of_space(spec_space), reflected) is not None


@_timed
def suite_pipeline_agreement(seed=0, cases=1000, max_n=6, oracle="auto"):
    """spectral coequalizer vs KQ of the topological one, two pipelines."""
    result = SuiteResult("pipeline_agreement", cases=0)
    problems = []
    if cases > 0:
        small = min(3, max_n)
        classes = [P for n in range(small + 1) for P in gen.poset_iso_classes(n)]
        for Z in classes:
            for Y in classes:
                if Y.n == 0 and Z.n > 0:
                    continue
                sz, sy = space_of_poset(Z), space_of_poset(Y)
                assignments = list(gen.monotone_assignments(Z, Y))
                for ag in assignments:
                    for ah in assignments:
                        problems.append(
                            CoeqProblem(
                                sz,
                                sy,
                                SpectralMap(sz, sy, ag),
                                SpectralMap(sz, sy, ah),
                            )
                        )
    rng = gen.rng_for(seed, "pipeline_agreement")
    for _ in range(cases):
        problems.append(gen.random_coeq_problem(rng, max_n))
    result.cases = len(problems)
    for problem in problems:
        repro = {
            "z": jsonio.emit_space(problem.z),
            "y": jsonio.emit_space(problem.y),
            "g": list(problem.g.assignment),
            "h": list(problem.h.assignment),
        }
        try:
            if not _pipeline_agreement_case(problem):
                result.failures.append(repro)
        except StonekitError as e:
            result.failures.append({**repro, "error": repr(e)})
    return result


@_timed
def suite_fork_lemmas(seed=0, cases=500, max_n=6, oracle="auto"):
    """Hypothesis-satisfying ladders; the deciders assert the equivalences."""
    from .fork import lemma_injective_decide, lemma_retraction_decide

    result = SuiteResult("fork_lemmas", cases=2 * cases)
    rng = gen.rng_for(seed, "fork_lemmas")
    for kind, make, decide in (
        ("injective", gen.random_injective_ladder, lemma_injective_decide),
        ("retraction", gen.random_retraction_ladder, lemma_retraction_decide),
    ):
        for _ in range(cases):
            ladder = make(rng, max_n)
            try:
                decide(ladder)
            except StonekitError as e:
                result.failures.append({"lemma": kind, "error": repr(e)})
    return result


@_timed
def suite_quotient_criterion(seed=0, cases=500, max_n=6, oracle="auto"):
    """Soundness: whenever all three hypotheses hold, c is a homeomorphism.

    The decision procedure itself raises InternalError on an implication
    failure; the bundled diverging-pushout instance must additionally show
    at least one failing hypothesis.
    """
    result = SuiteResult("quotient_criterion", cases=cases)
    if cases == 0:
        return result
    result.cases = cases + 1
    problem = jsonio.parse_coeq_problem(bundled("example41.json"))
    try:
        rep = check_quotient_criterion(
            problem.y,
            partition(problem.y, [[0, 2], [1, 3]]),
            oracle=oracle,
        )
        if rep.hypotheses_hold or rep.comparison_homeo:
            result.failures.append({"example41": "expected a failing hypothesis"})
    except StonekitError as e:
        result.failures.append({"example41": repr(e)})
    rng = gen.rng_for(seed, "quotient_criterion")
    for _ in range(cases):
        X = space_of_poset(gen.random_poset(rng, rng.randint(1, max_n)))
        R = gen.random_equiv(rng, X)
        repro = {
            "space": jsonio.emit_space(X),
            "classes": [sorted_members(c) for c in R.classes],
        }
        try:
            rep = check_quotient_criterion(X, R, oracle=oracle)
            if rep.hypotheses_hold and not rep.comparison_homeo:
                result.failures.append(repro)
        except StonekitError as e:
            result.failures.append({**repro, "error": repr(e)})
    return result


def sorted_members(mask):
    from . import bits

    return list(bits.bits(mask))


@_timed
def suite_galois_orbits(seed=0, cases=200, max_n=8, oracle="auto"):
    """Cyclic actions: spectral coequalizer vs topological orbit space."""
    result = SuiteResult("galois_orbits", cases=cases)
    rng = gen.rng_for(seed, "galois_orbits")
    for k in range(cases):
        order = 2 if k % 2 == 0 else 3
        action = gen.random_group_action(rng, order, max_n)
        repro = {
            "space": jsonio.emit_space(action.space),
            "elements": [list(g) for g in action.elements],
        }
        try:
            rep = group_coequalizer(action, oracle=oracle)
            witness = is_isomorphic(
                poset_of_space(rep.orbit_space), poset_of_space(rep.spectral)
            )
            if witness is None:
                result.failures.append(repro)
        except StonekitError as e:
            result.failures.append({**repro, "error": repr(e)})
    return result


@_timed
def suite_quotient_oracle(seed=0, cases=500, max_n=6, oracle="on"):
    """Transitive-closure quotient vs direct quotient-topology opens."""
    result = SuiteResult("quotient_oracle", cases=0)
    instances = []
    if cases > 0:
        for n in range(min(4, max_n) + 1):
            spaces = gen.all_preorders(n)
            parts = list(gen.all_partitions(n))
            for X in spaces:
                for blocks in parts:
                    instances.append((X, partition(X, blocks)))
    rng = gen.rng_for(seed, "quotient_oracle")
    for _ in range(cases):
        X = gen.random_space(rng, rng.randint(0, max_n))
        instances.append((X, gen.random_equiv(rng, X)))
    result.cases = len(instances)
    for X, R in instances:
        try:
            quotient(X, R, oracle="on")
        except StonekitError as e:
            result.failures.append(
                {
                    "space": jsonio.emit_space(X),
                    "classes": [sorted_members(c) for c in R.classes],
                    "error": repr(e),
                }
            )
    return result


SUITES = (
    suite_example41,
    suite_round_trips,
    suite_equalizers,
    suite_pipeline_agreement,
    suite_fork_lemmas,
    suite_quotient_criterion,
    suite_galois_orbits,
    suite_quotient_oracle,
)


def run_corpus(seed=0, max_size=None, oracle="auto", report_dir=None, out=None):
    """Run every suite; returns the SuiteResult list.

    max_size=0 runs everything empty (a passing no-op); otherwise it caps
    instance sizes without touching the case counts.  When report_dir is
    set, a delimited summary (corpus.csv) and a rendered figure (corpus.png)
    are written there, along with a reproducer JSON per failing suite.
    """
    results = []
    for fn in SUITES:
        kwargs = {"seed": seed, "oracle": oracle}
        if max_size == 0:
            kwargs["cases"] = 0
        elif max_size is not None:
            kwargs["max_n"] = max_size
        results.append(fn(**kwargs))
    if report_dir is not None:
        os.makedirs(report_dir, exist_ok=True)
        with open(os.path.join(report_dir, "corpus.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["suite", "cases", "failures"])
            for r in results:
                writer.writerow([r.name, r.cases, len(r.failures)])
        from .figures import render_corpus

        render_corpus(os.path.join(report_dir, "corpus.png"), results)
    for r in results:
        if r.failures:
            target = report_dir or "."
            path = os.path.join(target, f"stonekit-repro-{r.name}.json")
            with open(path, "w") as fh:
                fh.write(jsonio.dumps({"seed": seed, "failures": r.failures}))
    return results


def ensure_pass(results):
    bad = [r.name for r in results if r.failures]
    if bad:
        raise InvariantViolation(f"corpus suites failed: {', '.join(bad)}")
