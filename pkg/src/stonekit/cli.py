"""Command-line front end: parse JSON artifacts, dispatch, emit JSON/DOT/figures.

Exit codes: 0 on success, 2 on a validation error (structured report on
stderr), 1 on an internal trap (OracleMismatch, InternalError and friends),
which indicates a bug rather than bad input.  Output for a given input and
seed is byte-identical across runs.
"""

import argparse
import json
import os
import sys

from . import corpus, dot, jsonio
from .descent import comparison, group_coequalizer, spectral_coequalizer, verify_split_descent
from .errors import InternalError, MissingSplitting, StonekitError
from .fork import (
    equalizer_violation,
    lemma_injective_decide,
    lemma_retraction_decide,
    split_fork_violation,
)
from .stone import hochster_dual, omega, spec_of_lattice
from .topology import check_quotient_criterion, kq, quotient, space_of_poset


def _load(path):
    return jsonio.load_file(path), os.path.dirname(path)


def _write(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_dot(args, text):
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(text)


def _emit_fig(args, named_spaces):
    if getattr(args, "fig", None):
        from .figures import render_spaces

        render_spaces(args.fig, named_spaces)


def _cmd_spec(args):
    obj, base = _load(args.input)
    lattice = jsonio.parse_lattice(obj, base)
    space = spec_of_lattice(lattice)
    _write(args, jsonio.dumps(jsonio.emit_space(space)))
    _emit_dot(args, dot.space_dot(space, "spec"))
    _emit_fig(args, [("spec", space)])
    return 0


def _cmd_omega(args):
    obj, base = _load(args.input)
    space = jsonio.parse_space(obj, base)
    lattice = omega(space)
    _write(args, jsonio.dumps(jsonio.emit_lattice(lattice)))
    _emit_dot(args, dot.lattice_dot(lattice, "omega"))
    _emit_fig(args, [("input", space), ("omega (element order)",
                                        space_of_poset(dot.lattice_order_poset(lattice)))])
    return 0


def _cmd_hochster(args):
    obj, base = _load(args.input)
    space = jsonio.parse_space(obj, base)
    dual = hochster_dual(space)
    _write(args, jsonio.dumps(jsonio.emit_space(dual)))
    _emit_dot(args, dot.spaces_dot([("input", space), ("dual", dual)], "hochster"))
    _emit_fig(args, [("input", space), ("dual", dual)])
    return 0


def _cmd_kq(args):
    obj, base = _load(args.input)
    space = jsonio.parse_space(obj, base)
    K = kq(space)
    out = space_of_poset(K.poset)
    _write(args, jsonio.dumps(jsonio.emit_space(out)))
    _emit_dot(args, dot.spaces_dot([("input", space), ("kq", out)], "kq"))
    _emit_fig(args, [("input", space), ("kq", out)])
    return 0


def _comparison_dict(rep):
    return {
        "topological": jsonio.emit_space(rep.topological),
        "spectral": jsonio.emit_space(rep.spectral),
        "phi_top": list(rep.phi_top.assignment),
        "phi_spec": list(rep.phi_spec.assignment),
        "p": list(rep.p.assignment),
        "p_injective": rep.p_injective,
        "p_surjective": rep.p_surjective,
        "p_closed": rep.p_closed,
        "phi_spec_closed": rep.phi_spec_closed,
        "t0": rep.t0,
        "homeomorphism": rep.homeomorphism,
        "kq_points": rep.kq_points,
        "flags": rep.flags,
    }


def _cmd_coeq(args):
    obj, base = _load(args.input)
    problem = jsonio.parse_coeq_problem(obj, base)
    report = {"category": args.cat}
    named = [("Z", problem.z), ("Y", problem.y)]
    if args.cat in ("spec", "both"):
        space, phi = spectral_coequalizer(problem)
        report["spectral"] = {
            "space": jsonio.emit_space(space),
            "map": list(phi.assignment),
            "points": space.n,
        }
        named.append(("spectral coeq", space))
    if args.cat in ("top", "both"):
        from .topology import topological_coequalizer

        space, phi = topological_coequalizer(
            problem.g, problem.h, oracle=args.oracle
        )
        report["topological"] = {
            "space": jsonio.emit_space(space),
            "map": list(phi.assignment),
            "points": space.n,
            "t0": space.is_t0(),
            "kq_points": kq(space).poset.n,
        }
        named.append(("topological coeq", space))
    if args.cat == "both":
        report["comparison"] = _comparison_dict(comparison(problem, oracle=args.oracle))
    _write(args, jsonio.dumps(report))
    _emit_dot(args, dot.spaces_dot(named, "coeq"))
    _emit_fig(args, named)
    return 0


def _cmd_check_fork(args):
    obj, base = _load(args.input)
    kind, diagram = jsonio.parse_fork_file(obj, base)
    if kind == "fork":
        try:
            split = split_fork_violation(diagram)
            report = {"split": split is None, "split_violation": split}
        except MissingSplitting:
            report = {"split": None, "split_violation": None}
        eq = equalizer_violation(diagram)
        report.update({"equalizer": eq is None, "equalizer_violation": eq})
        report["kind"] = "fork"
    elif kind == "injective":
        rep = lemma_injective_decide(diagram)
        report = {
            "kind": "injective-ladder",
            "hypotheses": "ok",
            "bottom_is_equalizer": rep.bottom_is_equalizer,
            "lifts_exist": rep.lifts_exist,
            "equalizer_witness": rep.equalizer_witness,
            "lift_witness": rep.lift_witness,
        }
    else:
        rep = lemma_retraction_decide(diagram)
        report = {
            "kind": "retraction-ladder",
            "hypotheses": "ok",
            "r0_bijective": rep.r0_bijective,
            "square_commutes": rep.square_commutes,
            "bottom_is_equalizer": rep.bottom_is_equalizer,
        }
    _write(args, jsonio.dumps(report))
    return 0


def _cmd_descend(args):
    obj, base = _load(args.input)
    diagram = jsonio.parse_descent_diagram(obj, base)
    rep = verify_split_descent(diagram)
    report = {
        "certified": True,
        "split_equations": "ok",
        "equalizer_elements": len(rep.equalizer_lattice),
        "lattice_iso": list(rep.lattice_iso.assignment),
        "spec_points": {
            "l0": rep.spec_l0.n,
            "l1": rep.spec_l1.n,
            "l2": rep.spec_l2.n,
            "coequalizer": rep.coequalizer.n,
        },
        "coequalizing_map": list(rep.coequalizing_map.assignment),
        "homeomorphism": list(rep.homeomorphism.assignment),
    }
    _write(args, jsonio.dumps(report))
    named = [
        ("spec L2", rep.spec_l2),
        ("spec L1", rep.spec_l1),
        ("coequalizer", rep.coequalizer),
        ("spec L0", rep.spec_l0),
    ]
    _emit_dot(args, dot.spaces_dot(named, "descend"))
    _emit_fig(args, named)
    return 0


def _cmd_quotient(args):
    if (args.group is None) == (args.input is None):
        raise ValueError("give either a space with --classes or --group <action>")
    if args.group is not None:
        obj, base = _load(args.group)
        action = jsonio.parse_action(obj, base)
        rep = group_coequalizer(action, oracle=args.oracle)
        report = {
            "orbit_space": jsonio.emit_space(rep.orbit_space),
            "projection": list(rep.projection.assignment),
            "spectral": jsonio.emit_space(rep.spectral),
            "witness": list(rep.witness.assignment),
            "comparison": _comparison_dict(rep.comparison),
        }
        named = [("input", action.space), ("orbit space", rep.orbit_space)]
    else:
        obj, base = _load(args.input)
        space = jsonio.parse_space(obj, base)
        if args.classes is None:
            raise ValueError("--classes <relation.json> is required")
        relation = jsonio.parse_relation(jsonio.load_file(args.classes), space)
        q, proj = quotient(space, relation, oracle=args.oracle)
        crit = check_quotient_criterion(space, relation, oracle=args.oracle)
        report = {
            "quotient": jsonio.emit_space(q),
            "map": list(proj.assignment),
            "criterion": {
                "quotient_map_closed": crit.quotient_map_closed,
                "fibers_t1": crit.fibers_t1,
                "fibers_in_saturated_closure": crit.fibers_in_saturated_closure,
                "hypotheses_hold": crit.hypotheses_hold,
                "comparison_homeo": crit.comparison_homeo,
                "spectral": jsonio.emit_space(crit.spectral),
            },
        }
        named = [("input", space), ("quotient", q), ("spectral", crit.spectral)]
    _write(args, jsonio.dumps(report))
    _emit_dot(args, dot.spaces_dot(named, "quotient"))
    _emit_fig(args, named)
    return 0


def _cmd_corpus(args):
    results = corpus.run_corpus(
        seed=args.seed,
        max_size=args.max_size,
        oracle=args.oracle,
        report_dir=args.report_dir,
    )
    for r in results:
        sys.stdout.write(
            f"{r.name:<22} cases={r.cases:>7} failures={len(r.failures)}\n"
        )
        sys.stderr.write(f"{r.name}: {r.seconds:.2f}s\n")
    ok = all(r.ok for r in results)
    sys.stdout.write("corpus PASS\n" if ok else "corpus FAIL\n")
    return 0 if ok else 1


def _add_io_flags(sub, fig=True):
    sub.add_argument("-o", "--out", help="write the JSON result here instead of stdout")
    sub.add_argument("--dot", help="write a DOT rendering here")
    if fig:
        sub.add_argument("--fig", help="write a matplotlib figure here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stonekit",
        description="Finite Stone duality toolkit: spectra, opens, quotients, "
        "coequalizers and fork lemmas over JSON artifacts.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_oracle(p):
        p.add_argument(
            "--oracle",
            choices=["on", "off", "auto"],
            default="auto",
            help="cross-check quotients against the direct topology "
            "(auto: below a size threshold)",
        )

    p = sub.add_parser("spec", help="spectrum of a distributive lattice")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_spec)

    p = sub.add_parser("omega", help="lattice of opens of a finite space")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("hochster", help="Hochster dual of a T0 finite space")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_hochster)

    p = sub.add_parser("kq", help="Kolmogorov (T0) quotient of a finite space")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_kq)

    p = sub.add_parser("coeq", help="coequalizer of a fork of spectral maps")
    p.add_argument("input")
    p.add_argument("--cat", choices=["spec", "top", "both"], default="both")
    _add_io_flags(p)
    add_oracle(p)
    p.set_defaults(func=_cmd_coeq)

    p = sub.add_parser("check-fork", help="decide split/equalizer or a ladder lemma")
    p.add_argument("input")
    _add_io_flags(p, fig=False)
    p.set_defaults(func=_cmd_check_fork)

    p = sub.add_parser("descend", help="certify a split lattice fork and its dual coequalizer")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_descend)

    p = sub.add_parser("quotient", help="space quotient by classes, or group orbit quotient")
    p.add_argument("input", nargs="?")
    p.add_argument("--classes", help="relation file {\"classes\": [[..]]}")
    p.add_argument("--group", help="action file {\"space\": .., \"elements\": [[..]]}")
    _add_io_flags(p)
    add_oracle(p)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("corpus", help="run the bundled verification suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--max-size",
        type=int,
        default=None,
        help="cap instance sizes; 0 runs every suite empty",
    )
    p.add_argument("--report-dir", help="write corpus.csv, corpus.png and reproducers here")
    add_oracle(p)
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalError as e:
        sys.stderr.write(
            json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n"
        )
        return 1
    except (StonekitError, ValueError, IndexError, KeyError, OSError) as e:
        sys.stderr.write(
            json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n"
        )
        return 2
    except json.JSONDecodeError as e:  # pragma: no cover - ValueError subclass
        sys.stderr.write(
            json.dumps({"error": "JSONDecodeError", "message": str(e)}) + "\n"
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
