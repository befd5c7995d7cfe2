import json
import os

import pytest

from stonekit import jsonio
from stonekit.cli import main
from stonekit.corpus import bundled
from stonekit.finposet import validate_poset

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "stonekit", "data")


def data_path(name):
    return os.path.join(DATA, name)


def test_poset_roundtrip_idempotent():
    P = validate_poset(4, [(0, 1), (1, 3), (2, 3)], labels=["a", "b", "c", "d"])
    emitted = jsonio.dumps(jsonio.emit_poset(P))
    reparsed = jsonio.parse_poset(json.loads(emitted))
    assert reparsed == P
    assert jsonio.dumps(jsonio.emit_poset(reparsed)) == emitted


def test_space_roundtrip_idempotent():
    X = jsonio.parse_space(bundled("example41.json")["y"])
    emitted = jsonio.dumps(jsonio.emit_space(X))
    assert jsonio.dumps(jsonio.emit_space(jsonio.parse_space(json.loads(emitted)))) == emitted


def test_lattice_roundtrip_both_forms():
    L = jsonio.parse_lattice(bundled("two.json"))
    emitted = jsonio.dumps(jsonio.emit_lattice(L))
    assert jsonio.parse_lattice(json.loads(emitted)) == L
    tables = {
        "tables": {
            "n": 2,
            "meet": [[0, 0], [0, 1]],
            "join": [[0, 1], [1, 1]],
            "bot": 0,
            "top": 1,
        }
    }
    assert jsonio.parse_lattice(tables) == L


def test_path_references_resolve(tmp_path):
    space = {"n": 1, "pre": []}
    (tmp_path / "pt.json").write_text(json.dumps(space))
    fork = {"z": "pt.json", "y": "pt.json", "g": [0], "h": [0]}
    fork_path = tmp_path / "fork.json"
    fork_path.write_text(json.dumps(fork))
    problem = jsonio.parse_coeq_problem(
        jsonio.load_file(str(fork_path)), str(tmp_path)
    )
    assert problem.y.n == 1


def test_cli_spec_two_is_one_point(capsys):
    assert main(["spec", data_path("two.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"n": 1, "pre": []}


def test_cli_kq_indiscrete(capsys):
    assert main(["kq", data_path("indiscrete2.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"n": 1, "pre": []}


def test_cli_coeq_example41_report(capsys):
    assert main(["coeq", "--cat", "both", data_path("example41.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["spectral"]["points"] == 1
    assert rep["topological"]["points"] == 2
    assert rep["topological"]["kq_points"] == 1
    assert rep["comparison"]["flags"] == ["not T0", "p not injective"]


def test_cli_hochster_not_t0_exit_2(capsys):
    assert main(["hochster", data_path("indiscrete2.json")]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "NotT0"


def test_cli_check_fork_ladder(capsys):
    assert main(["check-fork", data_path("ladder_injective.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["bottom_is_equalizer"] and rep["lifts_exist"]


def test_cli_descend_bundled(capsys):
    assert main(["descend", data_path("descent_split.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["certified"] and rep["spec_points"]["coequalizer"] == 1


def test_cli_quotient_group(capsys):
    assert main(["quotient", "--group", data_path("c2_chains.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["orbit_space"]["n"] == 2
    assert rep["comparison"]["homeomorphism"] is True


def test_cli_quotient_classes(tmp_path, capsys):
    rel = tmp_path / "rel.json"
    rel.write_text(json.dumps({"classes": [[0, 2], [1, 3]]}))
    y = tmp_path / "y.json"
    y.write_text(json.dumps(bundled("example41.json")["y"]))
    assert main(["quotient", str(y), "--classes", str(rel)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["quotient"]["n"] == 2
    assert rep["criterion"]["hypotheses_hold"] is False
    assert rep["criterion"]["comparison_homeo"] is False


def test_cli_quotient_mode_required(capsys):
    assert main(["quotient"]) == 2


def test_cli_outputs_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["coeq", "--cat", "both", data_path("example41.json"), "-o", str(out1)])
    main(["coeq", "--cat", "both", data_path("example41.json"), "-o", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_dot_and_fig_outputs(tmp_path):
    dot = tmp_path / "x.dot"
    fig = tmp_path / "x.png"
    assert (
        main(
            [
                "coeq",
                "--cat",
                "both",
                data_path("example41.json"),
                "-o",
                str(tmp_path / "r.json"),
                "--dot",
                str(dot),
                "--fig",
                str(fig),
            ]
        )
        == 0
    )
    assert dot.read_text().startswith("digraph")
    assert fig.stat().st_size > 0


def test_cli_corpus_empty_run(tmp_path, capsys):
    assert main(["corpus", "--max-size", "0", "--report-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "corpus PASS" in out
    csv_text = (tmp_path / "corpus.csv").read_text()
    assert csv_text.splitlines()[0] == "suite,cases,failures"
    assert (tmp_path / "corpus.png").exists()


def test_cli_omega_of_chain(tmp_path, capsys):
    space = tmp_path / "chain.json"
    space.write_text(json.dumps({"n": 2, "pre": [[0, 1]]}))
    assert main(["omega", str(space)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep == {"birkhoff": {"leq": [[0, 1]], "n": 2}}


def test_corpus_failure_dumps_reproducer(tmp_path, capsys, monkeypatch):
    from stonekit import corpus as corpus_mod

    def broken_suite(seed=0, cases=1, max_n=None, oracle="auto"):
        return corpus_mod.SuiteResult("broken", cases=1, failures=[{"boom": True}])

    monkeypatch.setattr(corpus_mod, "SUITES", (broken_suite,))
    assert main(["corpus", "--report-dir", str(tmp_path)]) == 1
    assert "corpus FAIL" in capsys.readouterr().out
    repro = json.loads((tmp_path / "stonekit-repro-broken.json").read_text())
    assert repro["failures"] == [{"boom": True}]


def test_cli_bad_file_exit_2(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["spec", str(missing)]) == 2


def test_cli_malformed_poset_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"birkhoff": {"n": 2, "leq": [[0, 5]]}}))
    assert main(["spec", str(bad)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "IndexError"


def test_env_var_overrides_downset_cap(monkeypatch):
    from stonekit import SizeError, downsets
    from stonekit.finposet import antichain

    monkeypatch.setenv("STONEKIT_MAX_DOWNSETS", "10")
    with pytest.raises(SizeError):
        downsets(antichain(6))
    monkeypatch.delenv("STONEKIT_MAX_DOWNSETS")
    assert len(downsets(antichain(6))) == 64
