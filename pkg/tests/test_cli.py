"""Command-line contract: JSON shapes, schemas, exit codes, determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from knotzeta.cli import EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, main
from knotzeta.knot_model import render_diagram


@pytest.fixture(scope="session")
def validators():
    schemas_dir = resources.files("knotzeta") / "schemas"
    docs = {p.name: json.loads(p.read_text()) for p in schemas_dir.iterdir()
            if p.name.endswith(".json")}
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in docs.values())
    return {name[:-5]: Draft202012Validator(doc, registry=registry)
            for name, doc in docs.items()}


def run(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


def test_alexander_trefoil(validators):
    code, obj = run_json("alexander", "trefoil")
    assert code == EXIT_OK
    assert obj == {"poly": {"0": 1, "1": -1, "2": 1}, "det": 3}
    validators["alexander"].validate(obj)


def test_alexander_eq10_convention(validators):
    code, obj = run_json("alexander", "figure8", "--convention", "eq10")
    assert code == EXIT_OK
    assert obj["eq10"]["exact"] is False
    assert obj["eq10"]["denominator"] == {"0": -1, "1": 1}
    validators["alexander"].validate(obj)


def test_det_unknot_exact_bytes():
    code, out = run("det", "unknot")
    assert code == EXIT_OK
    assert out == '{"det":1}\n'


def test_det_corpus(corpus, validators):
    from tests.conftest import KNOWN_DET
    for name, expect in KNOWN_DET.items():
        code, obj = run_json("det", name)
        assert code == EXIT_OK
        assert obj == {"det": expect}
        validators["det"].validate(obj)


def test_tree_poly_default_root(validators):
    code, obj = run_json("tree-poly", "trefoil")
    assert code == EXIT_OK
    assert obj["poly"] == {"0": 1, "1": -1, "2": 1}
    assert obj["roots"] == ["1"]
    assert obj["count"] == 3
    validators["tree-poly"].validate(obj)


def test_tree_poly_explicit_roots(validators):
    code, obj = run_json("tree-poly", "figure8", "--root", "2", "--root", "3")
    assert code == EXIT_OK
    assert obj["roots"] == ["2", "3"]
    validators["tree-poly"].validate(obj)


def test_tree_poly_bad_root():
    code, obj = run_json("tree-poly", "trefoil", "--root", "9")
    assert code == EXIT_INPUT
    assert "error" in obj


def test_zeta_trace_check(validators):
    code, obj = run_json("zeta", "trefoil", "--check", "trace")
    assert code == EXIT_OK
    assert obj["passed"] is True
    validators["verdict"].validate(obj)


def test_zeta_euler_passes_and_fails(validators):
    code, obj = run_json("zeta", "trefoil", "--check", "euler",
                         "--t", "1/2", "--max-len", "22")
    assert code == EXIT_OK
    assert obj["detail"]["gap"] == 0.0
    validators["verdict"].validate(obj)

    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code, obj = run_json("zeta", "figure8", "--check", "euler",
                             "--t", "1/10", "--max-len", "5")
    assert code == EXIT_INCONSISTENT
    assert obj["passed"] is False
    validators["verdict"].validate(obj)


def test_zeta_path_sum_and_composition(validators):
    for check in ("path-sum", "composition"):
        code, obj = run_json("zeta", "figure8", "--check", check)
        assert code == EXIT_OK, obj
        validators["verdict"].validate(obj)


def test_zeta_cable(validators):
    code, obj = run_json("zeta", "trefoil", "--check", "cable", "--n", "2")
    assert code == EXIT_OK
    validators["verdict"].validate(obj)


def test_zeta_cut_selects_arc():
    code, obj = run_json("zeta", "figure8", "--check", "path-sum", "--cut", "3")
    assert code == EXIT_OK
    assert obj["passed"] is True


def test_twisted_dihedral(validators):
    code, obj = run_json("twisted", "trefoil", "--dihedral", "3")
    assert code == EXIT_OK
    assert obj["field"] == 7 and obj["dim"] == 2
    assert obj["numerator"]["coeffs"] == {"0": 6, "2": 1}
    validators["twisted"].validate(obj)


def test_twisted_trivial_default(validators):
    code, obj = run_json("twisted", "trefoil")
    assert code == EXIT_OK
    assert obj["field"] == 101 and obj["dim"] == 1
    validators["twisted"].validate(obj)


def test_twisted_no_coloring_is_input_error():
    code, obj = run_json("twisted", "figure8", "--dihedral", "3")
    assert code == EXIT_INPUT
    assert "error" in obj


def test_twisted_rep_inline_and_file(tmp_path, validators):
    rep = {"field": 13, "images": {"1": [[1]], "2": [[1]], "3": [[1]]}}
    code, obj = run_json("twisted", "trefoil", "--rep", json.dumps(rep))
    assert code == EXIT_OK
    assert obj["field"] == 13
    validators["twisted"].validate(obj)

    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep))
    code2, obj2 = run_json("twisted", "trefoil", "--rep", f"@{path}")
    assert (code2, obj2) == (code, obj)


def test_twisted_flag_conflict():
    code, obj = run_json("twisted", "trefoil", "--dihedral", "3", "--rep", "{}")
    assert code == EXIT_INPUT


def test_twisted_bad_rep_json():
    code, obj = run_json("twisted", "trefoil", "--rep", "{broken")
    assert code == EXIT_INPUT
    assert "error" in obj


def test_unknown_corpus_name(validators):
    code, obj = run_json("alexander", "not_a_knot")
    assert code == EXIT_INPUT
    validators["error"].validate(obj)


def test_unparsable_file_is_input_error(tmp_path):
    bad = tmp_path / "bad.knot"
    bad.write_text("X? 1 2 3\n")
    code, obj = run_json("det", str(bad))
    assert code == EXIT_INPUT
    assert obj["error"].startswith("line 1")


def test_diagram_file_path_resolution(tmp_path, trefoil):
    path = tmp_path / "local.knot"
    path.write_text(render_diagram(trefoil))
    code, obj = run_json("alexander", str(path))
    assert code == EXIT_OK
    assert obj["det"] == 3


def test_corpus_env_override(tmp_path, trefoil, monkeypatch):
    (tmp_path / "only.knot").write_text(render_diagram(trefoil))
    monkeypatch.setenv("KNOTZETA_CORPUS", str(tmp_path))
    code, obj = run_json("det", "only")
    assert code == EXIT_OK
    assert obj == {"det": 3}
    code, obj = run_json("alexander", "trefoil")
    assert code == EXIT_INPUT


def test_byte_determinism():
    first = run("alexander", "5_2")
    second = run("alexander", "5_2")
    assert first == second


def test_verify_suite_json_reports(validators):
    code, out = run("verify", "matrix-tree", "--json")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) > 1
    checks = []
    for line in lines:
        rep = json.loads(line)
        validators["report"].validate(rep)
        assert rep["status"] == "pass"
        checks.append(rep["check"])
    assert checks == sorted(checks)


def test_verify_human_output_has_summary():
    code, out = run("verify", "matrix-tree")
    assert code == EXIT_OK
    assert out.strip().endswith("failures")
    assert "[ok]" in out


def test_verify_includes_extra_diagram(tmp_path, trefoil):
    path = tmp_path / "extra.knot"
    path.write_text(render_diagram(trefoil))
    code, out = run("verify", "triple", str(path), "--json")
    assert code == EXIT_OK
    checks = [json.loads(line)["check"] for line in out.strip().splitlines()]
    assert "triple:extra" in checks


def test_verify_reports_deterministic_modulo_seconds():
    def normalized():
        _, out = run("verify", "triple", "--json")
        reports = [json.loads(line) for line in out.strip().splitlines()]
        for r in reports:
            r.pop("seconds")
        return reports
    assert normalized() == normalized()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotzeta", "det", "unknot"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"det":1}\n'


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run()
    assert exc.value.code == 2
