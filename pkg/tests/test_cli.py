import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from modsurf.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def g2_file(tmp_path):
    p = tmp_path / "g2.json"
    p.write_text(json.dumps({"generators": [[1, 2, 0, 1], [1, 0, 2, 1]]}))
    return str(p)


def test_analyze_gamma2(g2_file):
    code, text = run("analyze", g2_file, "--json")
    assert code == 0
    r = json.loads(text)
    assert r["subgroup"]["mu"] == 6 and r["subgroup"]["genus"] == 0 and r["subgroup"]["cusps"] == 3
    assert len(r["lifts"]) == 4
    assert r["lift_summary"]["raw_lifts"] == 4 and r["lift_summary"]["distinct_fiber_multisets"] == 2


def test_analyze_full_group(tmp_path):
    p = tmp_path / "full.json"
    p.write_text(json.dumps({"cosets": {"perm_s": [0], "perm_t": [0]}}))
    code, text = run("analyze", str(p), "--json")
    r = json.loads(text)
    assert code == 0 and r["subgroup"]["mu"] == 1 and not r["subgroup"]["torsion_free"]
    assert r["lifts"] is None


@pytest.mark.parametrize("content", ["{bad", "[]", '{"cosets": {"perm_s": [1, 0], "perm_t": [0, 1]}}',
                                     '{"generators": [[1, 1, 1, 1]]}', '{"other": 1}'])
def test_analyze_malformed(tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    assert run("analyze", str(p))[0] == 2


def test_analyze_budget(tmp_path, monkeypatch):
    p = tmp_path / "inf.json"
    p.write_text(json.dumps({"generators": [[1, 2, 0, 1]]}))
    assert run("--budget", "200", "analyze", str(p))[0] == 3
    monkeypatch.setenv("MODSURF_COSET_BUDGET", "100")
    assert run("analyze", str(p))[0] == 3


def test_gamma_k(tmp_path):
    code, text = run("gamma-k", "--k", "2", "--json")
    r = json.loads(text)
    assert code == 0 and (r["chi_O"], r["h11"], r["type"]) == (2, 20, "S_10")
    svg = tmp_path / "g7.svg"
    code, text = run("gamma-k", "--k", "7", "--json", "--svg", str(svg))
    r = json.loads(text)
    assert (r["chi_O"], r["h11"], r["type"]) == (7, 70, "V_70")
    assert svg.read_text().startswith("<?xml")
    assert run("gamma-k", "--k", "1")[0] == 2


def test_verify():
    code, text = run("verify", "--from", "2", "--to", "12")
    assert code == 0 and text.count("PASS") == 11
    code, text = run("verify", "--from", "2", "--to", "2", "--json")
    assert len(json.loads(text)["rows"]) == 1
    assert run("verify", "--from", "5", "--to", "3")[0] == 2


def test_verify_failure_exit_code(monkeypatch):
    import modsurf.gamma_family as gf
    monkeypatch.setattr(gf, "arc_pairing", lambda j: gf.Mat(1, 0, 2 * j, 1))
    code, text = run("verify", "--from", "3", "--to", "3")
    assert code == 1 and "FAIL" in text


def test_curve():
    r = json.loads(run("curve", "--tau", "0", "1", "--json")[1])
    assert abs(r["j_normalized"][0] - 1) < 1e-8 and r["components"] == 2
    r = json.loads(run("curve", "--tau", "0.5", "0.5", "--json")[1])
    assert r["components"] == 1
    r = json.loads(run("curve", "--tau", "0.3", "1", "--json")[1])
    assert not r["definable_over_R"]
    assert run("curve", "--tau", "0", "-1")[0] == 2
    assert run("curve", "--tau", "x", "1")[0] == 2


def test_text_output_is_a_view_of_json():
    code, text = run("gamma-k", "--k", "3")
    assert code == 0 and "type: V_30" in text and "h1_alg: 30" in text


def test_deterministic_json(g2_file):
    first = run("analyze", g2_file, "--json")[1]
    assert all(run("analyze", g2_file, "--json")[1] == first for _ in range(3))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modsurf", "curve", "--tau", "0", "2", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["components"] == 2


SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


@pytest.mark.parametrize("schema, argv", [
    ("surface_report", ["gamma-k", "--k", "3", "--json"]),
    ("verify_report", ["verify", "--from", "2", "--to", "4", "--json"]),
    ("curve_report", ["curve", "--tau", "0.5", "2", "--json"]),
    ("curve_report", ["curve", "--tau", "0.3", "1", "--json"]),
])
def test_outputs_match_schemas(schema, argv):
    jsonschema = pytest.importorskip("jsonschema")
    spec = json.loads((SCHEMAS / f"{schema}.schema.json").read_text())
    jsonschema.validate(json.loads(run(*argv)[1]), spec)


def test_analyze_matches_schema(g2_file, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(json.loads(Path(g2_file).read_text()),
                        json.loads((SCHEMAS / "subgroup_input.schema.json").read_text()))
    spec = json.loads((SCHEMAS / "analyze_report.schema.json").read_text())
    jsonschema.validate(json.loads(run("analyze", g2_file, "--json")[1]), spec)
    p = tmp_path / "full.json"
    p.write_text(json.dumps({"cosets": {"perm_s": [0], "perm_t": [0]}}))
    jsonschema.validate(json.loads(run("analyze", str(p), "--json")[1]), spec)
