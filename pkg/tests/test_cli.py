import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from signedgraphs import cli, verifiers
from signedgraphs.constructions import parse_multigraph
from signedgraphs.graph import format_esg, parse_esg, switch, switching_equivalent
from signedgraphs.hoffman import parse_hoffman
from signedgraphs.verifiers import VerificationReport, load_exceptional_catalog

from conftest import cycle


def schema(name):
    return json.loads(resources.files("signedgraphs").joinpath(f"schemas/{name}.json").read_text())


def run(capsys, *argv):
    code = cli.run(list(map(str, argv)))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


@pytest.fixture
def esg(tmp_path):
    def write(g, name="g.esg"):
        p = tmp_path / name
        p.write_text(format_esg(g))
        return p
    return write


def test_spectra(capsys, esg):
    code, out, _ = run(capsys, "spectra", esg(cycle(5, minus_edges=range(5))))
    assert code == 0
    jsonschema.validate(out, schema("spectra"))
    assert out["lambda1"]["exact"] == -2 and out["vs_minus_2"] == "equal"
    code, out, _ = run(capsys, "spectra", esg(cycle(5)))
    assert out["vs_minus_2"] == "greater" and out["lambda1"]["exact"] is None


def test_canon_and_equiv(capsys, esg):
    g = cycle(6, minus_edges=[0, 3])
    code, out, _ = run(capsys, "canon", esg(g))
    assert code == 0
    jsonschema.validate(out, schema("canon"))
    rep = parse_esg(out["representative"])
    assert switching_equivalent(rep, g)
    code, out, _ = run(capsys, "equiv", esg(g, "a.esg"), esg(switch(g, {1, 2}), "b.esg"))
    assert code == 0 and out["equivalent"] is True
    jsonschema.validate(out, schema("equiv"))
    code, out, _ = run(capsys, "equiv", esg(g, "a.esg"), esg(cycle(6, [0]), "b.esg"))
    assert code == 0 and out["equivalent"] is False


def test_classify_and_represent(capsys, esg):
    code, out, _ = run(capsys, "classify", esg(cycle(4, minus_edges=[0])))
    assert code == 0 and out["label"] == "EvenUnicyclicDagger"
    jsonschema.validate(out, schema("classify"))
    assert switching_equivalent(parse_esg(out["construction"]), cycle(4, [0]))
    assert parse_multigraph(out["h"]).n == 4
    exc = parse_esg(load_exceptional_catalog()[0]["esg_text"])
    code, out, _ = run(capsys, "classify", esg(exc))
    assert out["label"] == "Exceptional" and len(out["e8_embedding"]) == 6
    jsonschema.validate(out, schema("classify"))
    code, out, _ = run(capsys, "represent", esg(exc))
    assert code == 0 and out["exceptional"] is True
    jsonschema.validate(out, schema("represent"))
    code, out, _ = run(capsys, "represent", esg(cycle(5)))
    assert out["exceptional"] is False
    jsonschema.validate(out, schema("represent"))


def test_classify_rejects_inadmissible(capsys, esg):
    code, out, err = run(capsys, "classify", esg(cycle(4)))
    assert code == 2 and out is None and "error" in err


def test_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate-exceptional", "--max-vertices", 6, "--out", tmp_path / "cat")
    assert code == 0 and out["counts"] == {"6": {"total": 32, "unsigned": 20}}
    jsonschema.validate(out, schema("enumerate"))
    lines = (tmp_path / "cat" / "catalog.jsonl").read_text().splitlines()
    for line in lines:
        rec = json.loads(line)
        jsonschema.validate(rec, schema("catalog_record"))
        parse_esg(rec["esg_text"])
    assert (tmp_path / "cat" / "summary.csv").read_text() == "n,total_classes,unsigned_classes\n6,32,20\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "hoffman", "--max-tree", 6],
        ["verify", "theorem11", "--max-size", 4],
        ["verify", "cycles", "--max-len", 6],
        ["verify", "families", "--n", 4, "--k", 1, "--l", 2],
        ["verify", "integral", "--max-vertices", 4],
    ],
    ids=lambda a: a[1],
)
def test_verify(capsys, tmp_path, argv):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, *argv, "--out", out_file)
    assert code == 0 and out is None
    report = json.loads(out_file.read_text())
    jsonschema.validate(report, schema("report"))
    assert report["failures"] == [] and report["instances"] > 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = VerificationReport("cycles", 1, [{"length": 3}], 0.0)
    monkeypatch.setattr(verifiers, "verify_lemma_cycle", lambda *a, **k: bad)
    code, out, _ = run(capsys, "verify", "cycles")
    assert code == 1 and out["failures"] == [{"length": 3}]


def test_hoffman_commands(capsys, esg, tmp_path):
    path = parse_esg("vertices 3\nedge 0 1 +\nedge 1 2 +\n")
    code, out, _ = run(capsys, "hoffman", "build", esg(path), "--parts", "0,2;1")
    assert code == 0
    jsonschema.validate(out, schema("hoffman_build"))
    assert parse_esg(out["special_graph"]) == path
    hfile = tmp_path / "h.hg"
    hfile.write_text(out["hoffman_graph"])
    assert parse_hoffman(out["hoffman_graph"]).n_fat == 2
    code, out, _ = run(capsys, "hoffman", "eig", hfile)
    assert code == 0 and out["fat"] is True and out["smallest_eig_gt_minus3"] is True
    jsonschema.validate(out, schema("hoffman_eig"))
    code, out, err = run(capsys, "hoffman", "build", esg(path), "--parts", "0,1;2")
    assert code == 2 and "(+)-edge" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["spectra", "/nonexistent/file.esg"],
        ["spectra"],
        ["spectra", "FILE", "--bogus"],
        ["nosuchcommand"],
        ["verify", "cycles", "--max-len", "x"],
        ["enumerate-exceptional", "--max-vertices", "9"],
        ["hoffman", "build", "FILE"],
    ],
)
def test_input_errors(capsys, esg, argv):
    f = esg(cycle(4))
    argv = [str(f) if a == "FILE" else a for a in argv]
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out is None


def test_parse_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.esg"
    p.write_text("vertices 3\nedge 0 1 +\nedge 0 1 -\n")
    code, _, err = run(capsys, "canon", p)
    assert code == 2 and "duplicate" in err


def test_console_entry_point(tmp_path):
    p = tmp_path / "g.esg"
    p.write_text(format_esg(cycle(3)))
    proc = subprocess.run([sys.executable, "-m", "signedgraphs.cli", "spectra", str(p)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["char_poly"] == [-2, -3, 0, 1]
