import json
import pathlib

import numpy as np
import pytest

from grgrad import cli, radical
from grgrad import document as doc_io
from grgrad.errors import ParseError
from grgrad.samples import ZOO

SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"
UT3 = str(SAMPLES / "ut_chain3_f2.ring")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


# -- documents ----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(ZOO))
def test_document_round_trip(name):
    text = doc_io.emit(doc_io.ring_document(ZOO[name]()))
    again = doc_io.emit(doc_io.parse(text))
    assert again == text


@pytest.mark.parametrize("path", sorted(SAMPLES.glob("*.ring")), ids=lambda p: p.name)
def test_samples_are_canonical(path):
    text = path.read_text()
    assert doc_io.emit(doc_io.parse(text)) == text


def test_round_trip_with_modules_and_maps():
    R = ZOO["ut_chain3_trunc_f2"]()
    from grgrad.module import regular_module

    M = regular_module(R)
    G = np.eye(M.dim, dtype=np.int64)
    doc = doc_io.ring_document(R, {"P": M}, {"id": {"module": "P", "degree": 0, "matrix": G}})
    text = doc_io.emit(doc)
    back = doc_io.parse(text)
    assert doc_io.emit(back) == text and back == doc
    assert back.modules["P"].dim == M.dim


@pytest.mark.parametrize(
    "text",
    ["not json", "[1]", '{"prime": 2}', '{"prime": 2, "groupoid": "pair:1", "basis": [{"name": "x", "degree": "(1,2)"}]}'],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        doc_io.parse(text)


def test_unknown_product_name():
    data = json.loads((SAMPLES / "ut_chain3_f2.ring").read_text())
    data["products"].append(["E11", "E99", "E11", 1])
    with pytest.raises(ParseError, match="E99"):
        doc_io.parse(json.dumps(data))


# -- commands -----------------------------------------------------------------


def test_radical_report(capsys):
    code, rep, _ = run_json(capsys, "radical", UT3)
    assert code == 0
    assert rep["dim"] == 3
    assert rep["degree_dims"] == {"(1,2)": 1, "(1,3)": 1, "(2,3)": 1}
    assert rep["oracle_agrees"] is True
    assert sorted(rep["basis"]) == ["E12", "E13", "E23"]


def test_text_output_has_sections(capsys):
    code, out, _ = run(capsys, "radical", UT3)
    assert code == 0
    assert "dim: 3" in out and "oracle_agrees: yes" in out


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "compseries", UT3, "--seed", "7")[1] for _ in range(3)}
    assert len(outs) == 1


def test_socle_and_loewy(capsys):
    _, soc, _ = run_json(capsys, "socle", UT3)
    assert soc["degree_dims"] == {"(1,3)": 1, "(2,3)": 1, "(3,3)": 1}
    _, lw, _ = run_json(capsys, "loewy", UT3)
    assert lw["length"] == 3
    assert lw["profiles"] == [["(1,1)", "(2,2)", "(3,3)"], ["(1,1)", "(2,2)"], ["(1,1)"]]


def test_semisimple_and_semilocal(capsys):
    _, ss, _ = run_json(capsys, "semisimple", UT3)
    assert ss["gr_semisimple"] is False
    _, sl, _ = run_json(capsys, "semilocal", UT3)
    assert sl["gr_semilocal"] is True
    _, ss2, _ = run_json(capsys, "semisimple", str(SAMPLES / "block_f2_12_3.ring"))
    assert ss2["gr_semisimple"] is True


def test_compseries_on_projective(capsys):
    code, rep, _ = run_json(capsys, "compseries", str(SAMPLES / "pair_trunc_f5_n3.ring"), "--module", "regular:(1,1)")
    assert code == 0 and rep["length"] == 2 and rep["oracle_agrees"]


def test_injective(capsys):
    _, rep, _ = run_json(capsys, "injective", UT3)
    assert rep["gr_injective"] is False


def test_fitting_on_document_map(tmp_path, capsys):
    R = ZOO["ut_chain3_trunc_f2"]()
    from grgrad.module import regular_module

    M = regular_module(R)
    e = R.groupoid.index("(1,1)")
    x11 = R.names.index("x*E11")
    G = R.left_matrix(np.eye(R.dim, dtype=np.int64)[x11])
    doc = doc_io.ring_document(R, {}, {"g": {"module": "regular", "degree": e, "matrix": G}})
    path = tmp_path / "fit.ring"
    path.write_text(doc_io.emit(doc))
    code, rep, _ = run_json(capsys, "fitting", str(path), "--map", "g")
    assert code == 0
    assert rep["n"] >= 1 and rep["gr_invertible"] is False
    assert rep["kernel_dim"] + rep["image_dim"] == M.dim


def test_classify_chains_offers_witness(capsys):
    code, out, _ = run(capsys, "classify-chains", "--poset", "ordinal:w*1+1", "--side", "left", "--cond", "noetherian")
    assert code == 0
    assert "fails" in out
    assert "grgrad witness --poset ordinal:w*1+1 --side left --cond noetherian" in out


def test_classify_all_conditions(capsys):
    _, rep, _ = run_json(capsys, "classify-chains", "--poset", "ordinal:w*1+1")
    assert all(r["gr"] == "fails" for r in rep["results"])
    verdicts = {(r["side"], r["condition"]): r["gamma0"] for r in rep["results"]}
    assert verdicts == {
        ("right", "artinian"): "fails",
        ("right", "noetherian"): "holds",
        ("left", "artinian"): "holds",
        ("left", "noetherian"): "fails",
    }


def test_witness_command(capsys):
    code, rep, _ = run_json(capsys, "witness", "--poset", "ordinal:w", "--side", "right", "--cond", "artinian", "--length", "4", "--base", "1")
    assert code == 0 and rep["certified"] is True
    assert rep["chain"] == "E_{1,2} R > E_{1,3} R > E_{1,4} R > E_{1,5} R"


def test_build_matches_sample(capsys):
    code, out, _ = run(capsys, "build", "zoo", "--name", "ut_chain3_f2")
    assert code == 0 and out == (SAMPLES / "ut_chain3_f2.ring").read_text()


def test_build_to_file(tmp_path, capsys):
    path = tmp_path / "pair.ring"
    code, _, _ = run(capsys, "build", "pair", "--index", "1,2,3", "--coeff", "trunc:2", "--prime", "3", "--out", str(path))
    assert code == 0
    doc = doc_io.load(str(path))
    assert doc.ring.dim == 18 and doc.ring.p == 3


# -- exit codes -------------------------------------------------------------------


def test_validate_reports_corruption(tmp_path, capsys):
    data = json.loads((SAMPLES / "ut_chain3_f2.ring").read_text())
    data["products"] = [e for e in data["products"] if e[:2] != ["E12", "E22"]]
    path = tmp_path / "bad.ring"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 3
    assert "valid: no" in out and "associativ" in out


def test_analysis_of_invalid_document_exits_3(tmp_path, capsys):
    data = json.loads((SAMPLES / "ut_chain3_f2.ring").read_text())
    data["products"] = [e for e in data["products"] if e[:2] != ["E12", "E22"]]
    path = tmp_path / "bad.ring"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "radical", str(path))
    assert code == 3 and err.startswith("error:")


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "radical", "/nonexistent.ring")
    assert code == 2 and "cannot read" in err


def test_unknown_module_exits_2(capsys):
    code, _, _ = run(capsys, "socle", UT3, "--module", "nope")
    assert code == 2


def test_witness_on_chain_that_holds_exits_2(capsys):
    code, _, _ = run(capsys, "witness", "--poset", "ordinal:w", "--side", "left", "--cond", "noetherian")
    assert code == 2


def test_over_budget_exits_4(capsys):
    code, _, err = run(capsys, "radical", str(SAMPLES / "category_f5_a_a2.ring"), "--engine", "carac")
    assert code == 4 and "budget" in err


def test_auto_engine_notes_skipped_oracle(capsys):
    code, rep, _ = run_json(capsys, "radical", str(SAMPLES / "category_f5_a_a2.ring"))
    assert code == 0 and rep["engine"] == "diagonal"
    assert any("skipped" in n for n in rep["notes"])


def test_disagreeing_engines_exit_5(monkeypatch, capsys):
    real = radical._engine_radical

    def broken(R, engine, budget):
        J = real(R, engine, budget)
        return J if engine != "carac" else J.intersect(type(J).zero(J.ambient, J.p))

    monkeypatch.setattr(radical, "_engine_radical", broken)
    code, _, err = run(capsys, "radical", UT3)
    assert code == 5 and "error:" in err
