import json
import random
import subprocess
import sys

import pytest

from derpair import cli, files
from derpair.errors import SchemaError
from derpair.structures import check_structure

import gen


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- file format ---------------------------------------------------------------

def test_parse_emit_roundtrip_on_corpus(corpus):
    for path in sorted(corpus.glob("*.json")):
        if path.name == "manifest.json":
            continue
        p = files.parse_presentation(path.read_text())
        emitted = files.emit_presentation(p)
        again = files.parse_presentation(emitted)
        assert files.emit_presentation(again) == emitted


def test_parse_emit_roundtrip_randomized():
    rng = random.Random(808)
    for p in gen.compatible_assder_instances(rng, 5):
        emitted = files.emit_presentation(p)
        again = files.parse_presentation(emitted)
        assert again.products == p.products
        assert again.derivations == p.derivations
        assert again.kind == p.kind
        assert files.emit_presentation(again) == emitted


def test_parse_rejects_duplicates_and_bad_input():
    base = {"dimension": 2, "kind": "associative",
            "products": {"mu": [[0, 0, 1, "1"], [0, 0, 1, "2"]]},
            "derivations": {}}
    with pytest.raises(SchemaError):
        files.presentation_from_dict(base)
    with pytest.raises(SchemaError):
        files.presentation_from_dict(
            {"dimension": 2, "kind": "mystery", "products": {}, "derivations": {}})
    with pytest.raises(SchemaError):
        files.presentation_from_dict(
            {"dimension": 2, "kind": "associative",
             "products": {"mu": [[0, 5, 1, "1"]]}, "derivations": {}})
    with pytest.raises(SchemaError):
        files.presentation_from_dict(
            {"dimension": 2, "kind": "associative",
             "products": {"mu": [[0, 0, 1, "1/0"]]}, "derivations": {}})
    with pytest.raises(SchemaError):
        files.parse_presentation("{not json")


def test_zero_coefficients_dropped():
    doc = {"dimension": 2, "kind": "associative",
           "products": {"mu": [[0, 0, 1, "0"]]}, "derivations": {}}
    p = files.presentation_from_dict(doc)
    assert p.products["mu"].is_zero()


# -- check command -----------------------------------------------------------------

def test_check_pass(capsys, corpus):
    code, out, _ = run_cli(capsys, "check", str(corpus / "compatible_lie.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "derpair-report/1"
    assert doc["verdict"] == "pass"
    assert doc["violations"] == []


def test_check_violation(capsys, corpus):
    code, out, _ = run_cli(capsys, "check", str(corpus / "assoc_violation.json"))
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "fail"
    violation = doc["violations"][0]
    assert violation["witness"] == ["e1", "e1", "e1"]


def test_check_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out, err = run_cli(capsys, "check", str(bad))
    assert code == 2
    assert "derpair:" in err
    missing = tmp_path / "missing.json"
    code, _, err = run_cli(capsys, "check", str(missing))
    assert code == 2


def test_check_kind_override(capsys, corpus, tmp_path):
    # the zinbiel table also defines a pre-Lie product only under its own name,
    # so an override with mismatched names is an operational error
    code, _, err = run_cli(capsys, "check", str(corpus / "zin2_zinbiel.json"),
                           "--kind", "prelie")
    assert code == 2
    # with matching shape the override re-labels the claim
    doc = json.loads((corpus / "zinder_alpha1_beta1.json").read_text())
    del doc["kind"]
    target = tmp_path / "unlabeled.json"
    target.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "check", str(target), "--kind", "zinder")
    assert code == 0


def test_reports_byte_identical(capsys, corpus):
    _, first, _ = run_cli(capsys, "check", str(corpus / "compatible_lie.json"))
    _, second, _ = run_cli(capsys, "check", str(corpus / "compatible_lie.json"))
    assert first == second


def test_timestamps_flag_adds_provenance(capsys, corpus):
    _, out, _ = run_cli(capsys, "check", str(corpus / "compatible_lie.json"),
                        "--timestamps")
    assert "timestamp" in json.loads(out)["provenance"]
    _, plain, _ = run_cli(capsys, "check", str(corpus / "compatible_lie.json"))
    assert "timestamp" not in json.loads(plain)["provenance"]


# -- mc command ---------------------------------------------------------------------

def test_mc_pair_on_anchor_example(capsys, corpus):
    code, out, _ = run_cli(capsys, "mc", str(corpus / "compatible_lie.json"),
                           "--pair")
    assert code == 0
    assert json.loads(out)["mc"]["holds"] is True


def test_mc_single_failure(capsys, tmp_path):
    doc = {"dimension": 2, "kind": "lieder",
           "products": {"bracket": [[0, 1, 0, "1"], [1, 0, 0, "-1"]]},
           "derivations": {"delta": [[1, 1, "1"]]}}
    path = tmp_path / "bad_lieder.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "mc", str(path))
    assert code == 1
    report = json.loads(out)
    assert report["mc"]["holds"] is False
    assert report["mc"]["residuals"][0]["name"] == "-2[w,delta]_NR"
    assert report["mc"]["residuals"][0]["witness"] == {
        "args": ["e1", "e2"], "out": "e1", "value": "-2"}


# -- cohomology command ----------------------------------------------------------------

def test_cohomology_abelian_line(capsys, corpus):
    code, out, _ = run_cli(capsys, "cohomology", str(corpus / "abelian1_lieder.json"),
                           "--complex", "lieder", "--max-degree", "2")
    assert code == 0
    doc = json.loads(out)["cohomology"]
    assert doc["dd_zero_certified"] is True
    degree1 = doc["degrees"][1]
    assert degree1["dim_cohomology"] == 1


def test_cohomology_zero_cldp(capsys, corpus):
    code, out, _ = run_cli(capsys, "cohomology", str(corpus / "zero_cldp.json"),
                           "--complex", "cldp", "--max-degree", "2")
    assert code == 0
    doc = json.loads(out)["cohomology"]
    for row in doc["degrees"]:
        assert row["dim_cohomology"] == row["dim_cochains"]


def test_cohomology_budget_env(capsys, corpus, monkeypatch):
    monkeypatch.setenv("DERPAIR_DEGREE_BUDGET", "1")
    code, _, err = run_cli(capsys, "cohomology", str(corpus / "zero_cldp.json"),
                           "--complex", "cldp", "--max-degree", "2")
    assert code == 2
    assert "resource limit" in err


def test_cohomology_kernel_bases_flag(capsys, corpus):
    code, out, _ = run_cli(capsys, "cohomology", str(corpus / "abelian1_lieder.json"),
                           "--complex", "lieder", "--max-degree", "1",
                           "--kernel-bases")
    assert code == 0
    doc = json.loads(out)["cohomology"]
    assert doc["kernel_bases"]["1"] == [["1"]]


# -- dendrify command --------------------------------------------------------------------

def test_dendrify_roundtrip(capsys, corpus, tmp_path):
    out_path = tmp_path / "dendrified.json"
    code, _, _ = run_cli(capsys, "dendrify", str(corpus / "zinder_alpha1_beta1.json"),
                         "--recipe", "zinbiel-to-dendriform",
                         "--out", str(out_path))
    assert code == 0
    code, out, _ = run_cli(capsys, "check", str(out_path))
    assert code == 0
    produced = files.parse_presentation(out_path.read_text())
    assert produced.kind == "dendrider"
    assert produced.provenance["recipe"] == "zinbiel-to-dendriform"


def test_dendrify_chain_matches_expected_constant(capsys, corpus, tmp_path):
    mid = tmp_path / "mid.json"
    final = tmp_path / "final.json"
    run_cli(capsys, "dendrify", str(corpus / "zinder_alpha1_beta1.json"),
            "--recipe", "zinbiel-to-dendriform", "--out", str(mid))
    code, _, _ = run_cli(capsys, "dendrify", str(mid),
                         "--recipe", "dendriform-to-associative",
                         "--out", str(final))
    assert code == 0
    p = files.parse_presentation(final.read_text())
    assert p.products["mu"].eval((0, 0))[1] == 2
    assert check_structure(p) is None


def test_dendrify_linear_combine_coefficients(capsys, corpus, tmp_path):
    out_path = tmp_path / "combined.json"
    code, _, _ = run_cli(capsys, "dendrify", str(corpus / "compatible_lie.json"),
                         "--recipe", "linear-combine",
                         "--coefficients", "1,1,1,1", "--out", str(out_path))
    assert code == 0
    p = files.parse_presentation(out_path.read_text())
    assert p.kind == "lie"
    code, _, _ = run_cli(capsys, "check", str(out_path))
    assert code == 0


def test_dendrify_invalid_input_is_a_finding(capsys, corpus):
    code, out, _ = run_cli(capsys, "dendrify", str(corpus / "assoc_violation.json"),
                           "--recipe", "associative-to-lie")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


# -- bracket command ---------------------------------------------------------------------

def _cochain_file(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_bracket_g_of_associative_square(capsys, tmp_path):
    mu_doc = {"dimension": 2, "flavor": "multi", "arity": 2,
              "entries": [[0, 0, 1, "1"]]}
    path = _cochain_file(tmp_path, "mu.json", mu_doc)
    code, out, _ = run_cli(capsys, "bracket", "--kind", "g", path, path)
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == []
    assert doc["arity"] == 3


def test_bracket_nr_and_dc(capsys, tmp_path):
    w_doc = {"dimension": 2, "flavor": "alt", "arity": 2,
             "entries": [[0, 1, 0, "1"], [1, 0, 0, "-1"]]}
    d_doc = {"dimension": 2, "flavor": "alt", "arity": 1,
             "entries": [[1, 1, "1"]]}
    w_path = _cochain_file(tmp_path, "w.json", w_doc)
    d_path = _cochain_file(tmp_path, "d.json", d_doc)
    code, out, _ = run_cli(capsys, "bracket", "--kind", "nr", w_path, d_path)
    assert code == 0
    doc = json.loads(out)
    assert [0, 1, 0, "1"] in doc["entries"]

    pair_doc = {"dimension": 2, "flavor": "alt", "arity": 2,
                "entries": [[0, 1, 0, "1"], [1, 0, 0, "-1"]],
                "shadow": [[1, 1, "1"]]}
    pair_path = _cochain_file(tmp_path, "pair.json", pair_doc)
    code, out, _ = run_cli(capsys, "bracket", "--kind", "dc",
                           pair_path, pair_path)
    assert code == 0
    doc = json.loads(out)
    assert doc["shadow"] is not None


def test_bracket_flavor_mismatch(capsys, tmp_path):
    mu_doc = {"dimension": 2, "flavor": "multi", "arity": 2,
              "entries": [[0, 0, 1, "1"]]}
    path = _cochain_file(tmp_path, "mu.json", mu_doc)
    code, _, err = run_cli(capsys, "bracket", "--kind", "nr", path, path)
    assert code == 2


def test_bracket_rejects_non_alternating_alt_table(capsys, tmp_path):
    # a lone (0,1) entry without its mirror is not an alternating table
    half_doc = {"dimension": 2, "flavor": "alt", "arity": 2,
                "entries": [[0, 1, 0, "1"]]}
    path = _cochain_file(tmp_path, "half.json", half_doc)
    code, _, err = run_cli(capsys, "bracket", "--kind", "nr", path, path)
    assert code == 2
    assert "alternating" in err


# -- console entry point -------------------------------------------------------------------

def test_console_script_runs(corpus):
    result = subprocess.run(
        [sys.executable, "-m", "derpair.cli", "check",
         str(corpus / "compatible_lie.json")],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert json.loads(result.stdout)["verdict"] == "pass"
