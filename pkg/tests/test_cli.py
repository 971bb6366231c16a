import json

import pytest

from cobcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_additive_has_no_alpha_entries(capsys):
    code, out, _ = run(capsys, "expand", "--law", "additive", "--order", "5",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"law": "additive", "order": 5, "alpha": []}


def test_expand_multiplicative_single_entry(capsys):
    code, out, _ = run(capsys, "expand", "--law", "mult:1", "--order", "5",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["alpha"] == [{"i": 1, "j": 1, "value": "1"}]


def test_expand_miscenko_renders_cp_polynomials(capsys):
    code, out, _ = run(capsys, "expand", "--law", "miscenko", "--order", "6",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    entries = {(e["i"], e["j"]): e["value"] for e in payload["alpha"]}
    assert entries[(1, 1)] == "-cp1"
    assert entries[(2, 1)] == "-cp2 + cp1^2"


def test_byte_identical_reruns(capsys):
    _, first, _ = run(capsys, "expand", "--law", "miscenko", "--order", "5",
                      "--format", "json")
    _, second, _ = run(capsys, "expand", "--law", "miscenko", "--order", "5",
                       "--format", "json")
    assert first == second
    _, text1, _ = run(capsys, "beta", "--law", "mult:1", "--order", "8")
    _, text2, _ = run(capsys, "beta", "--law", "mult:1", "--order", "8")
    assert text1 == text2


def test_beta_multiplicative(capsys):
    code, out, _ = run(capsys, "beta", "--law", "mult:1", "--order", "6",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["beta"] == [{"i": 1, "j": 1, "value": "1"}]


def test_verify_pass_and_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "lemma6.1", "--law", "mult:1",
                       "--order", "8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert all(r["status"] == "pass" for r in payload["results"])


def test_verify_in_a_rejects_rational_beta(capsys):
    code, _, err = run(capsys, "verify", "lemma6.2", "--law", "mult:1/2",
                       "--order", "6")
    assert code == 2
    assert "integral" in err


def test_verify_unknown_identity(capsys):
    code, _, err = run(capsys, "verify", "lemma9.9", "--law", "additive")
    assert code == 2
    assert "unknown identity suite" in err


def test_bad_law_is_usage_error(capsys):
    code, _, err = run(capsys, "expand", "--law", "bogus")
    assert code == 2
    assert "unknown law" in err


def test_chi_grass(capsys):
    code, out, _ = run(capsys, "chi", "grass", "--n", "4", "--k", "2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["chi"] == 2


def test_chi_grass_out_of_range(capsys):
    code, _, err = run(capsys, "chi", "grass", "--n", "2", "--k", "5")
    assert code == 2


def test_chi_recursion(capsys):
    code, out, _ = run(capsys, "chi", "recursion", "--max", "6",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["failures"] == []
    assert payload["cases"] > 0


def test_chi_simplicial_from_file(tmp_path, capsys):
    path = tmp_path / "circle.txt"
    path.write_text("a b\nb c\nc a\n")
    code, out, _ = run(capsys, "chi", "simplicial", "--file", str(path),
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["chi"] == 0
    assert payload["chi_subdivided"] == 0
    assert payload["status"] == "pass"


def test_index_klein_text_summary(capsys):
    code, out, _ = run(capsys, "index", "klein")
    assert code == 0
    assert "1 + (-1 + u) = u; epsilon = 0 = chi(Klein bottle) = 0" in out
    assert "status: pass" in out


def test_index_rp2(capsys):
    code, out, _ = run(capsys, "index", "rp2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert "= 1 = chi(RP^2)" in payload["summary"]


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "expand", "--law", "mult:1", "--order", "4",
                       "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["law"] == "mult:1"


def test_verify_failure_reports_on_stderr(capsys, monkeypatch):
    # corrupt the law the CLI builds to check the exit-code contract
    from cobcalc import fgl, pontclass

    real_parse = pontclass.parse_law

    def corrupted(spec, order):
        return fgl.mutate_alpha(real_parse(spec, order), 1, 1, 1)

    monkeypatch.setattr(pontclass, "parse_law", corrupted)
    code, out, err = run(capsys, "verify", "axioms", "--law", "miscenko",
                         "--order", "6", "--format", "json")
    assert code == 1
    assert json.loads(out)["status"] == "fail"
    assert "first failure" in err
