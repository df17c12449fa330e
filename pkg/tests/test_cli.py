import json
from fractions import Fraction as Q

import pytest

from vkg import serialize
from vkg.cli import CAP_ENV_VAR, RunConfig, main, read_config_file
from vkg.liealg import build_realization


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_involutions_count(capsys):
    code, out, _ = run(capsys, "involutions", "--ell", "3", "--count")
    assert code == 0
    assert out.strip() == "15"


def test_involutions_signs_json(capsys):
    code, out, _ = run(capsys, "involutions", "--ell", "2", "--signs",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 3
    assert [r["sign"] for r in payload["involutions"]] == [1, -1, 1]


def test_singular_verify_wn_report(capsys):
    code, out, _ = run(capsys, "singular-verify", "--algebra", "D:6",
                       "--family", "wn", "--n", "1")
    assert code == 0
    assert "singular at level -4, degree 3, 15 support monomials" in out


def test_singular_verify_failure_witness(capsys):
    code, out, _ = run(capsys, "singular-verify", "--algebra", "D:4",
                       "--family", "wn", "--n", "1", "--level=-1")
    assert code == 1
    payload = json.loads(out)
    assert payload["singular"] is False
    assert "witness" in payload and payload["witness"]["generator"]


def test_singular_search_round_trip(capsys):
    code, out, _ = run(capsys, "singular-search", "--algebra", "D:4",
                       "--level=-2", "--weight", "1,1,1,1", "--degree", "2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kernel_dimension"] == 1
    lr = build_realization("D", 4)
    v = serialize.state_from_json(lr, payload["vectors"][0])
    assert serialize.state_to_json(lr, v) == payload["vectors"][0]


def test_singular_search_capped(capsys):
    code, out, _ = run(capsys, "singular-search", "--algebra", "D:6",
                       "--level=-2", "--weight", "0,0,0,0,0,0",
                       "--degree", "5", "--cap", "1000")
    assert code == 0
    assert "capped" in out


def test_collapse_audit_exit_zero(capsys):
    code, out, _ = run(capsys, "collapse", "--audit")
    assert code == 0
    assert "failures: 0" in out


def test_collapse_single_level(capsys):
    code, out, _ = run(capsys, "collapse", "--algebra", "E8", "--level=-10",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["target"] == "E7" and payload["k_prime"] == "-4"


def test_collapse_non_collapsing_level(capsys):
    code, out, _ = run(capsys, "collapse", "--algebra", "E8", "--level=-7")
    assert code == 1
    assert json.loads(out)["collapsing"] is False


def test_collapse_latex_and_csv(capsys):
    code, out, _ = run(capsys, "collapse", "--algebra", "G2",
                       "--format", "latex")
    assert code == 0
    assert out.startswith("\\begin{tabular}")
    code, out, _ = run(capsys, "collapse", "--algebra", "G2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "algebra,k,target,k_prime"
    assert "G2,-4/3,sl(2),1" in lines


def test_collapse_super_reference(capsys):
    code, out, _ = run(capsys, "collapse", "--algebra", "G2", "--super",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["super_reference"]) == 25


def test_kl_json(capsys):
    code, out, _ = run(capsys, "kl", "--algebra", "B:3", "--level=-2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["provenance"]
    weights = payload["families"][0]["weights"]
    assert weights == [["0", "0", "0"], ["1", "0", "0"]]


def test_weights_verb(capsys):
    code, out, _ = run(capsys, "weights", "--algebra", "D:4",
                       "--mu", "1,0,0,0", "--level=-2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["sugawara_weight"] == "7/8"
    assert payload["w_lowest_weight"] == "3/8"
    assert payload["theta_coeff_roots"] == ["0", "-1"]


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--algebra", "E7", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["roots"]) == 126
    assert payload["dual_coxeter"] == "18"


def test_bracket_audit(capsys):
    code, out, _ = run(capsys, "bracket-audit", "--algebra", "B:2")
    assert code == 0
    assert "exhaustive" in out
    code, out, _ = run(capsys, "bracket-audit", "--algebra", "D:6",
                       "--samples", "200", "--seed", "3")
    assert code == 0
    assert "sampled" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "kl", "--algebra", "Dx", "--level=-2")
    assert code == 2
    code, _, err = run(capsys, "kl", "--algebra", "D:6", "--level=-3")
    assert code == 2
    assert "not" in err or "no classification" in err
    code, _, _ = run(capsys, "weights", "--algebra", "D:4",
                     "--mu", "1,0,0,0", "--level", "0.5")
    assert code == 2
    code, _, _ = run(capsys, "flubber")
    assert code == 2
    code, _, _ = run(capsys, "weights", "--algebra", "D:4",
                     "--mu", "1,0", "--level=-2")
    assert code == 2


def test_determinism(capsys):
    a = run(capsys, "roots", "--algebra", "D:5", "--format", "json")
    b = run(capsys, "roots", "--algebra", "D:5", "--format", "json")
    assert a == b
    a = run(capsys, "singular-search", "--algebra", "D:4", "--level=-2",
            "--weight", "1,1,1,1", "--degree", "2", "--format", "json")
    b = run(capsys, "singular-search", "--algebra", "D:4", "--level=-2",
            "--weight", "1,1,1,1", "--degree", "2", "--format", "json")
    assert a == b


def test_config_file_and_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "vkg.cfg"
    cfg.write_text("# defaults\ncap = 1500\nformat = json\n")
    parsed = read_config_file(str(cfg))
    assert parsed == {"cap": "1500", "format": "json"}
    code, out, _ = run(capsys, "involutions", "--ell", "2",
                       "--count", "--config", str(cfg))
    assert code == 0
    assert json.loads(out) == {"ell": 2, "count": 3}
    # environment overrides the file; the flag overrides both
    monkeypatch.setenv(CAP_ENV_VAR, "800")
    code, _, err = run(capsys, "involutions", "--ell", "2", "--count",
                       "--config", str(cfg))
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "involutions", "--ell", "2", "--count",
                       "--config", str(cfg), "--cap", "2000")
    assert code == 0


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = green\n")
    with pytest.raises(ValueError):
        read_config_file(str(cfg))


def test_runconfig_invariants():
    with pytest.raises(ValueError):
        RunConfig(verb="roots", cap=999)
    with pytest.raises(ValueError):
        RunConfig(verb="roots", fmt="yaml")
    assert RunConfig(verb="roots").cap == 200_000


def test_roots_realization_dump(capsys):
    code, out, _ = run(capsys, "roots", "--algebra", "B:2", "--realization")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["basis"]) == 10
    assert payload["basis"][0] == "h:1"
    assert any(lab == "1,1" for lab in payload["basis"])
    assert payload["bracket"] and payload["form"]
    # bracket entries are sparse triples [i, j, [[index, coeff], ...]]
    i, j, terms = payload["bracket"][0]
    assert isinstance(i, int) and isinstance(j, int)
    assert all(isinstance(t[0], int) and isinstance(t[1], str) for t in terms)


def test_collapse_polynomials(capsys):
    code, out, _ = run(capsys, "collapse", "--polynomials",
                       "--algebra", "E8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["polynomials"] == [{"algebra": "E8", "roots": ["-6", "-10"]}]
    code, out, _ = run(capsys, "collapse", "--polynomials", "--format", "latex")
    assert code == 0
    assert out.startswith("\\begin{tabular}")
    code, out, _ = run(capsys, "collapse", "--polynomials", "--super",
                       "--format", "json")
    assert len(json.loads(out)["super_reference"]) == 9


def test_kl_text_marks_infinite_families(capsys):
    code, out, _ = run(capsys, "kl", "--algebra", "D:6", "--level=-4",
                       "--quotient", "vbar", "--limit", "3")
    assert code == 0
    assert "..." in out


def test_collapse_full_table_text(capsys):
    code, out, _ = run(capsys, "collapse")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 51
    assert any("E8" in ln and "-10" in ln for ln in lines)


def test_kl_limit_controls_materialization(capsys):
    code, out, _ = run(capsys, "kl", "--algebra", "D:6", "--level=-2",
                       "--quotient", "intermediate", "--limit", "4",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    fam = payload["families"][0]
    assert fam["infinite"] and len(fam["weights"]) == 4


def test_roots_csv(capsys):
    code, out, _ = run(capsys, "roots", "--algebra", "B:2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "coordinates"
    assert len(out.strip().splitlines()) == 9  # header + 8 roots
