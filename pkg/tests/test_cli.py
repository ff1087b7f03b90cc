import json
from pathlib import Path

import pytest

from setcat.cli import main, split_labels


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("fixtures")
    assert main(["catalog", "--export", str(d)]) == 0
    return d


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_split_labels_respects_parens():
    assert split_labels("1,e") == ["1", "e"]
    assert split_labels("(0,0),(1,1)") == ["(0,0)", "(1,1)"]
    assert split_labels("((1,1),(0,0)),x") == ["((1,1),(0,0))", "x"]


def test_catalog_lists_fixtures(capsys):
    code, out, _ = run(capsys, ["catalog"])
    assert code == 0
    assert "toric_code" in out
    assert "fibonacci" in out


def test_validate_category(capsys, fixture_dir):
    code, out, _ = run(capsys, ["validate", str(fixture_dir / "toric_code.json")])
    assert code == 0
    assert "valid" in out


def test_validate_embedding_against(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "validate", str(fixture_dir / "toric_code.emb_e.json"),
        "--against", str(fixture_dir / "toric_code.json")])
    assert code == 0


def test_validate_rejects_float_twist(capsys, fixture_dir, tmp_path):
    obj = json.loads((fixture_dir / "toric_code.json").read_text())
    obj["twists"]["f"] = "0.5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, _, err = run(capsys, ["validate", str(bad)])
    assert code == 2
    assert "rational" in err or "float" in err


def test_info_json(capsys, fixture_dir):
    code, out, _ = run(capsys, ["info", str(fixture_dir / "ising.json"),
                                "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 3
    assert data["nondegenerate"] is True
    assert data["gauss_sum"] == "2*z16"


def test_condense_toric_to_vec(capsys, fixture_dir):
    code, out, _ = run(capsys, ["condense", str(fixture_dir / "toric_code.json"),
                                "--bosons", "1,e", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["result"]["simples"] == ["1"]
    assert data["conservation"]["global_dim_conserved"] is True
    assert data["ambiguity_flags"] == []


def test_condense_bad_bosons_exit_2(capsys, fixture_dir):
    code, _, err = run(capsys, ["condense", str(fixture_dir / "toric_code.json"),
                                "--bosons", "1,f"])
    assert code == 2
    assert "twist" in err


def test_relprod_toric_toric(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "relprod", str(fixture_dir / "toric_code.json"),
        str(fixture_dir / "toric_code.json"),
        "--emb", str(fixture_dir / "toric_code.emb_e.json"),
        "--emb", str(fixture_dir / "toric_code.emb_e.json"),
        "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert len(data["result"]["simples"]) == 4
    assert len(data["orbits"]) == 4
    assert data["induced_embedding"]["group"] == [2]


def test_equiv_found_and_none(capsys, fixture_dir):
    code, out, _ = run(capsys, ["equiv", str(fixture_dir / "toric_code.json"),
                                str(fixture_dir / "double_2.json")])
    assert code == 0
    code, out, _ = run(capsys, ["equiv", str(fixture_dir / "toric_code.json"),
                                str(fixture_dir / "double_semion.json")])
    assert code == 1
    assert "none" in out


def test_equiv_respecting_symmetry(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "equiv", str(fixture_dir / "toric_code.json"),
        str(fixture_dir / "toric_code.json"),
        "--emb", str(fixture_dir / "toric_code.emb_e.json"),
        "--emb", str(fixture_dir / "toric_code.emb_m.json"),
        "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["mapping"]["e"] == "m"


def test_verify_unit_law_cli(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "verify", "unit-law", str(fixture_dir / "toric_code.json"),
        "--emb", str(fixture_dir / "toric_code.emb_e.json")])
    assert code == 0
    assert "true" in out.lower()


def test_verify_centralizer_set_cli(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "verify", "centralizer-set", str(fixture_dir / "double_semion.json"),
        "--emb", str(fixture_dir / "double_semion.emb_boson.json")])
    assert code == 0


def test_verify_arithmetic_cli(capsys):
    code, out, _ = run(capsys, ["verify", "arithmetic", "--count", "50",
                                "--seed", "11", "--format", "json"])
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_verify_pointed_oracle_cli(capsys):
    code, out, _ = run(capsys, ["verify", "pointed-oracle", "--count", "5",
                                "--max-order", "16", "--seed", "3"])
    assert code == 0


def test_double_command(capsys, tmp_path):
    code, out, _ = run(capsys, ["double", "--group", "2",
                                "--out-dir", str(tmp_path)])
    assert code == 0
    cat = json.loads((tmp_path / "double_2.json").read_text())
    assert len(cat["simples"]) == 4


def test_product_command(capsys, fixture_dir):
    code, out, _ = run(capsys, ["product", str(fixture_dir / "semion.json"),
                                str(fixture_dir / "anti_semion.json"),
                                "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert len(data["simples"]) == 4
    assert sorted(data["twists"].values()) == ["0", "0", "1/4", "3/4"]


def test_center_and_centralizer_commands(capsys, fixture_dir):
    code, out, _ = run(capsys, ["center", str(fixture_dir / "rep_z4.json"),
                                "--format", "json"])
    assert code == 0
    assert len(json.loads(out)["muger_center"]) == 4
    code, out, _ = run(capsys, ["centralizer", str(fixture_dir / "toric_code.json"),
                                "--labels", "1,e", "--format", "json"])
    assert code == 0
    assert json.loads(out)["centralizer"] == ["1", "e"]


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, ["info", "/nonexistent/x.json"])
    assert code == 2


def test_reports_are_deterministic(capsys, fixture_dir):
    argv = ["relprod", str(fixture_dir / "toric_code.json"),
            str(fixture_dir / "toric_code.json"),
            "--emb", str(fixture_dir / "toric_code.emb_e.json"),
            "--emb", str(fixture_dir / "toric_code.emb_m.json"),
            "--format", "json"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2
    code, out3, _ = run(capsys, ["verify", "pointed-oracle", "--count", "3",
                                 "--max-order", "16", "--seed", "9",
                                 "--format", "json"])
    _, out4, _ = run(capsys, ["verify", "pointed-oracle", "--count", "3",
                              "--max-order", "16", "--seed", "9",
                              "--format", "json"])
    assert out3 == out4


def test_verify_nondegeneracy_cli(capsys, fixture_dir):
    code, out, _ = run(capsys, [
        "verify", "nondegeneracy",
        str(fixture_dir / "toric_code.json"), str(fixture_dir / "double_2.json"),
        "--emb", str(fixture_dir / "toric_code.emb_e.json"),
        "--emb", str(fixture_dir / "double_2.emb_canonical.json"),
        "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["factors_nondegenerate"] is True
    assert data["result_nondegenerate"] is True
