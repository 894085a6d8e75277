import json

import pytest

from dfinite.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_repro_single_claim_table(capsys):
    code, out = run(capsys, "repro", "sym2-apery", "--table")
    assert code == 0
    assert out.startswith("PASS sym2-apery")


def test_repro_json(capsys):
    code, out = run(capsys, "repro", "apery-numbers", "--json")
    data = json.loads(out)
    assert code == 0 and data[0]["passed"] and data[0]["computed"] == ["1", "5", "73", "1445", "33001"]


def test_kovacic_classify(capsys):
    code, out = run(capsys, "kovacic", "classify", "--op", "eq5")
    assert code == 0 and json.loads(out) == {"case": "Case4", "witness": None, "galois_label": "SL2"}


def test_local_basis(capsys):
    code, out = run(capsys, "local", "basis", "--op", "eq5", "--point", "root:1,-34,1:~33.97", "--order", "4",
                    "--terms", "2")
    data = json.loads(out)
    assert [s["exponent"] for s in data["solutions"]] == ["1/4", "3/4"]
    assert data["solutions"][0]["coefficients"][1] == ["6 - 271/64*sqrt(2)"]


def test_continue_with_csv(capsys, tmp_path):
    csv_path = tmp_path / "steps.csv"
    code, out = run(capsys, "continue", "--op", "eq5", "--path", "(0.01) (0.02)", "--csv", str(csv_path))
    data = json.loads(out)
    assert len(data["matrix"]) == 2
    assert csv_path.read_text().splitlines()[0].startswith("center_re")


def test_hyp_verbs(capsys):
    _, out = run(capsys, "hyp", "series", "1/12,5/12;1", "--terms", "2")
    assert json.loads(out)["coefficients"] == ["1", "5/144"]
    _, out = run(capsys, "hyp", "op", "1/2,1/2;1")
    assert "D^2" in json.loads(out)["operator"]
    _, out = run(capsys, "hyp", "pullback", "1/2,1/2;1", "--lam", "x^2")
    assert json.loads(out)["lambda"] == "x^2"


def test_registry_dump(capsys):
    _, out = run(capsys, "registry", "dump")
    assert set(json.loads(out)) == {"apery3", "dwork2", "eq5", "eq7-sym2"}


def test_unknown_claim_errors():
    with pytest.raises(KeyError):
        main(["repro", "nonsense"])


def test_monodromy_around_zero(capsys):
    _, out = run(capsys, "monodromy", "--op", "eq5", "--around", "0", "--basis", "0", "--order", "40")
    m = json.loads(out)["matrix"]
    assert complex(*map(float, m[0][0])) == pytest.approx(-1, abs=1e-20)
    assert complex(*map(float, m[0][1])) == pytest.approx(-6.283185307179586j, abs=1e-12)


def test_monodromy_all_finite_avoids_zero(capsys):
    # the stem from the base near 0 must detour around 0 itself
    _, out = run(capsys, "monodromy", "--op", "eq5", "--around", "all-finite", "--basis", "0", "--order", "60")
    det = json.loads(out)["det"]
    assert float(det[0]) == pytest.approx(1, abs=1e-30)
