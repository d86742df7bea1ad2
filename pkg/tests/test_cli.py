import json

import pytest

from singmon.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_monodromy_e8(capsys):
    code, out, _ = _run(capsys, "monodromy", "--weights", "6,10,15", "--degree", "30")
    assert code == 0
    assert out == "2*3*5*30/1*6*10*15\n"


def test_monodromy_oracle_json(capsys):
    code, out, _ = _run(capsys, "monodromy", "--weights", "2,3,3", "--degree", "6", "--oracle", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["charpoly"] == {"chi": [[1, -1], [3, 1]]}
    assert data["exponents"] == [2, 4]
    assert data["mu"] == 2


def test_monodromy_lambdas_and_power_sum(capsys):
    code, out, _ = _run(capsys, "monodromy", "--weights", "2,3,3", "--degree", "6", "--lambdas")
    assert code == 0
    assert out.splitlines() == ["1 -1", "2 -1", "3 2", "6 2"]
    code, out, _ = _run(capsys, "monodromy", "--weights", "6,10,15", "--degree", "30", "--power-sum", "30")
    assert code == 0
    assert out.startswith("Lambda_30 = 8 ")


def test_dual(capsys):
    code, out, _ = _run(capsys, "dual", "--shape", "6/1*2*3", "--level", "6")
    assert code == 0
    assert out == "2*3*6/1\n"


def test_dual_json(capsys):
    code, out, _ = _run(capsys, "dual", "--shape", "2^4/1", "--level", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"chi": [[1, -4], [2, 1]]}


def test_factor_both_ways(capsys):
    code, out, _ = _run(capsys, "factor", "--coeffs", "1,1,0,-1,-1,-1,0,1,1")
    assert code == 0
    assert out == "2*3*5*30/1*6*10*15\n"
    code, out, _ = _run(capsys, "factor", "--shape", "1*6/2*3")
    assert code == 0
    assert out == "1,-1,1\n"


def test_poincare(capsys):
    code, out, _ = _run(capsys, "poincare", "--weights", "1,1,1", "--degrees", "2", "--terms", "6")
    assert code == 0
    assert out.splitlines() == ["2/1^3", "1,3,5,7,9,11,13"]


def test_poincare_bundle(capsys):
    code, out, _ = _run(capsys, "poincare", "--weights", "1,1,1,1", "--degrees", "2,2", "--bundle", "--genus", "1")
    assert code == 0
    assert out.splitlines() == ["p_A: 2^2/1^4", "psi_A: 1^2", "phi_A: 2^2/1^2", "phi~_A: 2^2/1^4"]


def test_orbit(capsys):
    code, out, _ = _run(capsys, "orbit", "--weights", "6,10,15", "--degree", "30")
    assert code == 0
    assert out == "{0; 2; (2,1), (3,2), (5,4)}\n"
    code, out, _ = _run(capsys, "orbit", "--weights", "1,2,3", "--degree", "6")
    assert out == "{1}\n"


def test_suspension(capsys):
    code, out, _ = _run(capsys, "suspension", "--phi", "1", "--phi-prime", "1^0", "--p", "3")
    assert code == 0
    assert out == "3/1\n"


def test_mckay_views(capsys):
    code, out, _ = _run(capsys, "mckay", "--root", "E8", "--what", "coxeter")
    assert (code, out) == (0, "2*3*5*30/1*6*10*15\n")
    code, out, _ = _run(capsys, "mckay", "--root", "A1", "--what", "series", "--terms", "6")
    assert out.splitlines() == ["1 0", "0 2", "3 0", "0 4", "5 0", "0 6", "7 0"]
    code, out, _ = _run(capsys, "mckay", "--root", "D4", "--what", "dims")
    assert out == "1,1,1,1,2\n"
    code, out, _ = _run(capsys, "mckay", "--root", "A1", "--what", "closed-form")
    assert out.splitlines() == ["1,0,1", "1,0,-2,0,1"]
    code, out, _ = _run(capsys, "mckay", "--root", "E6", "--what", "verify", "--terms", "60")
    assert code == 0
    assert out.startswith("E6: PASS")


def test_residue(capsys):
    code, out, _ = _run(capsys, "residue", "--weights", "6,10,15", "--degree", "30", "--alpha", "5")
    assert code == 0
    assert out.splitlines()[1] == "ledger: 10^-1 15^-1 30^1"
    code, _, err = _run(capsys, "residue", "--weights", "6,10,15", "--degree", "30", "--alpha", "7")
    assert code == 2
    assert "pole of order 0" in err


def test_wagreich3(capsys):
    code, out, _ = _run(capsys, "wagreich3", "--weights", "6,10,15", "--degree", "30")
    assert code == 0
    assert out.splitlines()[0] == "6,10,15/30: PASS"


def test_catalog_commands(capsys):
    code, out, _ = _run(capsys, "catalog", "list")
    assert code == 0
    assert len(out.splitlines()) == 20
    code, out, _ = _run(capsys, "catalog", "show", "E8")
    assert "pi_A: 2*3*5*30/1*6*10*15" in out.splitlines()
    code, out, _ = _run(capsys, "catalog", "show", "A_{2n}", "--parameter", "1", "--json")
    assert json.loads(out)["name"] == "A2"
    code, out, _ = _run(capsys, "catalog", "validate")
    assert code == 0
    assert out.splitlines()[-1] == "20 entries, 0 differences"


def test_verify_kleinian(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "kleinian", "--max-index", "8")
    assert code == 0
    assert out.splitlines()[-1] == "16/16 passed"


def test_output_is_deterministic(capsys):
    argv = ("verify", "--suite", "elliptic", "--json")
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[:2] == second[:2]


@pytest.mark.parametrize(
    "argv",
    [
        ("dual", "--shape", "2*x", "--level", "6"),
        ("dual", "--shape", "4/1", "--level", "6"),
        ("monodromy", "--weights", "6,10", "--degree", "30"),
        ("monodromy", "--weights", "2,4,6", "--degree", "12"),
        ("factor", "--coeffs", "1,3,1"),
        ("mckay", "--root", "F4"),
        ("catalog", "show", "nope"),
        ("frobnicate",),
        ("orbit", "--weights", "a,b,c", "--degree", "3"),
        ("verify", "--suite", "everything"),
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_parse_error_mentions_position(capsys):
    _, _, err = _run(capsys, "dual", "--shape", "2*x", "--level", "6")
    assert "position 2" in err


@pytest.mark.parametrize(
    "argv",
    [("catalog", "--json", "list"), ("catalog", "list", "--json"), ("catalog", "--json", "list", "--max-index", "2")],
)
def test_catalog_json_flag_position(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert isinstance(json.loads(out), list)


def test_catalog_text_by_default(capsys):
    _, out, _ = _run(capsys, "catalog", "list", "--max-index", "1")
    assert out.splitlines()[0].startswith("A1\t")
