import json

import pytest

from abscgt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_outcome(capsys):
    assert run(capsys, "outcome", "--convention", "misere", "1+{0|*}") == (0, "P", "")
    assert run(capsys, "outcome", "--convention", "normal", "*")[1] == "N"
    assert run(capsys, "outcome", "0", "--first", "Left")[1] == "L"


def test_outcome_json(capsys):
    code, out, _ = run(capsys, "outcome", "{0,1|}", "--json")
    assert json.loads(out) == {"form": "{0,1|}", "convention": "misere", "outcome": "R"}


def test_algebra_commands(capsys):
    assert run(capsys, "sum", "1", "1")[1] == "2"
    assert run(capsys, "sum", "*", "*")[1] == "{*|*}"
    assert run(capsys, "conjugate", "1")[1] == "-1"
    assert run(capsys, "adjoint", "1")[1] == "{0|*}"
    assert run(capsys, "parse", "{ 0 , 1 | }")[1] == "{0,1|}"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "0", "--json")
    data = json.loads(out)
    assert data["dicot"] and data["dead_ending"] and data["left_end"]


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--universe", "D", "*", "0")
    assert code == 1 and out.startswith("Refuted (normal play)")
    code, out, _ = run(capsys, "compare", "--universe", "D", "*", "0", "--no-np-filter")
    assert code == 1 and "X=0" in out
    code, out, _ = run(capsys, "compare", "--universe", "E", "hat(2)", "2")
    assert code == 0 and out.startswith("HoldsAtBound")
    code, out, _ = run(capsys, "compare", "--universe", "E", "hat(2)", "2", "--equal", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "Refuted"


def test_distinguish(capsys):
    code, out, _ = run(capsys, "distinguish", "--universe", "Omega", "zeta(2)", "0")
    assert code == 0 and out.startswith("X={-1|0}")
    code, out, _ = run(capsys, "distinguish", "--universe", "E", "1", "1")
    assert code == 1


def test_member(capsys):
    assert run(capsys, "member", "--universe", "Sbar:0", "ostar(5)")[:2] == (0, "Yes")
    assert run(capsys, "member", "--universe", "Sbar:0", "hat(3)")[:2] == (1, "No")


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--universe", "D", "--days", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["forms"] == ["0", "*"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "lemma15", "--json", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass" and len(data["details"]) == 42
    code, out, _ = run(capsys, "verify", "lemma15", "--param", "N=2")
    assert code == 0 and "14 rows" in out


def test_verify_resource_exit(capsys):
    code, out, _ = run(capsys, "verify", "observation_e1", "--param", "max_birthday=5")
    assert code == 3 and "unknown" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["outcome", "{0|"],
        ["bogus"],
        ["compare", "--universe", "Nope", "0", "0"],
        ["verify", "lemma15", "--param", "oops"],
        ["verify", "lemma15", "--param", "bogus=1"],
        ["outcome", "zeta(1)"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_resource_errors(capsys):
    assert run(capsys, "compare", "--universe", "Omega", "{|1}", "0")[0] == 3
