import json

import pytest

from cabletau import bordered as bd
from cabletau import cfk
from cabletau import cli
from cabletau import formulas as fm
from cabletau import torus_algebra as ta


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_trefoil(capsys):
    code, out, _ = run(capsys, "invariants", "--builtin", "trefoil_rh")
    assert code == 0
    assert "tau=1 nu=1 nu'=0 epsilon=1" in out
    assert "t - 1 + t^-1" in out


def test_invariants_machine(capsys):
    code, out, _ = run(capsys, "invariants", "--builtin", "figure8", "--format", "machine")
    rec = json.loads(out)
    assert code == 0
    assert (rec["tau"], rec["nu"], rec["nu_prime"], rec["epsilon"]) == (0, 0, 0, 0)
    assert rec["generators"] == 5


def test_expression_grammar(capsys):
    code, out, _ = run(capsys, "invariants", "--builtin", "mirror(trefoil_rh)", "--format", "machine")
    assert code == 0 and json.loads(out)["tau"] == -1
    c = cli.parse_knot_expr("trefoil_rh # mirror(trefoil_rh#figure8)")
    assert cfk.invariants(c).as_tuple() == (0, 0, 0, 0)
    assert cfk.tau(cli.parse_knot_expr("trefoil_rh#trefoil_rh#trefoil_rh")) == 3


@pytest.mark.parametrize("expr", ["", "mirror(", "trefoil_rh#", "trefoil_rh)", "mirror trefoil_rh", "foo", "a$b"])
def test_bad_expressions(expr, capsys):
    with pytest.raises(cli.InputError):
        cli.parse_knot_expr(expr)
    code, _, err = run(capsys, "invariants", "--builtin", expr)
    assert code == 2 and err.startswith("error:")


def test_file_input_round_trip(tmp_path, capsys):
    c = cli.parse_knot_expr("trefoil_rh#mirror(figure8)")
    path = tmp_path / "k.json"
    path.write_text(c.to_json())
    code, out, _ = run(capsys, "invariants", "--input", str(path))
    assert code == 0 and "tau=1" in out
    assert cfk.CfkComplex.from_json(path.read_text()).to_json() == path.read_text()


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"generators": [')
    code, _, err = run(capsys, "invariants", "--input", str(path))
    assert code == 2 and "not valid JSON" in err


def test_invalid_complex(tmp_path, capsys):
    c = cfk.CfkComplex.build("bad", [("x", 2), ("y", 1), ("z", 0)], [("x", "y", 0), ("y", "z", 0)])
    path = tmp_path / "bad.json"
    path.write_text(c.to_json())
    code, _, err = run(capsys, "invariants", "--input", str(path))
    assert code == 2 and "d^2" in err


def test_not_a_knot(tmp_path, capsys):
    path = tmp_path / "two.json"
    path.write_text(cfk.CfkComplex.build("two", [("x", 0), ("y", 0)]).to_json())
    code, _, err = run(capsys, "invariants", "--input", str(path))
    assert code == 2


def test_missing_file(capsys):
    assert run(capsys, "invariants", "--input", "/nonexistent/k.json")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "invariants")[0] == 2
    assert run(capsys, "cable", "--builtin", "unknot", "-p", "2")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_cfd_unknot(capsys):
    code, out, _ = run(capsys, "cfd", "--builtin", "unknot", "--framing", "0")
    assert code == 0 and "u 12 u" in out


def test_cfd_machine_matches_fixture(capsys):
    code, out, _ = run(capsys, "cfd", "--builtin", "trefoil_rh", "--framing", "2", "--format", "machine")
    rec = json.loads(out)
    gens = [(g, ta.Idempotent(i)) for g, i in rec["generators"]]
    d = bd.TypeDStructure.build(gens, [(s, t, l) for s, l, t in rec["edges"]])
    from cabletau.acceptance import fixture
    assert code == 0 and len(rec["edges"]) == 5
    assert bd.isomorphic(d, fixture("trefoil_rh", 2))


def test_cfd_output_is_deterministic(capsys):
    a = run(capsys, "cfd", "--builtin", "trefoil_rh#figure8", "--framing", "-1")[1]
    b = run(capsys, "cfd", "--builtin", "trefoil_rh#figure8", "--framing", "-1")[1]
    assert a == b


def test_cable_both(capsys):
    code, out, _ = run(capsys, "cable", "--builtin", "trefoil_rh", "-p", "2", "-n", "1")
    assert code == 0 and "tau_formula=3" in out and "tau_tensor=3" in out and "agree" in out


def test_cable_figure8(capsys):
    code, out, _ = run(capsys, "cable", "--builtin", "figure8", "-p", "2", "-n", "-1", "--format", "machine")
    rec = json.loads(out)
    assert code == 0 and rec["q"] == -1 and rec["tau_formula"] == rec["tau_tensor"] == 0


def test_cable_formula_only_general_q(capsys):
    code, out, _ = run(capsys, "cable", "--builtin", "trefoil_lh", "-p", "3", "-q", "2", "--method", "formula")
    assert code == 0 and "tau_formula=0" in out


def test_tensor_needs_framing_form(capsys):
    code, _, err = run(capsys, "cable", "--builtin", "trefoil_lh", "-p", "3", "-q", "2")
    assert code == 2 and "1 mod p" in err


def test_invalid_cable(capsys):
    assert run(capsys, "cable", "--builtin", "unknot", "-p", "4", "-q", "6", "--method", "formula")[0] == 2


def test_crosscheck_mismatch_exits_1(capsys, monkeypatch):
    real = fm.cable_tau_formula
    monkeypatch.setattr(fm, "cable_tau_formula", lambda kp, s: real(kp, s) + 1)
    code, out, err = run(capsys, "cable", "--builtin", "trefoil_rh", "-p", "2", "-n", "1")
    assert code == 1 and "mismatch" in out


def test_table(capsys):
    code, out, _ = run(capsys, "table", "-p", "2", "-q=-5..5", "--odd-only", "--format", "machine")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 24
    assert all(r["status"] == "ok" for r in rows)
    assert all(r["tau_formula"] == r["tau_tensor"] for r in rows)


def test_table_empty_range(capsys):
    code, out, _ = run(capsys, "table", "-q=3..2")
    assert code == 0 and out == ""


def test_table_mixed_q_uses_formula_for_general_q(capsys):
    code, out, _ = run(capsys, "table", "--knots", "trefoil_rh", "-p", "3", "-q", "1..2", "--format", "machine")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert "tau_tensor" in rows[0] and "tau_tensor" not in rows[1]


def test_table_witnesses(capsys):
    code, out, _ = run(capsys, "table", "-q=1..0", "--witnesses=-1..1", "--format", "machine")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 6
    for r in rows:
        assert r["tau"] == r["witness_n"]
    assert sorted(r["epsilon"] for r in rows) == [-1, -1, -1, 1, 1, 1]


# ---------------------------------------------------------------- selftest harness


def test_selftest_quick_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "algebra,1,2,5,7")
    assert code == 0 and out.count("[PASS]") == 5


def test_selftest_unknown_key(capsys):
    assert run(capsys, "selftest", "--only", "9")[0] == 2


def test_selftest_full_run(capsys):
    code, out, err = run(capsys, "selftest", "--format", "machine")
    recs = {r["key"]: r for r in map(json.loads, out.splitlines())}
    assert set(recs) == {"algebra", "1", "2", "3", "4", "5", "6", "7", "8"}
    failing = sorted(k for k, r in recs.items() if not r["passed"])
    # criterion 4 checks a printed identity for left-handed trefoil cables that the
    # cabling formula itself contradicts; everything else must pass
    assert failing == ["4"]
    assert code == 1 and "first failure: 4" in err


def test_selftest_catches_sabotaged_algebra(capsys, monkeypatch):
    monkeypatch.setitem(ta._REEB_PRODUCTS, (ta.E.R1, ta.E.R2), ta.E.ZERO)
    code, out, err = run(capsys, "selftest", "--only", "algebra,1,2")
    assert code == 1
    assert "first failure: algebra" in err and "associativity" in err


def test_selftest_catches_flipped_unstable_chain(capsys, monkeypatch):
    real = bd.cfd_from_cfk

    def flipped(fc):
        d = real(fc)
        ends = {fc.roles.x0, fc.roles.x0_prime}
        chain = lambda x: x in ends or x.startswith("z")
        edges = [(t, s, l) if chain(s) and chain(t) else (s, t, l) for s, t, l in d.edges]
        return bd.TypeDStructure.build(d.generators, edges, d.name, dict(d.alexander), d.framing)

    monkeypatch.setattr(bd, "cfd_from_cfk", flipped)
    code, out, err = run(capsys, "selftest", "--only", "algebra,1,2")
    assert code == 1
    assert "[PASS] algebra" in out and "[PASS] criterion 1" in out
    assert "first failure: 2" in err


def test_basis_failure_exits_1(capsys):
    code, _, err = run(capsys, "cfd", "--builtin", "trefoil_rh#figure8#trefoil_lh#trefoil_rh", "--framing", "0")
    assert code == 1 and "simultaneously simplified" in err
