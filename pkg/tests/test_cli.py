import json

import pytest

from dunklcm.cli import main
from dunklcm.restriction import _load_catalog_rows


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    stream = captured.out if captured.out.strip() else captured.err
    return code, json.loads(stream)


def test_check_invariant(capsys):
    code, out = run(capsys, "check", "--family", "A", "--rank", "3", "--subgraph", "A1", "--c", "1/2")
    assert code == 0
    assert out["invariant"] is True
    assert out["equations"] == ["2*c = 1"]


def test_check_not_invariant(capsys):
    code, out = run(capsys, "check", "--family", "F4", "--subgraph", "A1A1", "--c1", "1/2", "--c2", "1/3")
    assert code == 1
    assert out["invariant"] is False
    assert sorted(out["equations"]) == ["2*c1 = 1", "2*c2 = 1"]


def test_check_symbolic(capsys):
    code, out = run(capsys, "check", "--family", "B", "--rank", "4", "--subgraph", "Bl:l=2", "--symbolic")
    assert code == 0
    assert out["equations"] == ["2*c1+2*c2 = 1"]
    assert out["status"] == "family"
    assert out["values"]["c1"] == "-c2+1/2"


def test_check_direct_routes_agree(capsys):
    code, out = run(capsys, "check", "--family", "B", "--rank", "3", "--subgraph", "A1:2", "--c1", "1/3", "--c2", "1/2", "--direct")
    assert code == 0
    assert out["routes_agree"] is True
    assert out["stratum"]["gamma0"] == [3]


def test_check_needs_values(capsys):
    code, out = run(capsys, "check", "--family", "A", "--rank", "3", "--subgraph", "A1")
    assert code == 2
    assert "error" in out


def test_unknown_subgraph_type(capsys):
    code, out = run(capsys, "check", "--family", "A", "--rank", "3", "--subgraph", "Z9", "--symbolic")
    assert code == 2
    assert "error" in out


def test_orbit_cap_exit(capsys, monkeypatch):
    # main() writes the cap into the environment; setenv snapshots the prior
    # state so the pollution is rolled back for the rest of the suite
    monkeypatch.setenv("DUNKLCM_ORBIT_CAP", "1000000")
    code, out = run(capsys, "check", "--family", "E7", "--subgraph", "A1^3:2", "--c", "1/2", "--orbit-cap", "10")
    assert code == 3
    assert out["capped"] is True


def test_check_complex_group(capsys):
    code, out = run(capsys, "check", "--group", "G(3,3,3)", "--blocks", "2", "--c0", "1/2")
    assert code == 0
    assert out["equations"] == ["c0 = 1/2"]
    code, _ = run(capsys, "check", "--group", "G(3,3,3)", "--blocks", "2", "--c0", "1/3")
    assert code == 1


def test_solve_zeros_in_d(capsys):
    code, out = run(capsys, "solve", "--family", "D", "--rank", "4", "--subgraph", "Dp:p=3")
    assert code == 0
    assert out["status"] == "unique"
    assert out["values"] == {"c": "1/4"}


def test_solve_complex(capsys):
    code, out = run(capsys, "solve", "--group", "G(4,2,3)", "--blocks", "2", "--zeros", "1")
    assert code == 0
    assert out["status"] == "see equations"
    assert out["equations"] == ["c0 = 1/2", "c1 = 1/2"]


def test_restrict_solves_and_reports(capsys):
    code, out = run(capsys, "restrict", "--family", "E8", "--subgraph", "D4")
    assert code == 0
    assert out["multiplicities"] == {"c": "1/6"}
    cfg = out["configuration"]
    assert cfg["size"] == 24
    assert cfg["multiplicity_multiset"] == {"1/6": 12, "4/3": 12}
    assert out["conservation_defect"] == "0"
    assert out["radial_operator"].startswith("Delta_pi")
    assert "Delta" in out["potential_operator"]


def test_restrict_whole_space_symbolic(capsys):
    code, out = run(capsys, "restrict", "--family", "A", "--rank", "2")
    assert code == 0
    assert out["status"] == "unconstrained"
    assert out["configuration"]["multiplicity_multiset"] == {"c": 3}


def test_restrict_force_gate(capsys):
    code, out = run(capsys, "restrict", "--family", "A", "--rank", "3", "--subgraph", "A1", "--c", "1/3")
    assert code == 1
    assert "force" in out["error"]
    code, out = run(capsys, "restrict", "--family", "A", "--rank", "3", "--subgraph", "A1", "--c", "1/3", "--force")
    assert code == 0
    assert out["configuration"]["multiplicity_multiset"] == {"1/3": 1, "2/3": 2}


def test_catalog_command(capsys, tmp_path):
    target = tmp_path / "rows.json"
    code = main(["catalog", "--jobs", "2", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    rows = json.loads(target.read_text())["rows"]
    assert len(rows) == 41
    stored = {r["index"]: r for r in _load_catalog_rows()}
    assert all(r["dim"] == stored[r["index"]]["dim"] and r["mults"] == stored[r["index"]]["mults"] for r in rows)


def test_verify_commutativity(capsys):
    code, out = run(capsys, "verify", "commutativity", "--family", "G2", "--c1", "1/2", "--c2", "2/3", "--degree", "2")
    assert code == 0
    assert out["violations"] == 0


def test_verify_commutativity_seeded_samples_repeat(capsys):
    args = ["verify", "commutativity", "--family", "A", "--rank", "2", "--samples", "2", "--degree", "2", "--seed", "5"]
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_gauge_single_stratum(capsys):
    code, out = run(capsys, "verify", "gauge", "--family", "B", "--rank", "3", "--subgraph", "A1:1")
    assert code == 0
    assert out["strata"][0]["defects"] == 0


def test_verify_restriction(capsys):
    code, out = run(capsys, "verify", "restriction", "--family", "A", "--rank", "3", "--subgraph", "A1", "--degree", "4")
    assert code == 0


def test_verify_deformed(capsys):
    code, out = run(capsys, "verify", "deformed", "--family", "A", "--rank", "2", "--k", "1", "--l", "2", "--degree", "2")
    assert code == 0


def test_verify_catalog_golden_size_note(capsys, tmp_path):
    rows = _load_catalog_rows()
    rows[0] = dict(rows[0], size=rows[0]["size"] + 1)
    golden = tmp_path / "golden.json"
    golden.write_text(json.dumps({"rows": rows}))
    code, out = run(capsys, "verify", "catalog", "--golden", str(golden))
    assert code == 0  # dim and multiset still match
    assert len(out["size_diffs"]) == 1
    assert out["size_diffs"][0]["index"] == rows[0]["index"]


def test_verify_catalog_golden_mismatch(capsys, tmp_path):
    rows = _load_catalog_rows()
    rows[3] = dict(rows[3], dim=rows[3]["dim"] + 1)
    golden = tmp_path / "golden.json"
    golden.write_text(json.dumps({"rows": rows}))
    code, out = run(capsys, "verify", "catalog", "--golden", str(golden))
    assert code == 1
    assert out["matched"] == len(rows) - 1


def test_float_siblings(capsys):
    code, out = run(capsys, "check", "--family", "A", "--rank", "3", "--subgraph", "A1", "--c", "1/2", "--float")
    assert code == 0
    assert out["multiplicities"]["c~float"] == 0.5


def test_pretty_output(capsys):
    code = main(["check", "--family", "A", "--rank", "3", "--subgraph", "A1", "--c", "1/2", "--pretty"])
    text = capsys.readouterr().out
    assert code == 0
    assert "invariant" in text and "{" not in text.splitlines()[0]
