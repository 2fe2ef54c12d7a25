import json

import pytest

from asymcomp.cli import main
from asymcomp.report import Report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_fibonacci_json(capsys):
    code, out, _ = run(capsys, "analyze", "--rule", "[ab,a]", "--format", "json")
    assert code == 0
    d = json.loads(out)
    for key in ("rule", "minpoly", "n_points", "left_blocks", "right_blocks", "perm_cycles", "orbits",
                "per_orbit", "k_used", "seeds", "canonical_key"):
        assert key in d
    assert d["n_points"] == 2
    assert d["left_blocks"] == [[1, 2]] and d["right_blocks"] == [[1, 2]]
    assert d["perm_cycles"] == [[1, 2]]


def test_analyze_aab_ba(capsys):
    code, out, _ = run(capsys, "analyze", "--rule", "[aab,ba]", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["n_points"] == 4
    assert len(d["left_blocks"]) == 2 and len(d["right_blocks"]) == 2
    assert sorted(len(c) for c in d["perm_cycles"]) == [2, 2]
    # as printed in the table: (1,3)(2,4), each cycle swapping the points of
    # one right pair while exchanging the two left pairs
    assert d["perm_cycles"] == [[1, 3], [2, 4]]
    assert sorted(map(sorted, d["perm_cycles"])) == sorted(map(sorted, d["right_blocks"]))


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--rule", "[c,ca,cb]")
    assert code == 0
    assert "points      6" in out


@pytest.mark.parametrize("argv,code", [
    (["analyze", "--rule", "[ab"], 2),
    (["analyze", "--rule", "[ab,ab]"], 3),  # reducible spectrum
    (["analyze", "--rule", "[ab,a]", "--k-init", "3", "--k-max", "3"], 3),
    (["enumerate", "--charpoly", "x^4-x-1"], 3),
    (["enumerate", "--charpoly", "x^^2"], 2),
    (["enumerate", "--matrix", "[[1,-1],[1,0]]"], 2),
    (["tables", "--fixtures", "/nonexistent/tables.json"], 2),
    (["tables", "--table", "9"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:")


def test_report_roundtrip_and_stability(capsys):
    _, first, _ = run(capsys, "analyze", "--rule", "[bc,a,b]", "--format", "json")
    _, second, _ = run(capsys, "analyze", "--rule", "[bc,a,b]", "--format", "json")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing"}
    assert strip(first) == strip(second)
    no_timing = lambda s: "\n".join(l for l in s.splitlines() if '"timing"' not in l)
    assert no_timing(first) == no_timing(second)
    rep = Report.from_json(first)
    assert Report.from_json(rep.to_json()) == rep
    # approximations are not part of the round trip
    d = json.loads(first)
    d["lambda_approx"] = "?"
    d["seeds"][0]["origin_offset_approx"] = "?"
    assert Report.from_dict(d).seeds == rep.seeds


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--rule1", "[aab,ba]", "--rule2", "[baa,ab]")
    assert code == 1 and "failed condition" in out
    code, out, _ = run(capsys, "compare", "--rule1", "[c,ca,cb]", "--rule2", "[c,ac,bc]")
    assert code == 0 and "witness" in out
    code, out, _ = run(capsys, "compare", "--rule1", "[ab,a]", "--rule2", "[ab,a]")
    assert code == 0 and "witness: 1->1 2->2" in out


@pytest.mark.parametrize("rule,code", [("[bc,a,b]", 1), ("[aca,a,b]", 0), ("[aac,a,b]", 1)])
def test_mirror(capsys, rule, code):
    got, out, _ = run(capsys, "mirror", "--rule", rule)
    assert got == code
    if code == 0:
        assert "caution" in out.lower() or "not" in out


def test_enumerate_matrix(capsys):
    code, out, _ = run(capsys, "enumerate", "--matrix", "[[1,1],[1,0]]")
    assert code == 0
    assert [l.split("\t")[1] for l in out.splitlines()[2:]] == ["[ab,a]", "[ba,a]"]


def test_enumerate_charpoly_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--charpoly", "x^3-x^2-x-1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["matrices"]) == 4


def test_enumerate_group_tsv(capsys):
    code, out, _ = run(capsys, "enumerate", "--charpoly", "x^3-x^2-1", "--group")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split("\t") == ["Nr", "Repr", "Rk", "OSD", "AC-left", "AC-right", "Perm", "Members", "Mirror"]
    # the plastic table has one row with this matrix
    assert len([l for l in lines[2:] if not l.startswith("#")]) >= 1


def test_tables_single(capsys):
    code, out, _ = run(capsys, "tables", "--table", "3")
    assert code == 0
    assert out.count("  PASS") + out.count(" PASS\n") >= 5
    assert "5 rows: 5 PASS" in out


def test_render(tmp_path, capsys):
    path = tmp_path / "fib.svg"
    code, _, _ = run(capsys, "render", "--rule", "[ab,a]", "--out", str(path))
    assert code == 0
    svg = path.read_text()
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    # seeds aaba / abaa above, their inflations (7 tiles each) below
    assert svg.count("<rect") == 4 + 4 + 7 + 7
    assert svg.count("stroke-dasharray") == 2
    code, _, err = run(capsys, "render", "--rule", "[ab,a]", "--out", str(tmp_path / "no" / "such" / "x.svg"))
    assert code == 4 and "cannot write" in err


def test_render_geometry():
    from asymcomp import parse_rule
    from asymcomp.render import seed_rows

    (entry,) = seed_rows(parse_rule("[ab,a]"))
    assert entry["pair"] == ("aaba", "abaa")
    # splitting point sits left of the scaling centre and is fixed by the inflation
    assert entry["split"].sign() < 0 and entry["split"] == entry["split_after"]
    (right,) = seed_rows(parse_rule("[ab,a]"), "right")
    assert right["split"].sign() >= 0
