import json

import pytest

from posetlab.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_generate_then_compute_cubical_h(tmp_path, capsys):
    out = tmp_path / "c4.json"
    assert run_cli("generate", "cycle", "4", "-o", str(out)) == 0
    data = json.loads(out.read_text())
    assert data["name"] == "cycle-4"
    assert data["covers"] == sorted(data["covers"])

    assert run_cli("compute", "cubical-h", str(out)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["entries"] == [2, 2, 2]
    assert payload["kind"] == "cubical"
    assert payload["rank"] == 2


def test_generate_interval_and_random_poset_families(tmp_path, capsys):
    f = tmp_path / "int.json"
    assert run_cli("generate", "interval", "boolean", "3", "-o", str(f)) == 0
    data = json.loads(f.read_text())
    assert data["name"] == "interval-boolean-3"
    assert run_cli("check", "lower-eulerian", str(f)) == 0
    capsys.readouterr()

    g = tmp_path / "rp.json"
    assert run_cli("generate", "random-poset", "6", "2", "2", "-o", str(g)) == 0
    assert "covers" in json.loads(g.read_text())


def test_check_lower_eulerian_exit_codes(tmp_path, capsys):
    good = tmp_path / "c4.json"
    run_cli("generate", "cycle", "4", "-o", str(good))
    assert run_cli("check", "lower-eulerian", str(good)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] is True

    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "name": "fan",
                "elements": ["0", "a", "b", "c", "d"],
                "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "d"], ["b", "d"], ["c", "d"]],
            }
        )
    )
    assert run_cli("check", "lower-eulerian", str(bad)) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] is False
    assert payload["witness"] == ["0", "d"]


def test_check_cm_on_complex(tmp_path, capsys):
    f = tmp_path / "disc.json"
    f.write_text(
        json.dumps(
            {
                "name": "two-pieces",
                "vertices": ["a", "b", "x", "y"],
                "facets": [["a", "b"], ["x", "y"]],
            }
        )
    )
    assert run_cli("check", "cm", str(f)) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] is False


def test_compute_homology_and_classify(tmp_path, capsys):
    f = tmp_path / "sphere.json"
    run_cli("generate", "simplex-boundary", "3", "-o", str(f))
    assert run_cli("compute", "homology", str(f)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["betti"]["2"] == 1
    assert payload["field"] == 101

    assert run_cli("compute", "classify", str(f)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["gorenstein_star"] is True
    assert payload["buchsbaum_star"] is True


def test_compute_tsv_format(tmp_path, capsys):
    f = tmp_path / "c4.json"
    run_cli("generate", "cycle", "4", "-o", str(f))
    assert run_cli("compute", "toric-h", str(f), "--format", "tsv") == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "kind\trank\th0\th1\th2"
    assert out[1] == "toric\t2\t1\t2\t1"


def test_compute_psi_chi_and_short_cubical(tmp_path, capsys):
    f = tmp_path / "tri.json"
    run_cli("generate", "simplex-boundary", "2", "-o", str(f))
    assert run_cli("compute", "psi", str(f)) == 0
    assert json.loads(capsys.readouterr().out)["psi"] == -1
    assert run_cli("compute", "chi", str(f)) == 0
    assert json.loads(capsys.readouterr().out)["chi"] == -1

    g = tmp_path / "c4.json"
    run_cli("generate", "cycle", "4", "-o", str(g))
    assert run_cli("compute", "short-cubical-h", str(g)) == 0
    assert json.loads(capsys.readouterr().out)["entries"] == [4, 4]

    # chi also applies to complex files.
    h = tmp_path / "r.json"
    run_cli("generate", "random", "5", "1", "3", "-o", str(h))
    assert run_cli("compute", "chi", str(h)) == 0
    capsys.readouterr()


def test_compute_mobius(tmp_path, capsys):
    f = tmp_path / "b2.json"
    run_cli("generate", "boolean", "2", "-o", str(f))
    assert run_cli("compute", "mobius", str(f)) == 0
    payload = json.loads(capsys.readouterr().out)
    values = {(a, b): v for a, b, v in payload["values"]}
    assert values[("e", "12")] == 1
    assert values[("e", "1")] == -1
    assert values[("1", "1")] == 1


def test_usage_errors(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert run_cli("compute", "chi", str(missing)) == 2

    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    assert run_cli("compute", "chi", str(garbled)) == 2
    err = capsys.readouterr().err
    assert "line" in err

    # Valid JSON without the expected keys is still a usage error.
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"name": "x"}))
    assert run_cli("compute", "chi", str(other)) == 2

    with pytest.raises(SystemExit) as exc:
        run_cli("compute", "no-such-invariant", str(garbled))
    assert exc.value.code == 2

    complexfile = tmp_path / "pts.json"
    run_cli("generate", "random", "5", "1", "3", "-o", str(complexfile))
    assert run_cli("compute", "toric-h", str(complexfile)) == 2


def test_field_env_override(tmp_path, capsys, monkeypatch):
    f = tmp_path / "c4.json"
    run_cli("generate", "cycle", "4", "-o", str(f))
    monkeypatch.setenv("POSETLAB_FIELD", "13")
    assert run_cli("compute", "homology", str(f)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["field"] == 13
    monkeypatch.setenv("POSETLAB_FIELD", "not-a-number")
    assert run_cli("compute", "homology", str(f)) == 2


def test_audit_family_subset(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = run_cli("audit", "all", "--family", "cycle", "-o", str(report_path))
    assert code == 0
    reports = json.loads(report_path.read_text())
    assert [r["instance"] for r in reports] == ["cycle-3", "cycle-4", "cycle-5", "cycle-6"]
    for report in reports:
        for check in report["checks"]:
            assert check["verdict"] in ("pass", "inapplicable")
    err = capsys.readouterr().err
    assert "cycle-4: ok" in err


def test_audit_rejects_unknown_suite():
    assert run_cli("audit", "something-else") == 2


def test_generate_rejects_oversized_family(capsys):
    assert run_cli("generate", "boolean", "9") == 2
    assert "error" in capsys.readouterr().err


def test_generate_rejects_wrong_parameter_counts(capsys):
    assert run_cli("generate", "grid", "2") == 2
    assert run_cli("generate", "boolean") == 2
    assert "error" in capsys.readouterr().err
