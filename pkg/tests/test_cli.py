import csv
import io
import json

import pytest

from photon_subsets.cli import num, run
from photon_subsets.fock import BeamState
from photon_subsets.io import load_state, loads, save_state

NOON = BeamState.from_ket({(2, 0): 1, (0, 2): 1})


@pytest.fixture
def noon_file(tmp_path):
    path = tmp_path / "noon.json"
    save_state(NOON, path)
    return str(path)


def test_reduce_writes_state_and_metadata(noon_file, tmp_path):
    out = tmp_path / "out.json"
    assert run(["reduce", "--input", noon_file, "--remove", "1", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["metadata"]["removed"] == 1
    assert doc["metadata"]["trace_retained"] == pytest.approx(1.0)
    expected = BeamState(2, [((1, 0), (1, 0), 0.5), ((0, 1), (0, 1), 0.5)])
    assert load_state(out).allclose(expected, atol=1e-15)


def test_reduce_normalize_flag(tmp_path, capsys):
    path = tmp_path / "mix.json"
    save_state(BeamState(1, [((0,), (0,), 0.5), ((1,), (1,), 0.5)]), path)
    assert run(["reduce", "--input", str(path), "--normalize"]) == 0
    state = loads(capsys.readouterr().out)
    assert state.trace() == pytest.approx(1.0)


def test_subset_metadata(noon_file, capsys):
    assert run(["subset", "--input", noon_file, "--q", "1", "--method", "convex"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["metadata"]["normalization"] == pytest.approx(2.0)
    assert doc["metadata"]["weights"] == {"2": 1.0}


def test_subset_degenerate_exits_2(noon_file, capsys):
    assert run(["subset", "--input", noon_file, "--q", "99"]) == 2
    assert "DegenerateNormalization" in capsys.readouterr().err


def test_correlate_single_and_table(noon_file, capsys):
    assert run(["correlate", "--input", noon_file, "--k", "2,0", "--l", "0,2"]) == 0
    re, im = map(float, capsys.readouterr().out.split())
    assert re == pytest.approx(1.0) and im == 0
    assert run(["correlate", "--input", noon_file, "--all-order", "1"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert {(r["k"], r["l"]) for r in rows} == {("1,0", "1,0"), ("0,1", "0,1")}
    assert all(float(r["re"]) == pytest.approx(1.0) for r in rows)


def test_loss_transform_and_applications(noon_file, tmp_path, capsys):
    assert run(["loss", "--input", noon_file, "--eta", "0.8", "--method", "general"]) == 0
    assert loads(capsys.readouterr().out).trace() == pytest.approx(1.0)
    unitary = tmp_path / "u.json"
    unitary.write_text(json.dumps({"re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]}))
    assert run(["transform", "--input", noon_file, "--unitary", str(unitary)]) == 0
    assert loads(capsys.readouterr().out).allclose(NOON, atol=1e-15)
    assert run(["stokes", "--input", noon_file]) == 0
    assert [float(x) for x in capsys.readouterr().out.split()] == pytest.approx([2, 0, 0, 0])
    assert run(["purity", "--input", noon_file, "--q", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.5)


def test_project(tmp_path, capsys):
    path = tmp_path / "m.json"
    save_state(BeamState(1, [((0,), (0,), 0.5), ((2,), (2,), 0.5)]), path)
    for method in ("series", "direct"):
        assert run(["project", "--input", str(path), "--m", "2", "--method", method]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(0.5)


def test_numbers_use_17_significant_digits():
    assert num(0.1) == "0.10000000000000001"
    assert float(num(1 / 3)) == 1 / 3


def test_random_is_byte_reproducible(capsys):
    assert run(["random", "--modes", "2", "--n-max", "2", "--kind", "pure", "--seed", "0"]) == 0
    first = capsys.readouterr().out
    run(["random", "--modes", "2", "--n-max", "2", "--kind", "pure", "--seed", "0"])
    assert capsys.readouterr().out == first
    assert run(["random", "--modes", "9", "--n-max", "2"]) == 2


def test_usage_errors_name_flag_and_example(noon_file, capsys):
    assert run(["reduce", "--input", noon_file, "--remov", "1"]) == 2
    err = capsys.readouterr().err
    assert "--remov" in err and "example: photon-subsets reduce" in err
    assert run(["subset", "--input", noon_file, "--q", "two"]) == 2
    assert "--q" in capsys.readouterr().err
    assert run([]) == 2
    assert run(["correlate", "--input", noon_file, "--k", "1,0"]) == 2
    assert run(["reduce", "--input", "/nonexistent.json"]) == 2


def test_verify_report(capsys):
    assert run(["verify", "projector", "--seed", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "verify projector"
    assert report["checks"] and all("max_error" in c for c in report["checks"])
    assert run(["verify", "eq8", "--eta", "0.5"]) == 2


def test_verify_failure_exits_1(capsys):
    # a tolerance no floating-point computation can meet
    assert run(["verify", "stokes", "--tolerance", "-1"]) == 1
    assert "FAIL" in capsys.readouterr().err


def test_verify_loss_and_uniqueness_flags(capsys):
    assert run(["verify", "loss", "--eta", "0.25"]) == 0
    capsys.readouterr()
    assert run(["verify", "eq13", "--q", "2"]) == 0
    names = [c["name"] for c in json.loads(capsys.readouterr().out)["checks"]]
    assert any("q=2" in n for n in names)
    assert not any("q=3" in n for n in names)
