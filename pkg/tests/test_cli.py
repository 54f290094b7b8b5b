"""Tests for the command-line interface: outputs, exit codes, determinism."""

import json
import math

import numpy as np

from spectral_cone import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_square_point(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--space", "square", "--element", "[0.5, 0.25]")
    assert code == 0
    payload = json.loads(out)
    np.testing.assert_allclose(payload["spectrum"], [0.5, 0.25, 0.25], atol=1e-12)
    assert payload["caratheodory_ok"]
    assert payload["n"] == 3 and payload["dim"] == 2
    assert len(payload["witnesses"]) == 3


def test_decompose_simplex_vertex(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--space", "simplex3", "--element", "[1, 0, 0]")
    assert code == 0
    payload = json.loads(out)
    assert payload["weights"] == [1.0]


def test_decompose_qubit(capsys):
    space = '{"kind": "density", "ring": "complex", "n": 2}'
    element = "[0.75, 0, 0, 0, 0, 0, 0.25, 0]"  # diag(3/4, 1/4) as (re, im) pairs
    code, out, _ = run_cli(capsys, "decompose", "--space", space, "--element", element)
    assert code == 0
    payload = json.loads(out)
    np.testing.assert_allclose(payload["spectrum"], [0.75, 0.25], atol=1e-9)


def test_decompose_parse_error_exit_1(capsys):
    code, _, err = run_cli(capsys, "decompose", "--space", "nonsense", "--element", "[1]")
    assert code == 1 and "error" in err


def test_decompose_invariant_failure_exit_2(capsys):
    code, _, err = run_cli(capsys, "decompose", "--space", "simplex3", "--element", "[0.5, 0.5, 0.5]")
    assert code == 2


def test_check_locality_pass(capsys):
    code, out, _ = run_cli(
        capsys, "check", "locality", "--space", "simplex3", "--divergence", "kl", "--trials", "50"
    )
    assert code == 0
    report = json.loads(out)
    assert report["check"] == "locality" and report["pass"]
    assert report["max_gap"] <= 1e-8
    assert report["seed"] == 42


def test_check_locality_fail_exit_2(capsys):
    code, out, _ = run_cli(
        capsys, "check", "locality", "--space", "simplex3",
        "--divergence", "squared_euclidean", "--trials", "50",
    )
    assert code == 2
    report = json.loads(out)
    assert not report["pass"] and report["witness"] is not None


def test_check_spectrality_square(capsys):
    code, out, _ = run_cli(capsys, "check", "spectrality", "--space", "square", "--trials", "5")
    assert code == 2
    report = json.loads(out)
    assert report["witness"]["coords"] == [0.5, 0.5]
    lengths = sorted(len(s) for s in report["witness"]["spectra"])
    assert lengths == [2, 4]


def test_check_concavity(capsys):
    code, out, _ = run_cli(capsys, "check", "concavity", "--algebra", "complex2", "--trials", "20")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] and report["max_second_derivative"] < 0


def test_check_sufficiency(capsys):
    code, out, _ = run_cli(
        capsys, "check", "sufficiency", "--space", "simplex3", "--divergence", "kl", "--trials", "40"
    )
    assert code == 0
    assert json.loads(out)["pass"]


def test_check_usage_error(capsys):
    code, _, err = run_cli(capsys, "check", "concavity", "--trials", "5")
    assert code == 1 and "algebra" in err


def test_landscape_square(tmp_path, capsys):
    out_path = tmp_path / "sq.csv"
    code, _, _ = run_cli(
        capsys, "landscape", "--space", "square", "--grid", "41", "--out", str(out_path)
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "x,y,entropy"
    assert len(lines) == 1 + 41 * 41  # all grid points lie in the square
    maxima = json.loads((tmp_path / "sq.csv.maxima.json").read_text())
    assert len(maxima) == 4


def test_landscape_triangle_stdout(capsys):
    code, out, err = run_cli(capsys, "landscape", "--space", "simplex3", "--grid", "100")
    assert code == 0
    maxima = json.loads(err)
    assert len(maxima) == 1
    assert abs(maxima[0]["entropy"] - math.log(3)) <= 1e-9


def test_landscape_rejects_non_2d(capsys):
    code, _, err = run_cli(capsys, "landscape", "--space", "simplex4")
    assert code == 1


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys, "check", "locality", "--space", "simplex3", "--divergence", "kl",
            "--trials", "25", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPECTRAL_CONE_SEED", "7")
    code, out, _ = run_cli(
        capsys, "check", "locality", "--space", "simplex3", "--divergence", "kl", "--trials", "5"
    )
    assert json.loads(out)["seed"] == 7
    # the --seed flag wins over the environment
    code, out, _ = run_cli(
        capsys, "check", "locality", "--space", "simplex3", "--divergence", "kl",
        "--trials", "5", "--seed", "11",
    )
    assert json.loads(out)["seed"] == 11


def test_element_with_trace(capsys):
    code, out, _ = run_cli(
        capsys, "decompose", "--space", "simplex3",
        "--element", '{"trace": 2.0, "coords": [0.5, 0.25, 0.25]}',
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["trace"] == 2.0
    np.testing.assert_allclose(payload["spectrum"], [1.0, 0.5, 0.5], atol=1e-12)


def test_space_file_argument(tmp_path, capsys):
    path = tmp_path / "space.json"
    path.write_text('{"kind": "ball", "d": 2}')
    code, out, _ = run_cli(capsys, "decompose", "--space", f"@{path}", "--element", "[0.3, 0.4]")
    assert code == 0
    payload = json.loads(out)
    np.testing.assert_allclose(sorted(payload["weights"]), [0.25, 0.75], atol=1e-12)
