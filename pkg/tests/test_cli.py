import json
import math
import subprocess
import sys

import pytest

from hinf_interp.cli import BASE_TOLERANCES, DEFAULT_SEED, main, render


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj), encoding="utf-8")
        return str(p)

    return {
        "two": write("two.json", [{"x": 0, "y": 1}, {"x": 0, "y": 3}]),
        "one": write("one.json", [{"x": 0, "y": 1}]),
        "dup": write("dup.json", [{"x": 0, "y": 1}, {"x": 0, "y": 1}]),
        "lower": write("lower.json", [{"x": 0, "y": -1}]),
        "alt": write("alt.json", [{"re": 1, "im": 0}, {"re": -1, "im": 0}]),
        "five": write("five.json", [{"re": 5}]),
        "bad": write("bad.json", "not a list"),
        "unit": write("unit.json", {"t": [-1, 0, 1], "modulus": [1, 1, 1]}),
        "lorentz": write("lorentz.json", {"t": [x / 10 for x in range(-200, 201)],
                                          "modulus": [4 / (1 + (x / 10) ** 2) for x in range(-200, 201)]}),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


# ------------------------------------------------------------ characteristics

def test_characteristics_two_points(capsys, files):
    code, rep, _ = run_json(capsys, "characteristics", "--points", files["two"])
    assert code == 0
    assert rep["c_H"] == pytest.approx(3.5) and rep["c_HJ"] == pytest.approx(6.0)
    assert rep["seed"] == DEFAULT_SEED
    assert rep["tolerances"] == BASE_TOLERANCES
    assert rep["violations"] == []


def test_characteristics_single_point(capsys, files):
    code, rep, _ = run_json(capsys, "characteristics", "--points", files["one"])
    assert code == 0 and rep["c_H"] == 1


def test_repeated_point_rejected(capsys, files):
    code, out, err = run(capsys, "characteristics", "--points", files["dup"])
    assert code == 1 and "points must be distinct" in err and out == ""


@pytest.mark.parametrize("key", ["lower", "bad"])
def test_malformed_points_rejected(capsys, files, key):
    code, _, err = run(capsys, "characteristics", "--points", files[key])
    assert code == 1 and err.startswith("error:")


def test_missing_file(capsys, files):
    code, _, err = run(capsys, "characteristics", "--points", str(files["dir"] / "nope.json"))
    assert code == 1 and "cannot read" in err


def test_invariant_violation_exit_code(capsys, files, monkeypatch):
    import hinf_interp.characteristics as ch
    real = ch.c_HJ
    monkeypatch.setattr(ch, "c_HJ", lambda Z: (3 * real(Z)[0], real(Z)[1]))
    code, _, err = run(capsys, "characteristics", "--points", files["two"])
    assert code == 2 and "c_HJ" in err


def test_tabulated_weight(capsys, files):
    code, rep, _ = run_json(capsys, "characteristics", "--points", files["two"],
                            "--g", "standard", "--g", f"tabulated:{files['lorentz']}")
    assert code == 0
    tab = [v for k, v in rep["c_J_by_family"].items() if k.startswith("tabulated")][0]
    assert tab == pytest.approx(rep["c_J_by_family"]["standard"], rel=1e-3)


def test_unknown_weight(capsys, files):
    code, _, err = run(capsys, "characteristics", "--points", files["two"], "--g", "triangle")
    assert code == 1 and "unknown weight" in err


# ------------------------------------------------------------ interpolate

def test_interpolate_single(capsys, files):
    code, rep, _ = run_json(capsys, "interpolate", "--points", files["one"], "--targets", files["five"])
    assert code == 0
    assert rep["max_residual"] < 1e-12
    assert rep["c_J"] == pytest.approx(2.0)
    assert rep["bound"] == pytest.approx(math.e * 2 * 5)


def test_interpolate_two(capsys, files):
    code, rep, _ = run_json(capsys, "interpolate", "--points", files["two"], "--targets", files["alt"])
    assert code == 0 and rep["margin"] >= 0


def test_interpolate_length_mismatch(capsys, files):
    code, _, err = run(capsys, "interpolate", "--points", files["two"], "--targets", files["five"])
    assert code == 1 and "expected 2 target values" in err


@pytest.mark.parametrize("a", ["0", "-1", "abc"])
def test_interpolate_bad_a(capsys, files, a):
    code, _, _ = run(capsys, "interpolate", "--points", files["one"], "--targets", files["five"], "--a", a)
    assert code == 1


# ------------------------------------------------------------ pick

def test_pick_two(capsys, files):
    code, rep, _ = run_json(capsys, "pick", "--points", files["two"], "--targets", files["alt"])
    assert code == 0 and rep["rho_star"] == pytest.approx(2 + math.sqrt(3), abs=1e-6)


def test_pick_estimate_two(capsys, files):
    code, rep, _ = run_json(capsys, "pick", "--points", files["two"], "--estimate", "--samples", "200",
                            "--seed", "7")
    assert code == 0
    assert rep["m_hat"] == pytest.approx(2 + math.sqrt(3), abs=1e-3)
    assert rep["sandwich"]["m_hat<=e*c_J"] and rep["sandwich"]["c_H<=m_hat"]
    assert rep["seed"] == 7


def test_pick_estimate_single(capsys, files):
    code, rep, _ = run_json(capsys, "pick", "--points", files["one"], "--estimate")
    assert code == 0 and rep["m_hat"] == pytest.approx(1.0)


def test_pick_tolerance_scaling(capsys, files):
    code, rep, _ = run_json(capsys, "pick", "--points", files["two"], "--targets", files["alt"], "--tol", "10",
                            "--pick-tol", "1e-12")
    assert rep["tolerances"]["psd"] == pytest.approx(1e-9)
    assert rep["tolerances"]["pick_bisection"] == 1e-12
    # a looser PSD slack can only accept early
    assert 2 + math.sqrt(3) - 1e-7 <= rep["rho_star"] <= 2 + math.sqrt(3) + 1e-12


def test_nonpositive_tol(capsys, files):
    code, _, _ = run(capsys, "pick", "--points", files["two"], "--targets", files["alt"], "--tol", "0")
    assert code == 1


# ------------------------------------------------------------ gamma

def test_gamma_half(capsys):
    code, rep, _ = run_json(capsys, "gamma", "--gamma", "0.5", "--K", "8")
    assert code == 0
    assert 0.8 <= rep["rho_ratio"] <= 1.1
    assert rep["tau"] >= 0 and rep["warnings"] == []


def test_gamma_truncation_flag(capsys):
    code, rep, _ = run_json(capsys, "gamma", "--gamma", "1", "--K", "2")
    assert code == 0 and rep["truncation_warning"] and rep["warnings"]


def test_gamma_overflow(capsys):
    code, _, err = run(capsys, "gamma", "--gamma", "1", "--K", "700")
    assert code == 1 and "600" in err


def test_gamma_one_report(capsys):
    code, rep, _ = run_json(capsys, "gamma", "--gamma", "1", "--K", "14")
    assert code == 0
    assert 0.85 <= rep["peak_ratio"] <= 1.15
    assert 0.85 <= rep["bprime_ratio"] <= 1.15
    assert 0.8 <= rep["rho_ratio"] <= 1.1


def test_gamma_no_pick(capsys):
    code, rep, _ = run_json(capsys, "gamma", "--gamma", "1", "--K", "6", "--no-pick")
    assert code == 0 and rep["rho_star"] is None


# ------------------------------------------------------------ outer

def test_outer_psi(capsys):
    code, rep, _ = run_json(capsys, "outer", "--psi-at-i")
    assert code == 0
    assert rep["modulus"] == pytest.approx(2 * math.e / math.pi, abs=1e-6)
    assert rep["argument"] == pytest.approx(math.pi / 2, abs=1e-6)
    assert rep["error_estimate"] < 1e-8


def test_outer_unit_modulus(capsys, files):
    code, rep, _ = run_json(capsys, "outer", "--modulus", files["unit"], "--at", "0.3", "2.5")
    assert code == 0 and rep["value"]["re"] == pytest.approx(1.0) and rep["value"]["im"] == pytest.approx(0.0)


def test_outer_g0_integral(capsys):
    code, rep, _ = run_json(capsys, "outer", "--g0-integral")
    assert code == 0 and rep["value"] == pytest.approx(2 * math.pi ** 2 / math.e, rel=1e-3)
    assert rep["minimal"]


def test_outer_needs_mode(capsys):
    code, _, _ = run(capsys, "outer")
    assert code == 1


def test_outer_modulus_needs_point(capsys, files):
    code, _, err = run(capsys, "outer", "--modulus", files["unit"])
    assert code == 1 and "--at" in err


# ------------------------------------------------------------ chain-check

def test_chain_check_single_point(capsys):
    code, rep, _ = run_json(capsys, "chain-check", "--n", "1", "--count", "5", "--samples", "20")
    assert code == 0 and rep["passed"]
    assert rep["gaps"]["m_hat/c_H"]["max"] == 1.0


def test_chain_check_records(capsys):
    code, rep, _ = run_json(capsys, "chain-check", "--n", "2", "--count", "2", "--samples", "20", "--records")
    assert code == 0 and len(rep["records"]) == 2


def test_chain_check_failure_exit_code(capsys, monkeypatch):
    import hinf_interp.chain as chain
    monkeypatch.setitem(chain.TOLERANCES, "c_HJ<=2c_H", -0.9)
    code, _, err = run(capsys, "chain-check", "--n", "2", "--count", "1", "--samples", "10")
    assert code == 2 and "c_HJ<=2c_H" in err


# ------------------------------------------------------------ formats and determinism

def test_byte_identical_output(files):
    outs = []
    for i in range(2):
        path = files["dir"] / f"out{i}.json"
        assert main(["pick", "--points", files["two"], "--estimate", "--seed", "3", "--samples", "50",
                     "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_csv_and_table_formats(capsys, files):
    code, out, _ = run(capsys, "characteristics", "--points", files["two"], "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "field,value"
    assert "c_H,3.5" in lines
    code, out, _ = run(capsys, "characteristics", "--points", files["two"], "--format", "table")
    assert code == 0 and any(line.startswith("c_HJ") for line in out.splitlines())


def test_render_round_trips_floats():
    v = 0.1 + 0.2
    assert json.loads(render({"v": v}, "json"))["v"] == v
    assert json.loads(render({"z": 1 + 2j}, "json"))["z"] == {"re": 1.0, "im": 2.0}


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hinf_interp.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "hinf-interp" in proc.stdout
