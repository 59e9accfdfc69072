import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from doublephase.cli import main
from doublephase.evolutions import kraus_superop
from doublephase.io import ChannelSpec, StateSpec, decode_complex_array, save_channel, save_state
from doublephase.linalg import vectorize
from doublephase.superop import choi_matrix, choi_reshuffle
from doublephase.weyl import omega, translation_op


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report_of(out):
    return json.loads(out)


def dephasing(d=3):
    Z = np.diag(omega(d) ** np.arange(d))
    return ChannelSpec(d, "kraus", (np.eye(d) / np.sqrt(2), Z / np.sqrt(2)))


# -- verify-algebra ------------------------------------------------------------

@pytest.mark.parametrize("d", ["3", "7"])
def test_verify_algebra_passes(capsys, d):
    code, out, _ = run(capsys, "verify-algebra", "--dim", d, "--tol", "1e-10")
    rep = report_of(out)
    assert code == 0 and rep["passed"] and rep["dim"] == int(d)
    assert all(c["pass"] and c["tolerance"] == 1e-10 for c in rep["checks"])


def test_verify_algebra_rejects_even(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-algebra", "--dim", "4"])
    assert exc.value.code == 2
    assert "even dimension" in capsys.readouterr().err


def test_invalid_flags(capsys):
    with pytest.raises(SystemExit):
        main(["verify-algebra", "--dim", "3", "--bogus"])
    with pytest.raises(SystemExit):
        main(["verify-superop", "--dim", "3", "--channels", "-1"])


def test_report_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify-superop", "--dim", "3", "--seed", "5", "--channels", "4", "--report", str(a))
    run(capsys, "verify-superop", "--dim", "3", "--seed", "5", "--channels", "4", "--report", str(b))
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("wall_time"), db.pop("wall_time")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


# -- verify-superop ------------------------------------------------------------

def test_verify_superop_passes(capsys):
    code, out, _ = run(capsys, "verify-superop", "--dim", "5", "--seed", "42", "--channels", "20")
    rep = report_of(out)
    assert code == 0 and rep["passed"]
    assert rep["extra"]["channels"] == {"kraus": 10, "unitary": 5, "echo": 5}


def test_verify_superop_empty_suite(capsys):
    code, _, err = run(capsys, "verify-superop", "--dim", "5", "--channels", "0")
    assert code == 2 and "at least one channel" in err


def test_verify_superop_accepts_physical_input(capsys, tmp_path):
    save_channel(dephasing(), tmp_path / "c.json")
    code, out, _ = run(capsys, "verify-superop", "--dim", "3", "--channels", "2", "--in", str(tmp_path / "c.json"))
    assert code == 0
    names = [c["name"] for c in report_of(out)["checks"]]
    assert "input-complete-positivity" in names


def test_verify_superop_corrupted_fixture_fails(capsys, tmp_path):
    # the transpose map is positive but not completely positive
    d = 3
    S = np.zeros((9, 9))
    for i in range(d):
        for j in range(d):
            S[j + d * i, i + d * j] = 1
    save_channel(ChannelSpec(d, "superop", S + 0j), tmp_path / "bad.json")
    code, out, _ = run(capsys, "verify-superop", "--dim", "3", "--channels", "2", "--in", str(tmp_path / "bad.json"))
    rep = report_of(out)
    assert code == 1 and not rep["passed"]
    failed = [c["name"] for c in rep["checks"] if not c["pass"]]
    assert failed == ["input-complete-positivity"]


def test_verify_superop_dimension_mismatch(capsys, tmp_path):
    save_channel(dephasing(), tmp_path / "c.json")
    code, _, err = run(capsys, "verify-superop", "--dim", "5", "--in", str(tmp_path / "c.json"))
    assert code == 2 and "does not match" in err


# -- choi ------------------------------------------------------------------------

def _table(path):
    doc = json.loads(path.read_text())
    return doc, decode_complex_array(doc["table"], 2)


def test_choi_identity_unitary_all_ones(capsys, tmp_path):
    save_channel(ChannelSpec(3, "unitary", np.eye(3) + 0j), tmp_path / "id.json")
    code, _, _ = run(capsys, "choi", "--in", str(tmp_path / "id.json"), "--basis", "reflection",
                     "--out", str(tmp_path / "out.json"))
    doc, t = _table(tmp_path / "out.json")
    assert code == 0 and doc["basis"] == "reflection" and len(doc["labels"]) == 9
    assert np.max(np.abs(t - 1)) < 1e-12


@pytest.mark.parametrize("basis", ["reflection", "translation"])
def test_choi_dephasing_matches_library(capsys, tmp_path, basis):
    spec = dephasing()
    save_channel(spec, tmp_path / "c.json")
    run(capsys, "choi", "--in", str(tmp_path / "c.json"), "--basis", basis, "--out", str(tmp_path / "o.json"))
    _, t = _table(tmp_path / "o.json")
    assert np.max(np.abs(t - choi_matrix(kraus_superop(spec.data), basis).values)) == 0


def test_choi_transition_basis_is_reshuffle(capsys, tmp_path):
    spec = dephasing()
    save_channel(spec, tmp_path / "c.json")
    run(capsys, "choi", "--in", str(tmp_path / "c.json"), "--basis", "transition", "--out", str(tmp_path / "o.json"))
    doc, t = _table(tmp_path / "o.json")
    assert doc["labels"] is None
    expected = sum(np.outer(vectorize(K), vectorize(K).conj()) for K in spec.data)
    assert np.max(np.abs(t - expected)) < 1e-12
    assert np.max(np.abs(t - choi_reshuffle(kraus_superop(spec.data)))) == 0


def test_choi_schema_violation(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"schema": 1, "dim": 3}))
    code, _, err = run(capsys, "choi", "--in", str(p), "--out", str(tmp_path / "o.json"))
    assert code == 2 and "exactly one" in err


# -- propagate -------------------------------------------------------------------

def _frames(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    frames = {}
    for r in rows:
        frames.setdefault(int(r["step"]), {})[(int(r["q"]), int(r["p"]))] = complex(float(r["re"]), float(r["im"]))
    return frames


def test_propagate_identity_three_identical_frames(capsys, tmp_path):
    save_channel(ChannelSpec(3, "unitary", np.eye(3) + 0j), tmp_path / "c.json")
    save_state(StateSpec(3, "vector", np.array([0.6, 0.8j, 0])), tmp_path / "s.json")
    code, _, _ = run(capsys, "propagate", "--in", str(tmp_path / "c.json"), "--state", str(tmp_path / "s.json"),
                     "--steps", "3", "--out", str(tmp_path / "w.csv"))
    frames = _frames(tmp_path / "w.csv")
    assert code == 0 and sorted(frames) == [1, 2, 3]
    for k in frames[1]:
        assert abs(frames[1][k] - frames[2][k]) < 1e-15 and abs(frames[1][k] - frames[3][k]) < 1e-15
    assert abs(sum(frames[1].values()) - 1) < 1e-12


def test_propagate_translation_shifts_frames(capsys, tmp_path):
    d, eta = 5, (1, 2)
    save_channel(ChannelSpec(d, "unitary", translation_op(eta, d)), tmp_path / "c.json")
    save_state(StateSpec(d, "vector", np.eye(d)[0] + 0j), tmp_path / "s.json")
    run(capsys, "propagate", "--in", str(tmp_path / "c.json"), "--state", str(tmp_path / "s.json"),
        "--steps", "2", "--out", str(tmp_path / "w.csv"))
    frames = _frames(tmp_path / "w.csv")
    for (q, p), v in frames[1].items():
        assert abs(frames[2][((q + eta[0]) % d, (p + eta[1]) % d)] - v) < 1e-12


def test_propagate_echo_decays_with_warning(capsys, tmp_path):
    from doublephase.evolutions import echo_superop
    from doublephase.sampling import random_unitary

    d = 3
    rng = np.random.default_rng(3)
    U1, U2 = random_unitary(d, rng), random_unitary(d, rng)
    save_channel(ChannelSpec(d, "superop", echo_superop(U1, U2)), tmp_path / "c.json")
    save_state(StateSpec(d, "vector", np.eye(d)[0] + 0j), tmp_path / "s.json")
    code, _, err = run(capsys, "propagate", "--in", str(tmp_path / "c.json"), "--state", str(tmp_path / "s.json"),
                       "--steps", "3", "--out", str(tmp_path / "w.csv"))
    assert code == 0 and "not trace preserving" in err
    rho = np.outer(np.eye(d)[0], np.eye(d)[0])
    for n, frame in sorted(_frames(tmp_path / "w.csv").items()):
        # the trace of each frame is the fidelity amplitude tr(U2^n+ U1^n rho)
        P1, P2 = np.linalg.matrix_power(U1, n), np.linalg.matrix_power(U2, n)
        amp = np.trace(P2.conj().T @ P1 @ rho)
        assert abs(sum(frame.values()) - amp) < 1e-12
        assert abs(amp) < 1


def test_propagate_dimension_mismatch(capsys, tmp_path):
    save_channel(dephasing(), tmp_path / "c.json")
    save_state(StateSpec(5, "vector", np.eye(5)[0] + 0j), tmp_path / "s.json")
    code, _, err = run(capsys, "propagate", "--in", str(tmp_path / "c.json"), "--state", str(tmp_path / "s.json"),
                       "--out", str(tmp_path / "w.csv"))
    assert code == 2


# -- verify-pure -----------------------------------------------------------------

def test_verify_pure_random_states(capsys):
    code, out, _ = run(capsys, "verify-pure", "--dim", "7", "--states", "10")
    rep = report_of(out)
    assert code == 0 and rep["extra"]["classification"] == "pure"


def test_verify_pure_mixed_fixture(capsys, tmp_path):
    save_state(StateSpec(3, "density", np.diag([0.5, 0.3, 0.2]) + 0j), tmp_path / "m.json")
    code, out, _ = run(capsys, "verify-pure", "--dim", "3", "--states", "0", "--state", str(tmp_path / "m.json"))
    rep = report_of(out)
    assert code == 1 and rep["extra"]["classification"] == "mixed"
    failed = {c["name"] for c in rep["checks"] if not c["pass"]}
    assert {"prop1", "prop2", "prop3"} <= failed


def test_verify_pure_basis_state(capsys, tmp_path):
    save_state(StateSpec(3, "vector", np.eye(3)[0] + 0j), tmp_path / "e.json")
    code, out, _ = run(capsys, "verify-pure", "--dim", "3", "--states", "0", "--state", str(tmp_path / "e.json"))
    assert code == 0 and report_of(out)["passed"]


def test_verify_pure_rejects_unnormalised(capsys, tmp_path):
    save_state(StateSpec(3, "vector", np.array([1, 1, 0]) + 0j), tmp_path / "e.json")
    code, _, err = run(capsys, "verify-pure", "--dim", "3", "--state", str(tmp_path / "e.json"))
    assert code == 2 and "normalised" in err


# -- airy ----------------------------------------------------------------------------

def test_airy_small_window_is_rejected(capsys):
    code, _, err = run(capsys, "airy", "--grid", "256", "--window", "4")
    assert code == 2 and "edge/peak" in err


def test_airy_wide_window_passes_and_writes_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "airy", "--x1=-3,0", "--grid", "512", "--window", "32",
                       "--out", str(tmp_path / "f.csv"), "--report", str(tmp_path / "r.json"))
    rep = report_of(out)
    assert code == 0 and rep["passed"]
    assert rep["extra"]["rel_l2_err"] < 1e-5
    assert json.loads((tmp_path / "r.json").read_text()) == rep
    assert (tmp_path / "f.csv").read_text().startswith("q,p,value\n")


def test_airy_bad_flags(capsys):
    with pytest.raises(SystemExit):
        main(["airy", "--x1", "1;2"])
    code, _, err = run(capsys, "airy", "--grid", "300")
    assert code == 2 and "power of two" in err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "doublephase.cli", "verify-algebra", "--dim", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["suite"] == "algebra"
