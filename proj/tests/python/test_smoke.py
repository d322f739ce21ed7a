import json

import numpy as np
import pytest

import ddsim


def test_pauli_group_orders():
    assert ddsim.pauli_group(1, "full").order == 4
    assert ddsim.pauli_group(3, "collective").order == 4
    flip = ddsim.pauli_group(2, "flip")
    assert flip.labels == ["II", "XX"]
    assert np.allclose(flip.elements[1], ddsim.pauli_word("XX"))


def test_projection_collapses_to_trace():
    rng = np.random.default_rng(0)
    s = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    p = ddsim.project_commutant(s, ddsim.full_pauli_group(1))
    assert np.allclose(p, np.trace(s) / 2 * np.eye(2), atol=1e-12)


def test_commutant_and_modes():
    assert len(ddsim.commutant_basis(ddsim.pauli_group(2, "collective"))) == 4
    flip = ddsim.pauli_group(1, "flip")
    assert ddsim.check_decoupling(flip, [ddsim.pauli_word("Z")])["mode"] == "selective"
    report = ddsim.check_decoupling(flip, [ddsim.pauli_word("X")])
    assert report["mode"] == "none"
    assert report["residuals"][0] == pytest.approx(np.sqrt(2))


def test_minimal_group_search():
    groups = ddsim.minimal_group_search(["Z"], 1, 4)
    assert {tuple(g.labels) for g in groups} == {("I", "X"), ("I", "Y")}


def test_expm_and_fidelity():
    u = ddsim.expm_hermitian(ddsim.pauli_word("Z"), 0.5)
    assert np.allclose(u, np.diag(np.exp([-0.5j, 0.5j])))
    plus = np.full((2, 2), 0.5, dtype=complex)
    assert ddsim.fidelity(plus, np.eye(2) / 2) == pytest.approx(0.5)


def test_partial_trace():
    a = np.diag([0.25, 0.75]).astype(complex)
    b = np.eye(3, dtype=complex) / 3
    assert np.allclose(ddsim.partial_trace_bath(np.kron(a, b), [2, 3], 1), a)


def test_config_errors():
    with pytest.raises(ddsim.ConfigError, match=r"\$\.seed"):
        ddsim.parse_config('{"scenario": "custom"}')
    with pytest.raises(ddsim.ConfigError, match=r"\$\.bogus"):
        ddsim.parse_config('{"seed": 1, "bogus": 2}')


def test_simulate_echo():
    config = json.dumps({"scenario": "dephasing-echo", "seed": 7, "n_cycles": 40})
    out = ddsim.simulate(config)
    assert out["mode"] == "selective"
    assert out["ratio"] < 0.05
    assert out["controlled"]["cycle"][-1] == 40
    assert out["controlled"]["fidelity"][0] == pytest.approx(1.0)


def test_run_scenario_writes_outputs(tmp_path):
    code, summary = ddsim.run_scenario(ddsim.preset_config("maximal-averaging"), str(tmp_path))
    assert code == 0
    assert json.loads(summary)["mode"] == "maximal"
    header = (tmp_path / "trajectory.csv").read_text().splitlines()[0]
    assert header == "cycle,time,fidelity,coherence,trace_distance"


def test_design_report():
    assert "minimal order: 2" in ddsim.design_report(["Z"], 1)
