import json
from fractions import Fraction

import numpy as np
import pytest

import razak


def test_canonical_h_values():
    b = razak.make_block(1, 1)
    h = razak.canonical_h(b, 64)
    assert b.n_prime == 2
    assert np.allclose(h.at(0.5), np.diag([1.0, 0.5]))
    assert razak.validate_element(h) == 0.0


def test_first_step_spectrum():
    block, phi = razak.build_successor(razak.make_block(1, 1), 64)
    assert (block.n, block.a) == (3, 3)
    assert phi.multiplicity == 6
    image = razak.apply_map(phi, razak.canonical_h(razak.make_block(1, 1), 64))
    assert np.allclose(image.boundary, np.diag([1.0, 0.5, 1.0]))
    spectrum = razak.herm_spectrum(image.at(0.0))
    assert np.allclose(spectrum, [0] * 3 + [0.5] * 3 + [1] * 6)


def test_unitary_is_unitary():
    _, phi = razak.build_successor(razak.make_block(1, 2), 32)
    u = phi.unitary_at(0.3)
    assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]))


def test_trace_gap_matches_fractions():
    tower = razak.build_tower(razak.make_block(1, 1), 2, grid_size=32)
    h = razak.canonical_h(tower.stage(1), 32)
    gap = razak.trace_unique_rate(tower, h, 1, 2)
    branches = tower.stage_map(1, 2).branches

    def point_trace(x):
        total = Fraction(0)
        for l, d, constant in branches:
            s = Fraction(l, 2**d) if constant else (x + l) / Fraction(2**d)
            total += (1 + s) / 2
        return total / len(branches)

    values = [point_trace(Fraction(j, 32)) for j in range(33)]
    assert max(values) - min(values) == Fraction(5, 24)
    assert gap["gap"] == pytest.approx(5 / 24, abs=1e-14)
    assert gap["gap"] <= gap["modulus"]


def test_pushforward_duality():
    block, phi = razak.build_successor(razak.make_block(1, 1), 64)
    tau = razak.Trace(block)
    tau.add(0.3, 0.7)
    tau.add(1.0, 0.2)
    f = razak.random_element(razak.make_block(1, 1), 64, seed=3)
    lhs = razak.eval_trace(tau, razak.apply_map(phi, f))
    rhs = razak.eval_trace(razak.pushforward_trace(phi, tau), f)
    assert lhs == pytest.approx(rhs, abs=1e-12)
    assert razak.trace_norm(razak.pushforward_trace(phi, tau)) == pytest.approx(razak.trace_norm(tau))


def test_errors_carry_their_kind():
    with pytest.raises(razak.RazakError) as info:
        razak.build_tower(razak.make_block(1, 1), 5, grid_size=16)
    assert info.value.kind == "ResourceLimit"
    with pytest.raises(razak.RazakError) as info:
        razak.psi_embed(razak.make_block(1, 1), 16, lambda t: t)
    assert info.value.kind == "NotInCone"


def test_cli_round_trip(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": {"n": 1, "a": 1}, "depth": 2, "grid": 16}))
    out = tmp_path / "out"
    code = razak.run_cli(["--config", str(config), "--out", str(out), "experiment", "eig-density"])
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["pass"] is True
    assert report["command"] == "eig-density"
