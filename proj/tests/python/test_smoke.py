# Copyright 2026 The pepsim Authors.
# SPDX-License-Identifier: Apache-2.0

import cmath
import math
import random

import pytest

import pepsim


def test_round_trip_and_determinism():
    c = pepsim.generate_rqc(3, 3, 8, seed=4)
    assert c.depth == 8
    assert c.num_layers == 10
    assert pepsim.parse_circuit(pepsim.serialize_circuit(c)) == c
    assert str(pepsim.generate_rqc(3, 3, 8, seed=4)) == str(c)


def test_parse_error_is_raised():
    with pytest.raises(pepsim.ParseError, match="line 3"):
        pepsim.parse_circuit("lattice 2 2\nlayer\ncz 0 0\n")


def test_amplitudes_match_oracle():
    c = pepsim.generate_rqc(3, 4, 8, seed=2)
    state = pepsim.evolve(c)
    assert state.bond_dimension == 2
    sv = pepsim.simulate_statevector(c)
    rng = random.Random(1)
    taus = ["".join(rng.choice("01") for _ in range(12)) for _ in range(10)]
    for tau, amp in zip(taus, pepsim.amplitudes(state, taus)):
        want = sv[pepsim.basis_index(tau)]
        assert abs(amp - want) <= 1e-10 * max(abs(want), 2 ** -6)
        assert pepsim.amplitude(state, tau, strategy="generic") == pytest.approx(want, abs=1e-12)


def test_manual_gates():
    state = pepsim.PepsState(1, 2)
    h = [1 / math.sqrt(2)] * 3 + [-1 / math.sqrt(2)]
    state.apply_single_qubit(h, 0, 0)
    state.apply_single_qubit(h, 0, 1)
    cz = [0j] * 16
    for i, v in enumerate([1, 1, 1, -1]):
        cz[i * 5] = v
    state.apply_two_qubit(cz, (0, 0), (0, 1))
    assert state.bond_dimension == 2
    assert pepsim.amplitude(state, "11") == pytest.approx(-0.5)


def test_cost_model_and_budget():
    cost = pepsim.estimate_cost(8, 8, 40, "even")
    assert cost["space_elements"] == 2 ** 41
    assert cost["space_human"] == "32 TiB"
    assert pepsim.estimate_cost(9, 9, 40, "odd")["space_elements"] == 2 ** 50 + 2 ** 45
    with pytest.raises(pepsim.BudgetExceeded):
        pepsim.plan_contraction(8, 8, 40, budget_bytes=2 ** 30)
    assert pepsim.parse_byte_size("8GiB") == 8 * 2 ** 30


def test_statistics_and_sampling():
    c = pepsim.generate_rqc(3, 3, 16, seed=5)
    probs = [abs(a) ** 2 for a in pepsim.simulate_statevector(c)]
    report = pepsim.porter_thomas_report(probs, 512)
    assert 0 <= report["ks_distance"] < 1
    assert report["histogram_csv"].startswith("x,empirical_log_density")
    shots = pepsim.sample_measure_all(pepsim.evolve(c), 20, seed=3)
    assert len(shots) == 20 and all(len(s) == 9 for s in shots)
    assert shots == pepsim.sample_measure_all(pepsim.evolve(c), 20, seed=3)
