# Copyright 2026 The mbci authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the compiled python module."""

import math

import numpy as np
import pytest

import mbci


def hbt_instance(tau=0.0, rate=1.0):
    unitary = mbci.random_unitary(2, preset="balanced-beamsplitter")
    sources = mbci.SourceBank(rates=[rate, 0.0])
    event = mbci.DetectionEvent(ports=[1, 2], times=[0.0, tau])
    return mbci.ThermalInstance(unitary, sources, event)


def test_permanent_kernels_agree():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    slow = mbci.permanent_naive(m)
    fast = mbci.permanent_ryser(m)
    assert abs(fast - slow) <= 1e-10 * max(1.0, abs(slow))


def test_permanent_of_ones_is_factorial():
    assert mbci.permanent_ryser(np.ones((5, 5), dtype=complex)) == pytest.approx(120.0)


def test_permanent_guards():
    with pytest.raises(ValueError):
        mbci.permanent_naive(np.ones((11, 11), dtype=complex))
    with pytest.raises(ValueError):
        mbci.permanent_ryser(np.ones((2, 3), dtype=complex))


def test_random_unitary_is_unitary_and_seeded():
    u = mbci.random_unitary(6, seed=42)
    assert np.max(np.abs(u @ u.conj().T - np.eye(6))) < 1e-12
    assert np.array_equal(u, mbci.random_unitary(6, seed=42))
    assert not np.array_equal(u, mbci.random_unitary(6, seed=43))


def test_hbt_bunching():
    inst = hbt_instance()
    result = mbci.gn_permanent_c(inst)
    assert result.value == pytest.approx(0.5, abs=1e-12)
    denom = mbci.g1(inst, 1, 1).real * mbci.g1(inst, 2, 2).real
    assert result.value / denom == pytest.approx(2.0, abs=1e-12)


def test_formulations_cross_check():
    unitary = mbci.random_unitary(4, seed=7)
    sources = mbci.SourceBank(rates=[0.4, 1.1, 0.0, 0.9])
    event = mbci.DetectionEvent(ports=[2, 4, 1], times=[0.0, 0.5, -0.3])
    inst = mbci.ThermalInstance(unitary, sources, event)
    values = [
        mbci.gn_permutation_sum(inst).value,
        mbci.gn_permanent_c(inst).value,
        mbci.gn_configuration_sum(inst).value,
        mbci.evaluate(inst, "config-sum").value,
    ]
    for v in values[1:]:
        assert v == pytest.approx(values[0], rel=1e-9, abs=1e-12)


def test_matrices_are_psd():
    unitary = mbci.random_unitary(3, seed=9)
    sources = mbci.SourceBank(rates=[1.0, 0.5, 0.25])
    event = mbci.DetectionEvent(ports=[1, 3], times=[0.0, 0.7])
    inst = mbci.ThermalInstance(unitary, sources, event)
    for matrix in (mbci.build_chi_matrix(event, sources), mbci.build_a_matrix(inst), mbci.build_c_matrix(inst)):
        assert mbci.is_positive_semidefinite(matrix, 1e-9)
        assert np.min(np.linalg.eigvalsh(matrix)) > -1e-9  # independent numpy route


def test_configuration_enumeration():
    configs = mbci.enumerate_configurations(2, 2)
    assert [c.labels for c in configs] == [[1, 1], [1, 2], [2, 2]]
    assert [c.weight for c in configs] == [0.5, 1.0, 0.5]
    assert mbci.count_configurations(4, 3) == 20
    with pytest.raises(ValueError):
        mbci.count_configurations(100, 10)


def test_equal_rate_identities():
    report = mbci.verify_equal_rate_identities(mbci.random_unitary(4, seed=3), [1, 2, 4], tol=1e-10)
    assert report.pass_
    assert report.max_dev <= 1e-10


def test_chi_function():
    sources = mbci.SourceBank(rates=[1.0])
    assert mbci.chi_function(0.0, sources) == 1.0
    expected = math.exp(-0.5) * complex(math.cos(10.0), -math.sin(10.0))
    assert mbci.chi_function(1.0, sources) == pytest.approx(expected, abs=1e-15)


def test_mc_estimate_matches_grid_value():
    inst = hbt_instance()
    grid = mbci.FrequencyGrid(inst.sources)
    assert 0.995 <= grid.normalization <= 1.0
    est = mbci.estimate_gn(inst, grid, 100000, seed=5)
    analytic = mbci.gn_on_grid(inst, grid)
    assert abs(est.mean - analytic) < 3.0 * est.std_error
    again = mbci.estimate_gn(inst, grid, 100000, seed=5)
    assert est.mean == again.mean and est.std_error == again.std_error


def test_sampling_shapes():
    sources = mbci.SourceBank(rates=[0.0, 1.0])
    grid = mbci.FrequencyGrid(sources, n_bins=16)
    alpha = mbci.sample_amplitudes(sources, grid, seed=11)
    assert alpha.shape == (2, 16)
    assert np.all(alpha[0] == 0)  # zero-rate source
    inst = mbci.ThermalInstance(np.eye(2, dtype=complex), sources, mbci.DetectionEvent(ports=[2], times=[0.0]))
    field = mbci.field_at_detector(alpha, inst, grid, port=2, t=0.25)
    manual = 1j * np.sum(alpha[1] * np.exp(-1j * np.array([grid.center(j) for j in range(16)]) * 0.25))
    assert field == pytest.approx(manual, abs=1e-12)


def test_validation_errors():
    with pytest.raises(ValueError):
        mbci.SourceBank(rates=[-1.0])
    with pytest.raises(ValueError):
        mbci.ThermalInstance(
            np.ones((2, 2), dtype=complex),
            mbci.SourceBank(rates=[1.0, 1.0]),
            mbci.DetectionEvent(ports=[1], times=[0.0]),
        )
