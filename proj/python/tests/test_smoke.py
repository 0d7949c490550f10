# Copyright 2026 The entwit Authors
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

import math

import numpy as np
import pytest

import entwit


def test_partitions():
    parts = entwit.enumerate_partitions(3, 2)
    assert len(parts) == 4  # S(3,2) + S(3,3)
    assert len(entwit.maximal_partitions(3, 2)) == 3
    with pytest.raises(ValueError):
        entwit.Partition.parse("1|1")


def test_density_matrix_roundtrip():
    rho = entwit.ghz(2)
    assert rho.dims == [2, 2]
    op = rho.op
    assert op.shape == (4, 4)
    assert np.allclose(op, op.conj().T)
    assert math.isclose(np.trace(op).real, 1.0)
    assert rho.rank() == 1
    again = entwit.DensityMatrix([2, 2], op)
    assert math.isclose(again.purity(), 1.0)
    with pytest.raises(ValueError):
        entwit.DensityMatrix([2, 2], np.eye(3))


def test_bell_robustness():
    r = entwit.robustness(entwit.ghz(2), 1)
    assert r.measure == "robustness"
    assert r.lower is None and r.upper == 1.0
    assert r.value == pytest.approx(1.0, abs=1e-5)
    assert r.converged
    w = r.witness
    assert np.allclose(w, w.conj().T)
    assert np.trace(w @ entwit.ghz(2).op).real == pytest.approx(-r.value, abs=1e-8)


def test_bsa_and_released_bounds():
    assert entwit.bsa(entwit.w_state(3), 1).value == pytest.approx(1.0, abs=1e-5)
    r = entwit.compute_e_mn(entwit.ghz(2), 1, 0.01, 1.0)
    assert r.value == pytest.approx(0.01, rel=1e-3)
    with pytest.raises(ValueError):
        entwit.compute_e_mn(entwit.ghz(2), 1, None, None)


def test_maximally_mixed_is_separable():
    rho = entwit.DensityMatrix.maximally_mixed([2, 2])
    assert entwit.robustness(rho, 1).value == pytest.approx(0.0, abs=1e-6)


def test_lemma_report():
    rep = entwit.lemma1_check(entwit.random_density([2, 2], 2, 5), 1)
    assert rep.has_verdict
    assert rep.passed
    assert "lhs" in rep.artifacts
