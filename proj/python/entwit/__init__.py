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

"""Witnessed entanglement measures (robustness, best separable approximation
and the general E_{m:n} family) backed by the C++ core."""

from ._entwit import (
    DensityMatrix,
    MeasureResult,
    OracleConfig,
    OracleResult,
    Partition,
    PartitionError,
    SolverConfig,
    SolverError,
    StateError,
    TheoremReport,
    bsa,
    compute_e_mn,
    enumerate_partitions,
    ghz,
    lemma1_check,
    maximal_partitions,
    min_over_k_separable,
    negativity,
    partial_trace,
    random_density,
    random_pure,
    robustness,
    w_state,
    wghz_family,
    witness_support_form_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
