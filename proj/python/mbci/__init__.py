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

"""Multi-boson correlation rates for multi-mode thermal light.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: permanents, Haar-random interferometers, the correlation-rate
formulations and the Monte-Carlo phase-space oracle.
"""

from ._core import (  # noqa: F401
    CorrelationResult,
    DetectionEvent,
    DimensionError,
    EqualRateIdentityReport,
    FrequencyGrid,
    McEstimate,
    SizeLimitError,
    SourceBank,
    SourceConfiguration,
    ThermalInstance,
    ValidationError,
    __version__,
    build_a_matrix,
    build_c_matrix,
    build_chi_matrix,
    build_interference_matrix,
    build_repeated_column_matrix,
    chi_function,
    count_configurations,
    enumerate_configurations,
    estimate_gn,
    evaluate,
    field_at_detector,
    g1,
    gn_configuration_sum,
    gn_equal_times,
    gn_equal_times_incoherent,
    gn_on_grid,
    gn_permanent_c,
    gn_permutation_sum,
    gn_uncorrelated_limit,
    is_positive_semidefinite,
    permanent_naive,
    permanent_ryser,
    random_unitary,
    sample_amplitudes,
    sampled_submatrix,
    unitarity_residual,
    verify_equal_rate_identities,
)

__all__ = [name for name in dir() if not name.startswith("_")]
