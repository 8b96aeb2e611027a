# SPDX-License-Identifier: Apache-2.0
#
# risest: training and reflection-pattern design for non-ideal RIS channel estimation
# Copyright (C) 2026 The risest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""RIS channel estimation: training and reflection pattern design."""

from ._core import (
    ConfigError,
    Error,
    SingularGram,
    amplitude_of_phase,
    build_S,
    cascaded_correlation,
    design,
    design_ls,
    dft_training,
    ls_objective,
    mse_lmmse,
    mse_ls,
    naive_pattern,
    noise_variance,
    onoff_pattern,
    reflection_coefficient,
    run_sweep,
    run_validation,
)

__all__ = [
    "ConfigError",
    "Error",
    "SingularGram",
    "amplitude_of_phase",
    "build_S",
    "cascaded_correlation",
    "design",
    "design_ls",
    "dft_training",
    "ls_objective",
    "mse_lmmse",
    "mse_ls",
    "naive_pattern",
    "noise_variance",
    "onoff_pattern",
    "reflection_coefficient",
    "run_sweep",
    "run_validation",
]
