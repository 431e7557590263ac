// Copyright 2026 The clawe-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

#include "clawe/virtual_qpu.hpp"

// Bootstrap resampling of shot records.
//
// Every input record is redrawn jointly on each resample, so the statistic
// may be an arbitrary function of several records (a full mitigation
// pipeline included) and correlations between calibration and target
// uncertainties propagate through it.

namespace clawe {

struct BootstrapResult {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;   // 2.5th percentile
    double ci_high = 0.0;  // 97.5th percentile
    int n_resamples = 0;
    // Fraction of resamples on which the statistic failed (threw) and was
    // dropped; 0 for well-behaved pipelines.
    double drop_rate = 0.0;
};

/// Multinomial redraw of n_shots outcomes from the record's empirical
/// distribution.
ShotRecord resample_record(const ShotRecord& rec, std::mt19937_64& rng);

/// Resample a single record and summarize the statistic's distribution.
BootstrapResult bootstrap(const ShotRecord& rec,
                          const std::function<double(const ShotRecord&)>& statistic,
                          int n_resamples, std::uint64_t rng_seed);

/// Joint resampling: each resample redraws every record and reruns the
/// pipeline; failing resamples are dropped and counted.
BootstrapResult propagate_through_mitigation(
    const std::vector<ShotRecord>& records,
    const std::function<double(const std::vector<ShotRecord>&)>& pipeline, int n_resamples,
    std::uint64_t rng_seed);

}  // namespace clawe
