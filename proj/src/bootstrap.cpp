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

#include "clawe/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clawe {

ShotRecord resample_record(const ShotRecord& rec, std::mt19937_64& rng) {
    if (rec.n_shots < 1 || rec.counts.empty()) {
        throw std::invalid_argument("resample_record: empty record");
    }
    // Sequential conditional binomials over the (few) distinct outcomes;
    // equivalent to drawing n_shots times with replacement.
    ShotRecord out;
    out.n_shots = rec.n_shots;
    long long remaining_draws = rec.n_shots;
    long long remaining_weight = rec.n_shots;
    for (const auto& [bits, count] : rec.counts) {
        if (remaining_draws == 0) {
            break;
        }
        long long drawn;
        if (count >= remaining_weight) {
            drawn = remaining_draws;
        } else {
            const double p = static_cast<double>(count) / static_cast<double>(remaining_weight);
            std::binomial_distribution<long long> binom(remaining_draws, p);
            drawn = binom(rng);
        }
        if (drawn > 0) {
            out.counts[bits] = drawn;
        }
        remaining_draws -= drawn;
        remaining_weight -= count;
    }
    return out;
}

namespace {

double percentile(std::vector<double>& sorted, double p) {
    const double h = (sorted.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

BootstrapResult propagate_through_mitigation(
    const std::vector<ShotRecord>& records,
    const std::function<double(const std::vector<ShotRecord>&)>& pipeline, int n_resamples,
    std::uint64_t rng_seed) {
    if (n_resamples < 2) {
        throw std::invalid_argument("bootstrap: need at least 2 resamples");
    }
    if (records.empty()) {
        throw std::invalid_argument("bootstrap: no records");
    }
    for (const ShotRecord& rec : records) {
        if (rec.n_shots < 1) {
            throw std::invalid_argument("bootstrap: empty record");
        }
    }
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(n_resamples));
    int dropped = 0;
    std::vector<ShotRecord> redrawn(records.size());
    for (int r = 0; r < n_resamples; ++r) {
        const std::uint64_t resample_seed = linalg::derive_seed(rng_seed, r);
        for (std::size_t j = 0; j < records.size(); ++j) {
            std::mt19937_64 rng(linalg::derive_seed(resample_seed, j));
            redrawn[j] = resample_record(records[j], rng);
        }
        try {
            const double value = pipeline(redrawn);
            if (!std::isfinite(value)) {
                throw std::domain_error("non-finite statistic");
            }
            stats.push_back(value);
        } catch (const std::exception&) {
            ++dropped;
        }
    }
    if (stats.empty()) {
        throw std::runtime_error("bootstrap: every resample failed");
    }
    double mean = 0.0;
    for (double v : stats) mean += v;
    mean /= static_cast<double>(stats.size());
    double var = 0.0;
    for (double v : stats) var += (v - mean) * (v - mean);
    const double std_error =
        stats.size() > 1 ? std::sqrt(var / static_cast<double>(stats.size() - 1)) : 0.0;

    std::sort(stats.begin(), stats.end());
    BootstrapResult result;
    result.mean = mean;
    result.std_error = std_error;
    result.ci_low = percentile(stats, 0.025);
    result.ci_high = percentile(stats, 0.975);
    result.n_resamples = n_resamples;
    result.drop_rate = static_cast<double>(dropped) / static_cast<double>(n_resamples);
    return result;
}

BootstrapResult bootstrap(const ShotRecord& rec,
                          const std::function<double(const ShotRecord&)>& statistic,
                          int n_resamples, std::uint64_t rng_seed) {
    return propagate_through_mitigation(
        {rec}, [&statistic](const std::vector<ShotRecord>& rs) { return statistic(rs[0]); },
        n_resamples, rng_seed);
}

}  // namespace clawe
