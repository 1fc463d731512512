/*
 * Copyright (C) 2026 The latte Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latte/builder.hpp"
#include "latte/target.hpp"

namespace latte {

struct RandomConfig {
    std::uint64_t seed = 1;
    std::uint64_t batch = 1000;
    std::uint64_t max_batches = 100;
};

struct CoverageReport {
    std::set<std::string> labels_covered;
    std::size_t labels_total = 0;
    /// Distinct (activity, views, stack) states and (state, event, state) moves seen.
    std::size_t states_visited = 0;
    std::size_t transitions_visited = 0;
    std::uint64_t events_fired = 0;
    std::uint64_t restarts = 0;
};

struct RandomResult {
    /// First batch boundary at which every target label had been emitted.
    std::optional<std::uint64_t> events_to_cover;
    CoverageReport coverage;
};

/// Uniform index in [0, n) drawn by rejection, so results do not depend on the
/// standard library's distribution implementation.
/// `gen` must produce the full 64-bit range, like std::mt19937_64.
template <typename Generator>
std::uint64_t uniform_index(Generator& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

/// Seeded random walk over applicable events. The app is restarted for free
/// whenever it terminates. Throws UnknownLabel for labels the spec never declares.
RandomResult random_explore(const AppSpec& spec, const Target& target, const RandomConfig& cfg);

std::string random_json(const AppSpec& spec, const Target& target, const RandomConfig& cfg,
                        const RandomResult& result);

struct SweepRow {
    double threshold = 0.0;
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t labels_covered = 0;
    std::size_t labels_total = 0;
    std::uint64_t events_fired = 0;
    double wall_ms = 0.0;
    bool truncated = false;
};

/// One build per threshold; every other setting comes from `base`.
std::vector<SweepRow> st_sweep(const AppSpec& spec, const std::vector<double>& thresholds,
                               const BuildConfig& base = {});

/// Wall time is included only when `timing` is set.
std::string sweep_json(const std::vector<SweepRow>& rows, bool timing);
std::string sweep_table(const std::vector<SweepRow>& rows, bool timing);

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> events_to_cover;
};

struct ComparisonReport {
    std::string app;
    std::set<std::string> target;
    std::uint64_t build_events = 0;
    std::size_t model_states = 0;
    std::size_t model_transitions = 0;
    std::size_t suite_sequences = 0;
    std::size_t suite_length = 0;
    bool targeted_covered = false;
    std::uint64_t batch = 0;
    std::uint64_t max_batches = 0;
    std::vector<SeedOutcome> random;
};

std::vector<std::uint64_t> default_seeds();

ComparisonReport compare(const AppSpec& spec, const Target& target, const BuildConfig& build,
                         const RandomConfig& random, const std::vector<std::uint64_t>& seeds, int maxtry = 5);

std::string comparison_json(const ComparisonReport& report);
/// Rows per seed: random events to cover next to "build events/suite length".
std::string comparison_table(const ComparisonReport& report);

}  // namespace latte
