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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "latte/model.hpp"

namespace latte {

enum class EventOrder {
    Position,     // views by (row, column, id)
    Declaration,  // views in the order the activity declares them
};

std::string_view to_string(EventOrder order);
std::optional<EventOrder> parse_event_order(std::string_view text);

struct BuildConfig {
    double omega = 0.5;
    double similarity_threshold = 0.8;
    std::optional<std::uint64_t> max_events;
    std::chrono::duration<double> max_wall_time = std::chrono::hours(3);
    EventOrder event_order = EventOrder::Position;
    /// With statuses off every view is recorded with an empty status map.
    bool model_statuses = true;
    /// With the stack off every state carries an empty stack.
    bool model_stack = true;
};

/// Throws std::invalid_argument when omega or the threshold leave [0, 1].
void check_config(const BuildConfig& cfg);

struct BuildReport {
    LatteModel model;
    std::uint64_t events_fired = 0;
    /// Newcomers folded into a similar but not identical state.
    std::uint64_t states_merged = 0;
    std::chrono::duration<double> wall_time{};
    bool truncated = false;
};

/// Projects an observation onto a model state under the configured toggles.
ModelState abstract_state(const Observation& obs, const BuildConfig& cfg);

/// Candidate events of an observation in the configured order.
std::vector<Event> ordered_events(const AppSpec& spec, const Observation& obs, EventOrder order);

BuildReport build_model(const AppSpec& spec, const BuildConfig& cfg = {});

class StateCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive BFS over exact runtime states, no merging. The result is the
/// quotient by (activity, views, stack): each abstract state gets the union of
/// the transitions of every runtime state projecting onto it. Runtime states
/// deeper than `depth_bound` are not expanded. Throws StateCapExceeded when more
/// than `state_cap` runtime states are discovered.
LatteModel brute_force_model(const AppSpec& spec, std::size_t depth_bound, std::size_t state_cap = 100000);

/// Summary without wall time, so identical runs serialize identically.
std::string report_json(const BuildReport& report);

}  // namespace latte
