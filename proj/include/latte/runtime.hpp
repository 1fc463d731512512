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
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "latte/app_spec.hpp"
#include "latte/back_stack.hpp"

namespace latte {

/// A concrete event: what to do, on which view, in which activity.
/// Global events use kGlobal as the view id.
struct Event {
    std::string activity;
    std::string view;
    EventKind kind = EventKind::Click;
    std::int64_t payload = 0;

    bool is_global() const { return view == kGlobal; }
    auto operator<=>(const Event&) const = default;
};

using EventSequence = std::vector<Event>;

/// "view:Kind" or "view:Kind(payload)".
std::string format_event(const Event& e);

using ViewStatuses = std::map<std::string, StatusMap>;

/// Live simulator state. Holds a non-owning pointer to the spec, which must
/// outlive every state derived from it.
struct RuntimeState {
    const AppSpec* spec = nullptr;
    BackStack stack;
    std::map<ActivityInstanceRef, ViewStatuses> statuses;
    bool terminated = false;

    const std::string& focused_activity() const { return stack.top().activity; }

    bool operator==(const RuntimeState& o) const {
        return stack == o.stack && statuses == o.statuses && terminated == o.terminated;
    }
};

struct ObservedView {
    std::string id;
    ViewType view_type = ViewType::Button;
    Position position;
    StatusMap status;
    auto operator<=>(const ObservedView&) const = default;
};

/// What GUI ripping sees on the focused activity. `views` is sorted by id;
/// `events` is in canonical exploration order: views by (position, id),
/// kinds in EventKind order, globals last.
struct Observation {
    std::string activity;
    std::vector<ObservedView> views;
    std::vector<std::string> stack;
    std::vector<Event> events;

    bool applicable(const Event& e) const;
    bool operator==(const Observation&) const = default;
};

/// Stack-affecting calls made while firing an event, in order. Folding these
/// through the back_stack functions reproduces the runtime's stack.
struct StackCall {
    enum class Kind { Launch, Finish, Back, Quit };
    Kind kind = Kind::Launch;
    std::string activity;  // Launch only
    bool operator==(const StackCall&) const = default;
};

struct FireResult {
    RuntimeState next;
    std::set<std::string> emitted;
    bool started_new_activity = false;
    std::vector<StackCall> stack_calls;
};

class InapplicableEvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RuntimeState start(const AppSpec& spec);

/// Throws std::logic_error on a terminated state.
Observation observe(const RuntimeState& state);

/// Fires one event. Throws InapplicableEvent when the event is not offered by
/// observe(state). Unhandled events leave the state unchanged.
FireResult fire(const RuntimeState& state, const Event& event);

struct TraceStep {
    Observation before;
    Event event;
    std::set<std::string> emitted;
    std::vector<std::string> stack_after;
    std::vector<StackCall> stack_calls;
};

struct Trace {
    std::vector<TraceStep> steps;
    /// Observation after the last step; empty when the app terminated.
    std::optional<Observation> final;
};

struct ReplayResult {
    Trace trace;
    std::optional<std::size_t> infeasible_at;
    RuntimeState final_state;

    bool feasible() const { return !infeasible_at.has_value(); }
};

/// Starts fresh and fires `seq` in order, stopping at the first event that is
/// not applicable.
ReplayResult replay(const AppSpec& spec, const EventSequence& seq);

/// One tab-separated record per step: index, activity, event, labels, stack.
std::string format_trace(const Trace& trace);

}  // namespace latte
