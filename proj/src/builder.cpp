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

#include "latte/builder.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "json_util.hpp"

namespace latte {

std::string_view to_string(EventOrder order) {
    return order == EventOrder::Position ? "position" : "declaration";
}

std::optional<EventOrder> parse_event_order(std::string_view text) {
    if (text == "position") return EventOrder::Position;
    if (text == "declaration") return EventOrder::Declaration;
    return std::nullopt;
}

void check_config(const BuildConfig& cfg) {
    if (!(cfg.omega >= 0.0 && cfg.omega <= 1.0)) throw std::invalid_argument("omega must lie in [0, 1]");
    if (!(cfg.similarity_threshold >= 0.0 && cfg.similarity_threshold <= 1.0)) {
        throw std::invalid_argument("similarity threshold must lie in [0, 1]");
    }
    if (cfg.max_wall_time.count() < 0) throw std::invalid_argument("wall-time bound must be non-negative");
}

ModelState abstract_state(const Observation& obs, const BuildConfig& cfg) {
    ModelState s;
    s.activity = obs.activity;
    s.views = obs.views;
    if (!cfg.model_statuses) {
        for (auto& v : s.views) v.status = {};
    }
    if (cfg.model_stack) s.stack = obs.stack;
    return s;
}

std::vector<Event> ordered_events(const AppSpec& spec, const Observation& obs, EventOrder order) {
    std::vector<Event> events = obs.events;
    if (order == EventOrder::Declaration) {
        const auto& act = spec.activity(obs.activity);
        auto rank = [&](const Event& e) -> std::size_t {
            if (e.is_global()) return act.views.size();
            for (std::size_t i = 0; i < act.views.size(); ++i) {
                if (act.views[i].id == e.view) return i;
            }
            return act.views.size();
        };
        std::stable_sort(events.begin(), events.end(),
                         [&](const Event& a, const Event& b) { return rank(a) < rank(b); });
    }
    return events;
}

BuildReport build_model(const AppSpec& spec, const BuildConfig& cfg) {
    check_config(cfg);
    using clock = std::chrono::steady_clock;
    const auto began = clock::now();

    BuildReport report;
    const auto first = observe(start(spec));
    report.model = LatteModel(abstract_state(first, cfg), spec.label_universe());
    auto& model = report.model;

    // Pending events per enqueued state, captured when the state was created.
    std::map<StateId, std::vector<Event>> pending;
    std::map<StateId, std::size_t> next_event;
    pending[model.s0()] = ordered_events(spec, first, cfg.event_order);
    std::deque<StateId> queue{model.s0()};

    while (!queue.empty()) {
        const StateId head = queue.front();
        auto& cursor = next_event[head];
        if (cursor >= pending[head].size()) {
            queue.pop_front();
            continue;
        }
        const auto& access = model.state(head).access_seq;
        const std::uint64_t cost = access.size() + 1;
        if ((cfg.max_events && report.events_fired + cost > *cfg.max_events) ||
            clock::now() - began >= cfg.max_wall_time) {
            report.truncated = true;
            break;
        }

        const Event event = pending[head][cursor++];
        EventSequence seq = access;
        seq.push_back(event);
        auto run = replay(spec, access);
        if (!run.feasible()) throw std::logic_error("access sequence of s" + std::to_string(head) + " no longer replays");
        auto fired = fire(run.final_state, event);
        report.events_fired += cost;

        Transition t{head, event, fired.emitted, model.q()};
        if (fired.next.terminated) {
            model.add_transition(t);
            continue;
        }
        const auto obs = observe(fired.next);
        ModelState candidate = abstract_state(obs, cfg);
        candidate.access_seq = std::move(seq);

        if (auto same = model.find_identical(candidate)) {
            t.dest = *same;
            model.add_transition(t);
            continue;
        }
        const auto best = find_most_similar(model, candidate, cfg.omega);
        if (best && best->similarity > cfg.similarity_threshold) {
            merge_into(model, best->id, candidate, t);
            ++report.states_merged;
            continue;
        }
        t.dest = model.add_state(std::move(candidate));
        model.add_transition(t);
        pending[t.dest] = ordered_events(spec, obs, cfg.event_order);
        queue.push_back(t.dest);
    }
    report.wall_time = clock::now() - began;
    return report;
}

namespace {

using RuntimeKey = std::pair<BackStack, std::map<ActivityInstanceRef, ViewStatuses>>;

}  // namespace

LatteModel brute_force_model(const AppSpec& spec, std::size_t depth_bound, std::size_t state_cap) {
    const BuildConfig full;
    struct Node {
        RuntimeState state;
        EventSequence path;
        StateId abstract = -1;
    };

    const auto initial = start(spec);
    LatteModel model(abstract_state(observe(initial), full), spec.label_universe());

    std::map<RuntimeKey, std::size_t> seen;
    std::vector<Node> nodes;
    auto intern = [&](RuntimeState s, EventSequence path) -> StateId {
        RuntimeKey key{s.stack, s.statuses};
        if (auto it = seen.find(key); it != seen.end()) return nodes[it->second].abstract;
        if (nodes.size() >= state_cap) {
            throw StateCapExceeded("more than " + std::to_string(state_cap) + " reachable runtime states");
        }
        ModelState abs = abstract_state(observe(s), full);
        StateId id;
        if (auto same = model.find_identical(abs)) {
            id = *same;
        } else {
            abs.access_seq = path;
            id = model.add_state(std::move(abs));
        }
        seen.emplace(std::move(key), nodes.size());
        nodes.push_back({std::move(s), std::move(path), id});
        return id;
    };

    intern(initial, {});
    std::set<Transition> transitions;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].path.size() >= depth_bound) continue;
        const auto obs = observe(nodes[i].state);
        for (const auto& e : obs.events) {
            auto fired = fire(nodes[i].state, e);
            Transition t{nodes[i].abstract, e, fired.emitted, model.q()};
            if (!fired.next.terminated) {
                auto path = nodes[i].path;
                path.push_back(e);
                t.dest = intern(std::move(fired.next), std::move(path));
            }
            transitions.insert(std::move(t));
        }
    }
    for (const auto& t : transitions) model.add_transition(t);
    return model;
}

std::string report_json(const BuildReport& report) {
    const auto& m = report.model;
    detail::json doc;
    doc["states"] = m.app_state_count();
    doc["transitions"] = m.transitions().size();
    doc["events_fired"] = report.events_fired;
    doc["states_merged"] = report.states_merged;
    doc["truncated"] = report.truncated;
    doc["labels_covered"] = detail::string_array(m.covered_labels());
    doc["label_universe"] = detail::string_array(m.label_universe());
    return doc.dump(2) + "\n";
}

}  // namespace latte
