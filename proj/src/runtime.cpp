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

#include "latte/runtime.hpp"

#include <algorithm>
#include <sstream>

namespace latte {

std::string format_event(const Event& e) {
    std::string out = e.view + ":" + std::string(to_string(e.kind));
    if (takes_payload(e.kind)) out += "(" + std::to_string(e.payload) + ")";
    return out;
}

bool Observation::applicable(const Event& e) const {
    return e.activity == activity && std::find(events.begin(), events.end(), e) != events.end();
}

namespace {

ViewStatuses initial_statuses(const ActivityDef& act) {
    ViewStatuses out;
    for (const auto& v : act.views) out.emplace(v.id, v.initial_status);
    return out;
}

bool holds(const Predicate& pred, const ViewStatuses& statuses) {
    for (const auto& c : pred) {
        auto it = statuses.find(c.view);
        if (it == statuses.end() || it->second.get(c.attribute) != c.equals) return false;
    }
    return true;
}

// Drops status storage for instances no longer on the stack.
void prune_statuses(RuntimeState& s) {
    std::erase_if(s.statuses, [&](const auto& kv) {
        return std::find(s.stack.entries.begin(), s.stack.entries.end(), kv.first) == s.stack.entries.end();
    });
}

void terminate(RuntimeState& s) {
    s.stack.entries.clear();
    s.statuses.clear();
    s.terminated = true;
}

const EventHandler* match_handler(const ActivityDef& act, const ViewStatuses& statuses, const Event& e) {
    const EventHandler* found = nullptr;
    for (const auto& h : act.handlers) {
        if (h.on.view != e.view || h.on.event != e.kind) continue;
        if (h.on.payload && *h.on.payload != e.payload) continue;
        if (!holds(h.on.guard, statuses)) continue;
        if (found) throw std::logic_error("ambiguous handlers for " + format_event(e) + " in " + act.id);
        found = &h;
    }
    return found;
}

}  // namespace

RuntimeState start(const AppSpec& spec) {
    RuntimeState s;
    s.spec = &spec;
    const auto& entry = spec.activity(spec.entry_activity);
    s.stack.entries.push_back({entry.id, 1});
    s.statuses.emplace(s.stack.top(), initial_statuses(entry));
    return s;
}

Observation observe(const RuntimeState& state) {
    if (state.terminated) throw std::logic_error("observe on a terminated app");
    const auto& spec = *state.spec;
    const auto& top = state.stack.top();
    const auto& act = spec.activity(top.activity);
    const auto& statuses = state.statuses.at(top);

    Observation obs;
    obs.activity = act.id;
    obs.stack = state.stack.activity_ids();

    std::vector<const ViewDef*> visible;
    for (const auto& v : act.views) {
        if (!holds(v.visible_if, statuses)) continue;
        visible.push_back(&v);
        obs.views.push_back({v.id, v.view_type, v.position, statuses.at(v.id)});
    }
    std::sort(obs.views.begin(), obs.views.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    std::stable_sort(visible.begin(), visible.end(), [](const ViewDef* a, const ViewDef* b) {
        return std::tie(a->position, a->id) < std::tie(b->position, b->id);
    });
    for (const ViewDef* v : visible) {
        if (!statuses.at(v->id).is_enabled()) continue;
        for (const auto& action : events_for_view(*v, spec.text_palette)) {
            obs.events.push_back({act.id, v->id, action.kind, action.payload});
        }
    }
    for (auto kind : {EventKind::Back, EventKind::Rotate}) {
        if (spec.global_enabled(kind)) obs.events.push_back({act.id, std::string(kGlobal), kind, 0});
    }
    return obs;
}

FireResult fire(const RuntimeState& state, const Event& event) {
    if (state.terminated) throw InapplicableEvent("app has terminated; cannot fire " + format_event(event));
    if (!observe(state).applicable(event)) {
        throw InapplicableEvent(format_event(event) + " is not applicable in " + state.focused_activity());
    }
    const auto& spec = *state.spec;
    const auto& act = spec.activity(state.focused_activity());
    const EventHandler* handler = match_handler(act, state.statuses.at(state.stack.top()), event);

    FireResult result;
    RuntimeState& next = result.next;
    next = state;

    if (event.kind == EventKind::Back) {
        result.stack_calls.push_back({StackCall::Kind::Back, {}});
        next.stack = pop_back(next.stack);
        prune_statuses(next);
        if (next.stack.empty()) terminate(next);
    }
    if (!handler) return result;

    result.emitted = handler->emits;
    for (const auto& effect : handler->effects) {
        if (next.terminated) break;
        std::visit(
            [&](const auto& eff) {
                using T = std::decay_t<decltype(eff)>;
                if constexpr (std::is_same_v<T, SetStatus>) {
                    const auto& top = next.stack.top();
                    if (eff.activity && *eff.activity != top.activity) return;
                    auto& views = next.statuses.at(top);
                    if (auto it = views.find(eff.view); it != views.end()) it->second.set(eff.attribute, eff.value);
                } else if constexpr (std::is_same_v<T, StartActivity>) {
                    const auto& target = spec.activity(eff.activity);
                    result.stack_calls.push_back({StackCall::Kind::Launch, target.id});
                    auto launched = push_for_launch(next.stack, target.id, target.launch_mode);
                    next.stack = std::move(launched.stack);
                    prune_statuses(next);
                    if (launched.started_new) {
                        next.statuses[next.stack.top()] = initial_statuses(target);
                        result.started_new_activity = true;
                    }
                } else if constexpr (std::is_same_v<T, Finish>) {
                    result.stack_calls.push_back({StackCall::Kind::Finish, {}});
                    next.stack = finish_top(next.stack);
                    prune_statuses(next);
                    if (next.stack.empty()) terminate(next);
                } else if constexpr (std::is_same_v<T, Quit>) {
                    result.stack_calls.push_back({StackCall::Kind::Quit, {}});
                    terminate(next);
                }
            },
            effect);
    }
    return result;
}

ReplayResult replay(const AppSpec& spec, const EventSequence& seq) {
    ReplayResult out;
    out.final_state = start(spec);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (out.final_state.terminated) {
            out.infeasible_at = i;
            break;
        }
        auto before = observe(out.final_state);
        if (!before.applicable(seq[i])) {
            out.infeasible_at = i;
            break;
        }
        auto fired = fire(out.final_state, seq[i]);
        out.final_state = std::move(fired.next);
        out.trace.steps.push_back({std::move(before), seq[i], std::move(fired.emitted),
                                   out.final_state.stack.activity_ids(), std::move(fired.stack_calls)});
    }
    if (!out.final_state.terminated) out.trace.final = observe(out.final_state);
    return out;
}

std::string format_trace(const Trace& trace) {
    std::ostringstream os;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        os << i << '\t' << step.before.activity << '\t' << format_event(step.event) << "\t{";
        bool first = true;
        for (const auto& l : step.emitted) {
            os << (first ? "" : ",") << l;
            first = false;
        }
        os << "}\t[";
        for (std::size_t k = 0; k < step.stack_after.size(); ++k) os << (k ? "," : "") << step.stack_after[k];
        os << "]\n";
    }
    return os.str();
}

}  // namespace latte
