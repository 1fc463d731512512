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

#include "latte/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"

namespace latte {

using detail::json;

std::string_view to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Ordinary: return "ordinary";
        case StateKind::Entry: return "entry";
        case StateKind::Terminal: return "terminal";
    }
    return "?";
}

LatteModel::LatteModel(ModelState entry, std::set<std::string> label_universe) : labels_(std::move(label_universe)) {
    entry.id = 0;
    entry.kind = StateKind::Entry;
    entry.access_seq.clear();
    states_.push_back(std::move(entry));
    ModelState terminal;
    terminal.id = 1;
    terminal.kind = StateKind::Terminal;
    states_.push_back(std::move(terminal));
}

StateId LatteModel::add_state(ModelState s) {
    if (find_identical(s)) throw std::invalid_argument("state with identical content already in model");
    s.id = static_cast<StateId>(states_.size());
    s.kind = StateKind::Ordinary;
    states_.push_back(std::move(s));
    return states_.back().id;
}

bool LatteModel::add_transition(const Transition& t) {
    const auto n = static_cast<StateId>(states_.size());
    if (t.src < 0 || t.src >= n || t.dest < 0 || t.dest >= n) {
        throw std::out_of_range("transition endpoint does not resolve");
    }
    if (std::find(transitions_.begin(), transitions_.end(), t) != transitions_.end()) return false;
    transitions_.push_back(t);
    return true;
}

std::optional<StateId> LatteModel::find_identical(const ModelState& s) const {
    for (const auto& existing : states_) {
        if (existing.is_app_state() && existing.same_content(s)) return existing.id;
    }
    return std::nullopt;
}

std::set<std::string> LatteModel::covered_labels() const {
    std::set<std::string> out;
    for (const auto& t : transitions_) out.insert(t.labels.begin(), t.labels.end());
    return out;
}

std::string LatteModel::check_invariants() const {
    if (states_.size() < 2) return "model lacks s0 or q";
    if (states_[0].kind != StateKind::Entry) return "state 0 is not the entry state";
    if (!states_[0].access_seq.empty()) return "entry state has a non-empty access sequence";
    const auto& term = states_[1];
    if (term.kind != StateKind::Terminal || !term.views.empty() || !term.stack.empty()) {
        return "state 1 is not an empty terminal state";
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const auto& s = states_[i];
        if (s.id != static_cast<StateId>(i)) return "state ids are not dense";
        if (i >= 2 && s.kind != StateKind::Ordinary) return "unexpected state kind at s" + std::to_string(i);
        if (!std::is_sorted(s.views.begin(), s.views.end(), [](const auto& a, const auto& b) { return a.id < b.id; })) {
            return "views of s" + std::to_string(i) + " are not canonical";
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (s.is_app_state() && states_[j].is_app_state() && s.same_content(states_[j])) {
                return "s" + std::to_string(j) + " and s" + std::to_string(i) + " are identical";
            }
        }
    }
    const auto n = static_cast<StateId>(states_.size());
    for (const auto& t : transitions_) {
        if (t.src < 0 || t.src >= n || t.dest < 0 || t.dest >= n) return "dangling transition endpoint";
        if (t.src == q()) return "transition leaving q";
        for (const auto& l : t.labels) {
            if (!labels_.count(l)) return "label '" + l + "' outside the label universe";
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Similarity

double view_similarity(const ModelState& a, const ModelState& b) {
    if (a.views.empty() && b.views.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& v : a.views) {
        auto it = std::lower_bound(b.views.begin(), b.views.end(), v.id,
                                   [](const ObservedView& x, const std::string& id) { return x.id < id; });
        if (it != b.views.end() && *it == v) ++common;
    }
    const auto all = a.views.size() + b.views.size() - common;
    return static_cast<double>(common) / static_cast<double>(all);
}

double stack_similarity(const ModelState& a, const ModelState& b) { return a.stack == b.stack ? 1.0 : 0.0; }

double state_similarity(const ModelState& a, const ModelState& b, double omega) {
    if (a.activity != b.activity) return 0.0;
    return omega * view_similarity(a, b) + (1.0 - omega) * stack_similarity(a, b);
}

std::optional<SimilarityMatch> find_most_similar(const LatteModel& model, const ModelState& candidate, double omega) {
    std::optional<SimilarityMatch> best;
    for (const auto& s : model.states()) {
        if (!s.is_app_state() || s.activity != candidate.activity) continue;
        const double sim = state_similarity(s, candidate, omega);
        if (!best || sim > best->similarity) best = SimilarityMatch{s.id, sim};
    }
    return best;
}

void merge_into(LatteModel& model, StateId existing, const ModelState& newcomer, Transition incoming) {
    if (model.state(existing).activity != newcomer.activity) {
        throw std::invalid_argument("merge across activities");
    }
    incoming.dest = existing;
    model.add_transition(incoming);
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string node_name(const LatteModel& m, StateId id) { return id == m.q() ? "q" : "s" + std::to_string(id); }

}  // namespace

std::string export_dot(const LatteModel& model) {
    std::ostringstream os;
    os << "digraph latte {\n  rankdir=LR;\n  node [shape=box];\n";

    // One dashed cluster per activity, in order of first appearance.
    std::vector<std::string> activities;
    for (const auto& s : model.states()) {
        if (s.is_app_state() && std::find(activities.begin(), activities.end(), s.activity) == activities.end()) {
            activities.push_back(s.activity);
        }
    }
    for (std::size_t i = 0; i < activities.size(); ++i) {
        os << "  subgraph cluster_" << i << " {\n    label=\"" << dot_escape(activities[i]) << "\";\n    style=dashed;\n";
        for (const auto& s : model.states()) {
            if (!s.is_app_state() || s.activity != activities[i]) continue;
            os << "    " << node_name(model, s.id) << " [label=\"s" << s.id << " | " << dot_escape(join(s.stack, ","))
               << "\"";
            if (s.kind == StateKind::Entry) os << ", peripheries=2";
            os << "];\n";
        }
        os << "  }\n";
    }
    os << "  q [label=\"q\", shape=doublecircle];\n";

    for (const auto& t : model.transitions()) {
        os << "  " << node_name(model, t.src) << " -> " << node_name(model, t.dest) << " [label=\""
           << dot_escape(format_event(t.event));
        if (!t.labels.empty()) {
            os << "\\n{" << dot_escape(join({t.labels.begin(), t.labels.end()}, ",")) << "}\", color=red, penwidth=2";
        } else {
            os << "\"";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_json(const LatteModel& model) {
    json doc;
    doc["format"] = "latte-model";
    doc["version"] = 1;
    doc["s0"] = model.s0();
    doc["q"] = model.q();
    doc["label_universe"] = detail::string_array(model.label_universe());
    json states = json::array();
    for (const auto& s : model.states()) {
        json views = json::array();
        for (const auto& v : s.views) {
            views.push_back({{"id", v.id},
                             {"view_type", to_string(v.view_type)},
                             {"position", {v.position.row, v.position.column}},
                             {"status", detail::status_json(v.status)}});
        }
        states.push_back({{"id", s.id},
                          {"kind", to_string(s.kind)},
                          {"activity", s.activity},
                          {"stack", detail::string_array(s.stack)},
                          {"views", views},
                          {"access_seq", detail::sequence_json(s.access_seq)}});
    }
    doc["states"] = states;
    json transitions = json::array();
    for (const auto& t : model.transitions()) {
        transitions.push_back({{"src", t.src},
                               {"event", detail::event_json(t.event)},
                               {"labels", detail::string_array(t.labels)},
                               {"dest", t.dest}});
    }
    doc["transitions"] = transitions;
    return doc.dump(2) + "\n";
}

LatteModel import_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("model JSON syntax error: ") + e.what());
    }
    try {
        if (doc.at("format") != "latte-model" || doc.at("version") != 1) {
            throw std::runtime_error("not a latte-model version 1 document");
        }
        if (doc.at("s0") != 0 || doc.at("q") != 1) throw std::runtime_error("s0 must be 0 and q must be 1");
        std::vector<ModelState> states;
        for (const auto& js : doc.at("states")) {
            ModelState s;
            s.id = js.at("id").get<StateId>();
            const auto kind = js.at("kind").get<std::string>();
            if (kind == "entry") {
                s.kind = StateKind::Entry;
            } else if (kind == "terminal") {
                s.kind = StateKind::Terminal;
            } else if (kind == "ordinary") {
                s.kind = StateKind::Ordinary;
            } else {
                throw std::runtime_error("unknown state kind '" + kind + "'");
            }
            s.activity = js.at("activity").get<std::string>();
            s.stack = js.at("stack").get<std::vector<std::string>>();
            for (const auto& jv : js.at("views")) {
                ObservedView v;
                v.id = jv.at("id").get<std::string>();
                const auto type = parse_view_type(jv.at("view_type").get<std::string>());
                if (!type) throw std::runtime_error("unknown view type");
                v.view_type = *type;
                v.position = {jv.at("position").at(0).get<int>(), jv.at("position").at(1).get<int>()};
                v.status = detail::status_from_json(jv.at("status"));
                s.views.push_back(std::move(v));
            }
            s.access_seq = detail::sequence_from_json(js.at("access_seq"));
            states.push_back(std::move(s));
        }
        if (states.size() < 2) throw std::runtime_error("model lacks s0 or q");
        LatteModel model(states[0], doc.at("label_universe").get<std::set<std::string>>());
        if (model.states()[1] != states[1]) throw std::runtime_error("state 1 must be the empty terminal state");
        for (std::size_t i = 2; i < states.size(); ++i) {
            if (states[i].kind != StateKind::Ordinary || states[i].id != static_cast<StateId>(i)) {
                throw std::runtime_error("state " + std::to_string(i) + " is malformed");
            }
            model.add_state(states[i]);
        }
        for (const auto& jt : doc.at("transitions")) {
            Transition t;
            t.src = jt.at("src").get<StateId>();
            t.event = detail::event_from_json(jt.at("event"));
            t.labels = jt.at("labels").get<std::set<std::string>>();
            t.dest = jt.at("dest").get<StateId>();
            if (!model.add_transition(t)) throw std::runtime_error("duplicate transition");
        }
        if (auto why = model.check_invariants(); !why.empty()) throw std::runtime_error(why);
        return model;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed model JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        throw std::runtime_error(std::string("malformed model JSON: ") + e.what());
    }
}

bool equivalent(const LatteModel& a, const LatteModel& b, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    if (a.states().size() != b.states().size()) {
        return fail("state counts differ: " + std::to_string(a.states().size()) + " vs " +
                    std::to_string(b.states().size()));
    }
    std::map<StateId, StateId> to_b{{a.q(), b.q()}};
    for (const auto& s : a.states()) {
        if (!s.is_app_state()) continue;
        auto match = b.find_identical(s);
        if (!match) return fail("s" + std::to_string(s.id) + " (" + s.activity + ") has no counterpart");
        to_b[s.id] = *match;
    }
    if (to_b.at(a.s0()) != b.s0()) return fail("entry states differ");
    std::set<Transition> mapped;
    for (auto t : a.transitions()) {
        t.src = to_b.at(t.src);
        t.dest = to_b.at(t.dest);
        mapped.insert(t);
    }
    const std::set<Transition> theirs(b.transitions().begin(), b.transitions().end());
    if (mapped != theirs) {
        for (const auto& t : mapped) {
            if (!theirs.count(t)) return fail("transition s" + std::to_string(t.src) + " -" + format_event(t.event) + "-> s" + std::to_string(t.dest) + " missing on the right");
        }
        for (const auto& t : theirs) {
            if (!mapped.count(t)) return fail("transition s" + std::to_string(t.src) + " -" + format_event(t.event) + "-> s" + std::to_string(t.dest) + " missing on the left");
        }
    }
    return true;
}

}  // namespace latte
