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

#include "latte/target.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "json_util.hpp"

namespace latte {

void check_target(const std::set<std::string>& label_universe, const Target& target) {
    if (target.labels.empty()) throw UnknownLabel("target names no labels");
    for (const auto& l : target.labels) {
        if (!label_universe.count(l)) throw UnknownLabel("unknown label '" + l + "'");
    }
}

void check_target(const LatteModel& model, const Target& target) { check_target(model.label_universe(), target); }

namespace {

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::any_of(a.begin(), a.end(), [&](const auto& x) { return b.count(x) > 0; });
}

std::size_t overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [&](const auto& x) { return b.count(x) > 0; }));
}

bool includes(const std::set<std::string>& haystack, const std::set<std::string>& needles) {
    return std::includes(haystack.begin(), haystack.end(), needles.begin(), needles.end());
}

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Edge count from s0 to every state.
std::vector<std::size_t> depth_from_entry(const LatteModel& model) {
    std::vector<std::size_t> depth(model.states().size(), kUnreachable);
    depth[static_cast<std::size_t>(model.s0())] = 0;
    std::deque<StateId> frontier{model.s0()};
    while (!frontier.empty()) {
        const auto s = frontier.front();
        frontier.pop_front();
        for (const auto& t : model.transitions()) {
            if (t.src != s || depth[static_cast<std::size_t>(t.dest)] != kUnreachable) continue;
            depth[static_cast<std::size_t>(t.dest)] = depth[static_cast<std::size_t>(s)] + 1;
            frontier.push_back(t.dest);
        }
    }
    return depth;
}

// Edge count from every state to `goal`.
std::vector<std::size_t> distance_to(const LatteModel& model, StateId goal) {
    std::vector<std::size_t> dist(model.states().size(), kUnreachable);
    dist[static_cast<std::size_t>(goal)] = 0;
    std::deque<StateId> frontier{goal};
    while (!frontier.empty()) {
        const auto s = frontier.front();
        frontier.pop_front();
        for (const auto& t : model.transitions()) {
            if (t.dest != s || dist[static_cast<std::size_t>(t.src)] != kUnreachable) continue;
            dist[static_cast<std::size_t>(t.src)] = dist[static_cast<std::size_t>(s)] + 1;
            frontier.push_back(t.src);
        }
    }
    return dist;
}

class PathSearch {
public:
    PathSearch(const LatteModel& model, std::size_t target, const std::set<EventSequence>& exclude,
               const ReachSummary& summary, const std::set<std::string>& wanted, std::size_t max_expansions)
        : model_(model), target_(target), exclude_(exclude), budget_(max_expansions) {
        const auto& ts = model.transitions();
        dist_ = distance_to(model, ts[target].src);
        successors_.resize(model.states().size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i].dest != model.q()) successors_[static_cast<std::size_t>(ts[i].src)].push_back(i);
        }
        auto reach = [&](StateId s) {
            auto it = summary.find(s);
            return it == summary.end() ? 0 : overlap(it->second, wanted);
        };
        for (auto& out : successors_) {
            std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
                const auto ka = std::make_pair(overlap(ts[a].labels, wanted), reach(ts[a].dest));
                const auto kb = std::make_pair(overlap(ts[b].labels, wanted), reach(ts[b].dest));
                return ka > kb;
            });
        }
    }

    std::optional<CoveringPath> run(std::size_t max_prefix) {
        const auto start = dist_[static_cast<std::size_t>(model_.s0())];
        if (start == kUnreachable) return std::nullopt;
        for (std::size_t len = start; len <= max_prefix; ++len) {
            if (dfs(model_.s0(), len)) return found_;
            if (budget_ == 0) break;
        }
        return std::nullopt;
    }

private:
    bool dfs(StateId s, std::size_t remaining) {
        if (budget_ == 0) return false;
        --budget_;
        if (remaining == 0) {
            const auto& last = model_.transitions()[target_];
            path_.events.push_back(last.event);
            if (!exclude_.count(path_.events)) {
                path_.transitions.push_back(target_);
                found_ = path_;
                return true;
            }
            path_.events.pop_back();
            return false;
        }
        for (std::size_t idx : successors_[static_cast<std::size_t>(s)]) {
            const auto& t = model_.transitions()[idx];
            if (dist_[static_cast<std::size_t>(t.dest)] > remaining - 1) continue;
            path_.events.push_back(t.event);
            path_.transitions.push_back(idx);
            if (dfs(t.dest, remaining - 1)) return true;
            path_.events.pop_back();
            path_.transitions.pop_back();
        }
        return false;
    }

    const LatteModel& model_;
    std::size_t target_;
    const std::set<EventSequence>& exclude_;
    std::size_t budget_;
    std::vector<std::size_t> dist_;
    std::vector<std::vector<std::size_t>> successors_;
    CoveringPath path_;
    CoveringPath found_;
};

}  // namespace

std::set<std::size_t> labelled_transitions(const LatteModel& model, const Target& target) {
    std::set<std::size_t> out;
    const auto& ts = model.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (intersects(ts[i].labels, target.labels)) out.insert(i);
    }
    return out;
}

ReachSummary reach_summary(const LatteModel& model, const Target& target) {
    ReachSummary summary;
    for (const auto& s : model.states()) summary[s.id];
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : model.transitions()) {
            auto& into = summary[t.src];
            const auto before = into.size();
            for (const auto& l : t.labels) {
                if (target.labels.count(l)) into.insert(l);
            }
            const auto& beyond = summary[t.dest];
            into.insert(beyond.begin(), beyond.end());
            changed = changed || into.size() != before;
        }
    }
    return summary;
}

std::optional<CoveringPath> find_covering_sequence(const LatteModel& model, std::size_t target_transition,
                                                   const std::set<EventSequence>& exclude,
                                                   const ReachSummary& summary,
                                                   const std::set<std::string>& wanted, SearchLimits limits) {
    if (target_transition >= model.transitions().size()) return std::nullopt;
    const std::size_t max_length = limits.max_length ? limits.max_length : 4 * model.states().size();
    if (max_length == 0) return std::nullopt;
    PathSearch search(model, target_transition, exclude, summary, wanted, limits.max_expansions);
    return search.run(max_length - 1);
}

std::size_t TargetedSuite::total_length() const {
    std::size_t n = 0;
    for (const auto& s : sequences) n += s.events.size();
    return n;
}

TargetedSuite generate(const LatteModel& model, const AppSpec& spec, const Target& target, int maxtry,
                       SearchLimits limits) {
    if (maxtry < 1) throw std::invalid_argument("maxtry must be at least 1");
    check_target(model, target);
    TargetedSuite suite;
    suite.target = target.labels;
    const auto& ts = model.transitions();

    const auto carried = model.covered_labels();
    for (const auto& l : target.labels) {
        if (!carried.count(l)) suite.missing_labels.insert(l);
    }

    const auto lt = labelled_transitions(model, target);
    const auto summary = reach_summary(model, target);
    const auto depth = depth_from_entry(model);

    // Deepest first: long sequences tend to sweep up shallower targets on the way.
    std::vector<std::size_t> order(lt.begin(), lt.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto da = depth[static_cast<std::size_t>(ts[a].src)];
        const auto db = depth[static_cast<std::size_t>(ts[b].src)];
        const auto ka = da == kUnreachable ? 0 : da + 1;
        const auto kb = db == kUnreachable ? 0 : db + 1;
        return ka > kb;
    });

    std::set<std::size_t> covered;
    std::set<EventSequence> exclude;
    for (std::size_t ell : order) {
        if (covered.count(ell)) continue;
        std::set<std::string> wanted;
        for (std::size_t i : lt) {
            if (covered.count(i)) continue;
            for (const auto& l : ts[i].labels) {
                if (target.labels.count(l)) wanted.insert(l);
            }
        }

        bool accepted = false;
        for (int attempt = 0; attempt < maxtry && !accepted; ++attempt) {
            auto candidate = find_covering_sequence(model, ell, exclude, summary, wanted, limits);
            if (!candidate) break;
            ++suite.candidates_tried;
            exclude.insert(candidate->events);

            const auto run = replay(spec, candidate->events);
            if (!run.feasible() || !includes(run.trace.steps.back().emitted, ts[ell].labels)) {
                ++suite.rejected;
                continue;
            }
            TargetedSequence seq;
            seq.events = candidate->events;
            seq.generated_for = ell;
            for (std::size_t i = 0; i < run.trace.steps.size(); ++i) {
                const auto& emitted = run.trace.steps[i].emitted;
                seq.labels.insert(emitted.begin(), emitted.end());
                const auto idx = candidate->transitions[i];
                if (lt.count(idx) && includes(emitted, ts[idx].labels)) seq.covered.insert(idx);
            }
            covered.insert(seq.covered.begin(), seq.covered.end());
            suite.sequences.push_back(std::move(seq));
            accepted = true;
        }
        if (!accepted) suite.uncovered.insert(ell);
    }
    return suite;
}

std::string verify_suite(const AppSpec& spec, const TargetedSuite& suite) {
    std::set<EventSequence> seen;
    for (std::size_t i = 0; i < suite.sequences.size(); ++i) {
        const auto& seq = suite.sequences[i];
        const auto where = "sequence " + std::to_string(i);
        if (!seen.insert(seq.events).second) return where + " appears twice";
        const auto run = replay(spec, seq.events);
        if (!run.feasible()) return where + " is infeasible at step " + std::to_string(*run.infeasible_at);
        std::set<std::string> emitted;
        for (const auto& step : run.trace.steps) emitted.insert(step.emitted.begin(), step.emitted.end());
        if (emitted != seq.labels) return where + " emits a different label set than claimed";
    }
    return {};
}

std::string suite_json(const LatteModel& model, const TargetedSuite& suite) {
    using detail::json;
    auto transition_json = [&](std::size_t idx) {
        const auto& t = model.transitions()[idx];
        return json{{"index", idx},
                    {"src", t.src},
                    {"event", detail::event_json(t.event)},
                    {"labels", detail::string_array(t.labels)},
                    {"dest", t.dest}};
    };
    json doc;
    doc["target"] = detail::string_array(suite.target);
    json seqs = json::array();
    for (const auto& s : suite.sequences) {
        seqs.push_back({{"generated_for", s.generated_for},
                        {"length", s.events.size()},
                        {"labels", detail::string_array(s.labels)},
                        {"covers", s.covered},
                        {"events", detail::sequence_json(s.events)}});
    }
    doc["sequences"] = seqs;
    json uncovered = json::array();
    for (auto idx : suite.uncovered) uncovered.push_back(transition_json(idx));
    doc["uncovered"] = uncovered;
    doc["missing_labels"] = detail::string_array(suite.missing_labels);
    doc["candidates_tried"] = suite.candidates_tried;
    doc["rejected"] = suite.rejected;
    doc["total_length"] = suite.total_length();
    return doc.dump(2) + "\n";
}

std::vector<EventSequence> parse_sequences(std::string_view text) {
    try {
        const auto doc = detail::json::parse(text.begin(), text.end());
        std::vector<EventSequence> out;
        if (doc.is_array()) {
            out.push_back(detail::sequence_from_json(doc));
        } else {
            for (const auto& s : doc.at("sequences")) out.push_back(detail::sequence_from_json(s.at("events")));
        }
        return out;
    } catch (const detail::json::exception& e) {
        throw std::runtime_error(std::string("malformed sequence file: ") + e.what());
    }
}

}  // namespace latte
