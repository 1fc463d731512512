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

#include "latte/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "json_util.hpp"

namespace latte {

namespace {

using StateKey = std::tuple<std::string, std::vector<ObservedView>, std::vector<std::string>>;

StateKey key_of(const Observation& obs) { return {obs.activity, obs.views, obs.stack}; }

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

}  // namespace

RandomResult random_explore(const AppSpec& spec, const Target& target, const RandomConfig& cfg) {
    check_target(spec.label_universe(), target);
    if (cfg.batch == 0) throw std::invalid_argument("batch must be positive");

    RandomResult result;
    auto& cov = result.coverage;
    cov.labels_total = spec.label_universe().size();

    std::mt19937_64 gen(cfg.seed);
    std::set<StateKey> states;
    std::set<std::tuple<StateKey, Event, StateKey>> moves;

    RuntimeState state = start(spec);
    Observation obs = observe(state);
    states.insert(key_of(obs));

    for (std::uint64_t b = 1; b <= cfg.max_batches; ++b) {
        for (std::uint64_t i = 0; i < cfg.batch; ++i) {
            if (obs.events.empty()) return result;  // nothing to do, and restarting cannot change that
            const Event e = obs.events[uniform_index(gen, obs.events.size())];
            auto fired = fire(state, e);
            ++cov.events_fired;
            cov.labels_covered.insert(fired.emitted.begin(), fired.emitted.end());
            auto from = key_of(obs);
            const bool ended = fired.next.terminated;
            if (ended) {
                ++cov.restarts;
                state = start(spec);
            } else {
                state = std::move(fired.next);
            }
            obs = observe(state);
            auto to = key_of(obs);
            states.insert(to);
            if (!ended) moves.emplace(std::move(from), e, std::move(to));
            cov.states_visited = states.size();
            cov.transitions_visited = moves.size();
        }
        if (std::includes(cov.labels_covered.begin(), cov.labels_covered.end(), target.labels.begin(),
                          target.labels.end())) {
            result.events_to_cover = b * cfg.batch;
            break;
        }
    }
    return result;
}

std::string random_json(const AppSpec& spec, const Target& target, const RandomConfig& cfg,
                        const RandomResult& result) {
    detail::json doc;
    doc["app"] = spec.name;
    doc["target"] = detail::string_array(target.labels);
    doc["seed"] = cfg.seed;
    doc["batch"] = cfg.batch;
    doc["max_batches"] = cfg.max_batches;
    doc["covered"] = result.events_to_cover.has_value();
    doc["events_to_cover"] = result.events_to_cover ? detail::json(*result.events_to_cover) : detail::json(nullptr);
    const auto& cov = result.coverage;
    doc["labels_covered"] = detail::string_array(cov.labels_covered);
    doc["labels_total"] = cov.labels_total;
    doc["states_visited"] = cov.states_visited;
    doc["transitions_visited"] = cov.transitions_visited;
    doc["events_fired"] = cov.events_fired;
    doc["restarts"] = cov.restarts;
    return doc.dump(2) + "\n";
}

std::vector<SweepRow> st_sweep(const AppSpec& spec, const std::vector<double>& thresholds, const BuildConfig& base) {
    std::vector<SweepRow> rows;
    for (double st : thresholds) {
        BuildConfig cfg = base;
        cfg.similarity_threshold = st;
        const auto report = build_model(spec, cfg);
        SweepRow row;
        row.threshold = st;
        row.states = report.model.app_state_count();
        row.transitions = report.model.transitions().size();
        row.labels_covered = report.model.covered_labels().size();
        row.labels_total = report.model.label_universe().size();
        row.events_fired = report.events_fired;
        row.wall_ms = std::chrono::duration<double, std::milli>(report.wall_time).count();
        row.truncated = report.truncated;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_json(const std::vector<SweepRow>& rows, bool timing) {
    detail::json out = detail::json::array();
    for (const auto& r : rows) {
        detail::json row;
        row["threshold"] = r.threshold;
        row["states"] = r.states;
        row["transitions"] = r.transitions;
        row["labels_covered"] = r.labels_covered;
        row["labels_total"] = r.labels_total;
        row["events_fired"] = r.events_fired;
        row["truncated"] = r.truncated;
        if (timing) row["wall_ms"] = r.wall_ms;
        out.push_back(row);
    }
    return out.dump(2) + "\n";
}

std::string sweep_table(const std::vector<SweepRow>& rows, bool timing) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %7s %12s %9s %9s", "S_T", "states", "transitions", "labels", "events");
    os << line << (timing ? "   wall_ms" : "") << "\n";
    for (const auto& r : rows) {
        const auto labels = std::to_string(r.labels_covered) + "/" + std::to_string(r.labels_total);
        std::snprintf(line, sizeof line, "%-6s %7zu %12zu %9s %9llu", fixed(r.threshold, 2).c_str(), r.states,
                      r.transitions, labels.c_str(), static_cast<unsigned long long>(r.events_fired));
        os << line;
        if (timing) {
            std::snprintf(line, sizeof line, " %9.1f", r.wall_ms);
            os << line;
        }
        if (r.truncated) os << "  (truncated)";
        os << "\n";
    }
    return os.str();
}

std::vector<std::uint64_t> default_seeds() { return {1, 2, 3, 4, 5}; }

ComparisonReport compare(const AppSpec& spec, const Target& target, const BuildConfig& build,
                         const RandomConfig& random, const std::vector<std::uint64_t>& seeds, int maxtry) {
    ComparisonReport report;
    report.app = spec.name;
    report.target = target.labels;
    report.batch = random.batch;
    report.max_batches = random.max_batches;

    const auto built = build_model(spec, build);
    check_target(built.model, target);
    report.build_events = built.events_fired;
    report.model_states = built.model.app_state_count();
    report.model_transitions = built.model.transitions().size();
    const auto suite = generate(built.model, spec, target, maxtry);
    report.suite_sequences = suite.sequences.size();
    report.suite_length = suite.total_length();
    report.targeted_covered = suite.complete();

    for (auto seed : seeds) {
        RandomConfig cfg = random;
        cfg.seed = seed;
        report.random.push_back({seed, random_explore(spec, target, cfg).events_to_cover});
    }
    return report;
}

std::string comparison_json(const ComparisonReport& r) {
    detail::json doc;
    doc["app"] = r.app;
    doc["target"] = detail::string_array(r.target);
    doc["targeted"] = {{"build_events", r.build_events},
                       {"model_states", r.model_states},
                       {"model_transitions", r.model_transitions},
                       {"sequences", r.suite_sequences},
                       {"suite_length", r.suite_length},
                       {"covered", r.targeted_covered}};
    detail::json runs = detail::json::array();
    for (const auto& s : r.random) {
        runs.push_back({{"seed", s.seed},
                        {"events_to_cover", s.events_to_cover ? detail::json(*s.events_to_cover) : detail::json(nullptr)}});
    }
    doc["random"] = {{"batch", r.batch}, {"max_batches", r.max_batches}, {"runs", runs}};
    return doc.dump(2) + "\n";
}

std::string comparison_table(const ComparisonReport& r) {
    std::ostringstream os;
    os << "app: " << r.app << "\ntarget: " << join(r.target) << "\n";
    const auto targeted = std::to_string(r.build_events) + "/" + std::to_string(r.suite_length) +
                          (r.targeted_covered ? "" : " (incomplete)");
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %14s  %s", "seed", "random", "targeted (build/length)");
    os << line << "\n";
    for (const auto& s : r.random) {
        const auto random = s.events_to_cover ? std::to_string(*s.events_to_cover) : std::string("not covered");
        std::snprintf(line, sizeof line, "%-6llu %14s  %s", static_cast<unsigned long long>(s.seed), random.c_str(),
                      targeted.c_str());
        os << line << "\n";
    }
    return os.str();
}

}  // namespace latte
