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

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "latte/model.hpp"

namespace latte {

struct Target {
    std::set<std::string> labels;
};

class UnknownLabel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws UnknownLabel when the target is empty or names a label outside the
/// model's label universe.
void check_target(const LatteModel& model, const Target& target);
void check_target(const std::set<std::string>& label_universe, const Target& target);

/// Indices into model.transitions() of the transitions carrying a target label.
std::set<std::size_t> labelled_transitions(const LatteModel& model, const Target& target);

/// Target labels reachable from each state, edges included.
using ReachSummary = std::map<StateId, std::set<std::string>>;

ReachSummary reach_summary(const LatteModel& model, const Target& target);

struct SearchLimits {
    /// Longest path tried, the final transition included. 0 means 4 * |states|.
    std::size_t max_length = 0;
    /// Search nodes expanded before giving up.
    std::size_t max_expansions = 500000;
};

/// A model path from s0 and the events along it.
struct CoveringPath {
    EventSequence events;
    std::vector<std::size_t> transitions;
};

/// Shortest path s0 -> src(target_transition) extended by that transition
/// whose event sequence is not in `exclude`. Among equally short paths the
/// search prefers edges carrying `wanted` labels, then successors whose reach
/// summary holds more of `wanted`, then lower transition index.
std::optional<CoveringPath> find_covering_sequence(const LatteModel& model, std::size_t target_transition,
                                                   const std::set<EventSequence>& exclude,
                                                   const ReachSummary& summary,
                                                   const std::set<std::string>& wanted, SearchLimits limits = {});

struct TargetedSequence {
    EventSequence events;
    /// LT transitions this sequence was checked to cover.
    std::set<std::size_t> covered;
    /// Every label the replay emitted.
    std::set<std::string> labels;
    std::size_t generated_for = 0;
};

struct TargetedSuite {
    std::set<std::string> target;
    std::vector<TargetedSequence> sequences;
    std::set<std::size_t> uncovered;
    /// Target labels that no model transition carries.
    std::set<std::string> missing_labels;
    std::size_t candidates_tried = 0;
    std::size_t rejected = 0;

    std::size_t total_length() const;
    bool complete() const { return uncovered.empty() && missing_labels.empty(); }
};

/// Adaptive generation: each labelled transition gets up to `maxtry`
/// candidates, each validated by replay against `spec`.
TargetedSuite generate(const LatteModel& model, const AppSpec& spec, const Target& target, int maxtry = 5,
                       SearchLimits limits = {});

/// Replays every sequence and confirms it emits the labels claimed for it.
/// Returns an empty string when sound, else the first problem found.
std::string verify_suite(const AppSpec& spec, const TargetedSuite& suite);

std::string suite_json(const LatteModel& model, const TargetedSuite& suite);

/// Event sequences from either suite JSON or a bare JSON array of events.
/// Throws std::runtime_error on anything else.
std::vector<EventSequence> parse_sequences(std::string_view text);

}  // namespace latte
