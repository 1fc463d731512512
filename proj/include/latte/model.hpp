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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latte/runtime.hpp"

namespace latte {

using StateId = int;

enum class StateKind { Ordinary, Entry, Terminal };

std::string_view to_string(StateKind kind);

/// A model state <activity, views, stack>. `views` is sorted by view id and two
/// views are equal only when every field, statuses included, is equal.
struct ModelState {
    StateId id = -1;
    std::string activity;
    std::vector<ObservedView> views;
    std::vector<std::string> stack;
    EventSequence access_seq;
    StateKind kind = StateKind::Ordinary;

    /// Entry states take part in similarity and merging like ordinary ones.
    bool is_app_state() const { return kind != StateKind::Terminal; }
    bool same_content(const ModelState& o) const {
        return activity == o.activity && views == o.views && stack == o.stack;
    }
    bool operator==(const ModelState&) const = default;
};

struct Transition {
    StateId src = -1;
    Event event;
    std::set<std::string> labels;
    StateId dest = -1;
    auto operator<=>(const Transition&) const = default;
};

/// The five-part model: states, label universe, transitions, entry s0 and the
/// terminal state q. State ids are dense indices; s0 is 0 and q is 1.
class LatteModel {
public:
    LatteModel() = default;
    LatteModel(ModelState entry, std::set<std::string> label_universe);

    StateId s0() const { return 0; }
    StateId q() const { return 1; }
    const std::vector<ModelState>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::set<std::string>& label_universe() const { return labels_; }
    const ModelState& state(StateId id) const { return states_.at(static_cast<std::size_t>(id)); }

    /// Adds an app state and returns its id. Throws std::invalid_argument if
    /// a state with identical content already exists.
    StateId add_state(ModelState s);
    /// Returns false when an identical transition is already present.
    bool add_transition(const Transition& t);
    std::optional<StateId> find_identical(const ModelState& s) const;

    /// App states (entry + ordinary), excluding q.
    std::size_t app_state_count() const { return states_.size() - 1; }
    std::set<std::string> covered_labels() const;
    /// Empty when every invariant holds; otherwise a description of the first
    /// violation.
    std::string check_invariants() const;

    bool operator==(const LatteModel&) const = default;

private:
    std::vector<ModelState> states_;
    std::vector<Transition> transitions_;
    std::set<std::string> labels_;
};

/// |V1 ∩ V2| / |V1 ∪ V2| over fully-attributed views; 1 when both are empty.
double view_similarity(const ModelState& a, const ModelState& b);
/// 1 when the activity-id stacks are identical, else 0.
double stack_similarity(const ModelState& a, const ModelState& b);
/// omega * view + (1 - omega) * stack for states of the same activity, else 0.
double state_similarity(const ModelState& a, const ModelState& b, double omega);

struct SimilarityMatch {
    StateId id = -1;
    double similarity = 0.0;
};

/// Most similar app state of the candidate's activity. Ties go to the lowest id.
std::optional<SimilarityMatch> find_most_similar(const LatteModel& model, const ModelState& candidate,
                                                 double omega);

/// Folds `newcomer` into `existing`: the newcomer is dropped, `incoming` is
/// redirected to `existing` and added unless an identical transition exists.
void merge_into(LatteModel& model, StateId existing, const ModelState& newcomer, Transition incoming);

std::string export_dot(const LatteModel& model);
std::string export_json(const LatteModel& model);
/// Inverse of export_json. Throws std::runtime_error on malformed input or
/// broken invariants.
LatteModel import_json(std::string_view text);

/// Content equivalence: a bijection on app states preserving (activity, views,
/// stack), with s0 and q mapped to each other and transition sets equal under
/// it. On mismatch, `why` receives a description.
bool equivalent(const LatteModel& a, const LatteModel& b, std::string* why = nullptr);

}  // namespace latte
