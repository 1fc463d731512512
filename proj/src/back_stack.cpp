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

#include "latte/back_stack.hpp"

#include <algorithm>

namespace latte {

const ActivityInstanceRef& BackStack::top() const {
    if (entries.empty()) throw StackError("top of an empty back stack");
    return entries.back();
}

std::vector<std::string> BackStack::activity_ids() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.activity);
    return out;
}

std::size_t BackStack::count(std::string_view activity) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.activity == activity; }));
}

namespace {

BackStack push_new(const BackStack& stack, std::string_view activity) {
    BackStack out = stack;
    out.entries.push_back({std::string(activity), static_cast<int>(stack.count(activity)) + 1});
    return out;
}

}  // namespace

LaunchResult push_for_launch(const BackStack& stack, std::string_view activity, LaunchMode mode) {
    switch (mode) {
        case LaunchMode::Standard:
            return {push_new(stack, activity), true};
        case LaunchMode::SingleTop:
            if (!stack.empty() && stack.top().activity == activity) return {stack, false};
            return {push_new(stack, activity), true};
        case LaunchMode::SingleTask: {
            auto it = std::find_if(stack.entries.rbegin(), stack.entries.rend(),
                                   [&](const auto& e) { return e.activity == activity; });
            if (it == stack.entries.rend()) return {push_new(stack, activity), true};
            // Resume the existing instance; everything above it is destroyed.
            BackStack out;
            out.entries.assign(stack.entries.begin(), it.base());
            return {std::move(out), false};
        }
    }
    throw StackError("unknown launch mode");
}

BackStack pop_back(const BackStack& stack) {
    if (stack.empty()) throw StackError("pop on an empty back stack");
    BackStack out = stack;
    out.entries.pop_back();
    return out;
}

BackStack finish_top(const BackStack& stack) {
    if (stack.empty()) throw StackError("finish on an empty back stack");
    return pop_back(stack);
}

}  // namespace latte
