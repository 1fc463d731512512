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

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "latte/app_spec.hpp"

namespace latte {

/// One live activity instance. `serial` counts instances of the same activity
/// from the bottom of the stack, starting at 1.
struct ActivityInstanceRef {
    std::string activity;
    int serial = 1;
    auto operator<=>(const ActivityInstanceRef&) const = default;
};

struct BackStack {
    std::vector<ActivityInstanceRef> entries;  // bottom -> top

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
    const ActivityInstanceRef& top() const;
    std::vector<std::string> activity_ids() const;
    std::size_t count(std::string_view activity) const;

    auto operator<=>(const BackStack&) const = default;
};

class StackError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct LaunchResult {
    BackStack stack;
    bool started_new = false;
};

/// Stack evolution when `activity` is started under its launch mode.
LaunchResult push_for_launch(const BackStack& stack, std::string_view activity, LaunchMode mode);

/// Back key: removes the top instance. Throws StackError on an empty stack.
BackStack pop_back(const BackStack& stack);

/// Explicit finish() of the focused activity; same semantics as pop_back.
BackStack finish_top(const BackStack& stack);

}  // namespace latte
