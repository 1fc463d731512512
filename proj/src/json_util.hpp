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

// Internal JSON helpers shared by the serializers.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "latte/runtime.hpp"

namespace latte::detail {

using json = nlohmann::ordered_json;

inline json event_json(const Event& e) {
    json j{{"activity", e.activity}, {"view", e.view}, {"kind", to_string(e.kind)}};
    if (takes_payload(e.kind)) j["payload"] = e.payload;
    return j;
}

inline Event event_from_json(const json& j) {
    Event e;
    e.activity = j.at("activity").get<std::string>();
    e.view = j.at("view").get<std::string>();
    const auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!kind) throw std::runtime_error("unknown event kind '" + j.at("kind").get<std::string>() + "'");
    e.kind = *kind;
    if (j.contains("payload")) e.payload = j.at("payload").get<std::int64_t>();
    return e;
}

inline json sequence_json(const EventSequence& seq) {
    json out = json::array();
    for (const auto& e : seq) out.push_back(event_json(e));
    return out;
}

inline EventSequence sequence_from_json(const json& j) {
    EventSequence out;
    for (const auto& e : j) out.push_back(event_from_json(e));
    return out;
}

inline json status_json(const StatusMap& s) {
    json out = json::object();
    if (s.enabled) out["enabled"] = *s.enabled;
    if (s.focused) out["focused"] = *s.focused;
    if (s.checked) out["checked"] = *s.checked;
    if (s.text) out["text"] = *s.text;
    if (s.value) out["value"] = *s.value;
    return out;
}

inline StatusMap status_from_json(const json& j) {
    StatusMap s;
    for (const auto& [key, value] : j.items()) {
        const auto attr = parse_status_attr(key);
        if (!attr) throw std::runtime_error("unknown status attribute '" + key + "'");
        StatusValue v;
        if (value.is_boolean()) {
            v = value.get<bool>();
        } else if (value.is_number_integer()) {
            v = value.get<std::int64_t>();
        } else {
            v = value.get<std::string>();
        }
        if (!value_matches_attr(*attr, v)) throw std::runtime_error("bad value for status attribute '" + key + "'");
        s.set(*attr, v);
    }
    return s;
}

template <typename Range>
json string_array(const Range& r) {
    json out = json::array();
    for (const auto& s : r) out.push_back(s);
    return out;
}

}  // namespace latte::detail
