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

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latte/app_spec.hpp"

namespace latte::testing {

inline std::string source_path(const std::string& relative) { return std::string(LATTE_SOURCE_DIR) + "/" + relative; }

inline std::string fixture_path(const std::string& name) { return source_path("fixtures/" + name + ".json"); }

/// Loaded once and kept alive, so runtime states may point into them.
inline const AppSpec& fixture(const std::string& name) {
    static std::map<std::string, AppSpec> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, load_app_spec(fixture_path(name))).first;
    return it->second;
}

inline std::vector<std::string> bundled_fixtures() {
    return {"hotdeath", "one_button", "tippytipper", "tomdroid", "two_checkbox"};
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace latte::testing
