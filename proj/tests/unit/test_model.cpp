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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "latte/builder.hpp"
#include "latte/model.hpp"

using namespace latte;
using latte::testing::bundled_fixtures;
using latte::testing::fixture;

namespace {

ObservedView view(const std::string& id, bool focused = false) {
    ObservedView v;
    v.id = id;
    v.view_type = ViewType::Button;
    v.status.focused = focused;
    return v;
}

ModelState state_of(const std::string& activity, std::vector<ObservedView> views,
                    std::vector<std::string> stack = {"A"}) {
    ModelState s;
    s.activity = activity;
    std::sort(views.begin(), views.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    s.views = std::move(views);
    s.stack = std::move(stack);
    return s;
}

struct Ratio {
    long num = 0;
    long den = 1;
};

// Jaccard index as an exact ratio, by brute comparison of every pair of views.
Ratio jaccard(const std::vector<ObservedView>& a, const std::vector<ObservedView>& b) {
    long common = 0;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x.id == y.id && x.view_type == y.view_type && x.position == y.position && x.status == y.status) {
                ++common;
            }
        }
    }
    const long all = static_cast<long>(a.size() + b.size()) - common;
    if (all == 0) return {1, 1};
    const long g = std::gcd(common, all);
    return {common / g, all / g};
}

ModelState random_state(std::mt19937& rng) {
    static const char* ids[] = {"a", "b", "c", "d", "e", "f"};
    std::vector<ObservedView> views;
    for (const char* id : ids) {
        if (rng() % 2) continue;
        auto v = view(id, rng() % 3 == 0);
        if (rng() % 4 == 0) v.status.text = rng() % 2 ? "x" : "y";
        views.push_back(v);
    }
    const bool other_stack = rng() % 3 == 0;
    return state_of("A", views, other_stack ? std::vector<std::string>{"B", "A"} : std::vector<std::string>{"A"});
}

LatteModel model_with(const std::vector<ModelState>& extra, ModelState entry) {
    LatteModel m(std::move(entry), {"l"});
    for (const auto& s : extra) m.add_state(s);
    return m;
}

}  // namespace

TEST_CASE("view similarity") {
    const auto a = state_of("A", {view("x"), view("y")});
    CHECK(view_similarity(a, a) == 1.0);
    CHECK(view_similarity(a, state_of("A", {view("p"), view("q")})) == 0.0);
    // Two shared views out of four distinct ones.
    CHECK(view_similarity(state_of("A", {view("x"), view("y"), view("z")}),
                          state_of("A", {view("x"), view("y"), view("w")})) == 0.5);
    CHECK(view_similarity(state_of("A", {}), state_of("A", {})) == 1.0);
    // A status difference makes the views different.
    CHECK(view_similarity(state_of("A", {view("x", true)}), state_of("A", {view("x", false)})) == 0.0);
}

TEST_CASE("stack similarity") {
    auto with_stack = [](std::vector<std::string> s) { return state_of("A", {}, std::move(s)); };
    CHECK(stack_similarity(with_stack({"a", "b"}), with_stack({"a", "b"})) == 1.0);
    CHECK(stack_similarity(with_stack({"a", "b"}), with_stack({"a"})) == 0.0);
    CHECK(stack_similarity(with_stack({"a", "b"}), with_stack({"b", "a"})) == 0.0);
}

TEST_CASE("state similarity") {
    const auto a = state_of("A", {view("x"), view("y")});
    for (double w : {0.0, 0.3, 0.5, 1.0}) CHECK(state_similarity(a, a, w) == 1.0);
    CHECK(state_similarity(a, state_of("A", {view("p")}), 0.5) == 0.5);
    const auto half = state_of("A", {view("x"), view("z"), view("y"), view("w")}, {"B"});
    CHECK(view_similarity(a, half) == 0.5);
    CHECK(state_similarity(a, half, 0.5) == 0.25);
    CHECK(state_similarity(a, state_of("B", {view("x"), view("y")}), 0.5) == 0.0);
}

TEST_CASE("similarity properties on random pairs") {
    std::mt19937 rng(424242);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_state(rng);
        const auto b = random_state(rng);
        const double omega = static_cast<double>(rng() % 1001) / 1000.0;
        const auto j = jaccard(a.views, b.views);
        const double expected_view = static_cast<double>(j.num) / static_cast<double>(j.den);
        const double expected_stack = a.stack == b.stack ? 1.0 : 0.0;

        CHECK(std::abs(view_similarity(a, b) - expected_view) <= 1e-12);
        CHECK(stack_similarity(a, b) == expected_stack);
        const double sim = state_similarity(a, b, omega);
        CHECK(sim == state_similarity(b, a, omega));
        CHECK(sim >= 0.0);
        CHECK(sim <= 1.0);
        CHECK(std::abs(sim - (omega * expected_view + (1.0 - omega) * expected_stack)) <= 1e-12);
        const bool full = a.same_content(b) || (omega == 0.0 && expected_stack == 1.0) ||
                          (omega == 1.0 && expected_view == 1.0);
        CHECK((sim > 1.0 - 1e-12) == full);
        // Affine in omega with slope view - stack.
        const double at0 = state_similarity(a, b, 0.0);
        const double at1 = state_similarity(a, b, 1.0);
        CHECK(std::abs(sim - (at0 + omega * (at1 - at0))) <= 1e-12);
    }
}

TEST_CASE("most similar state") {
    const auto entry = state_of("A", {view("x"), view("y"), view("z"), view("w")});
    SUBCASE("no state of the activity") {
        const auto m = model_with({}, state_of("B", {view("x")}));
        CHECK_FALSE(find_most_similar(m, entry, 0.5));
    }
    SUBCASE("identical state wins with 1") {
        const auto m = model_with({}, entry);
        const auto best = find_most_similar(m, entry, 0.5);
        REQUIRE(best);
        CHECK(best->id == 0);
        CHECK(best->similarity == 1.0);
    }
    SUBCASE("the closer of two") {
        // Against the candidate (x, y, z, w) these score 0.5 and 0.75.
        const auto far = state_of("A", {view("p")});
        const auto near = state_of("A", {view("x"), view("y")});
        const auto m = model_with({far, near}, state_of("B", {}));
        const auto candidate = state_of("A", {view("x"), view("y"), view("z"), view("w")});
        CHECK(state_similarity(m.state(2), candidate, 0.5) == 0.5);
        CHECK(state_similarity(m.state(3), candidate, 0.5) == 0.75);
        const auto best = find_most_similar(m, candidate, 0.5);
        REQUIRE(best);
        CHECK(best->id == 3);
    }
    SUBCASE("ties go to the oldest state") {
        const auto m = model_with({state_of("A", {view("p")}), state_of("A", {view("q")})}, state_of("B", {}));
        const auto best = find_most_similar(m, state_of("A", {view("r")}), 0.5);
        REQUIRE(best);
        CHECK(best->id == 2);
    }
    SUBCASE("unrelated activities do not change the answer") {
        auto m = model_with({state_of("A", {view("x")})}, state_of("A", {view("y")}));
        const auto before = find_most_similar(m, entry, 0.5);
        m.add_state(state_of("C", {view("x"), view("y"), view("z"), view("w")}));
        const auto after = find_most_similar(m, entry, 0.5);
        REQUIRE(before);
        REQUIRE(after);
        CHECK(before->id == after->id);
        CHECK(before->similarity == after->similarity);
    }
}

TEST_CASE("model bookkeeping") {
    LatteModel m(state_of("A", {view("x")}), {"l"});
    CHECK(m.states().size() == 2);
    CHECK(m.state(m.q()).kind == StateKind::Terminal);
    CHECK(m.check_invariants().empty());
    CHECK_THROWS_AS(m.add_state(state_of("A", {view("x")})), std::invalid_argument);

    const auto id = m.add_state(state_of("A", {view("y")}));
    CHECK(id == 2);
    const Transition t{0, {"A", "x", EventKind::Click, 0}, {"l"}, id};
    CHECK(m.add_transition(t));
    CHECK_FALSE(m.add_transition(t));
    CHECK(m.transitions().size() == 1);
    CHECK_THROWS(m.add_transition({0, {}, {}, 9}));
    CHECK(m.covered_labels() == std::set<std::string>{"l"});
    CHECK(m.app_state_count() == 2);
}

TEST_CASE("merging") {
    LatteModel m(state_of("A", {view("x")}), {});
    const auto newcomer = state_of("A", {view("x"), view("y")});
    const Transition incoming{0, {"A", "x", EventKind::Click, 0}, {}, -1};

    merge_into(m, 0, newcomer, incoming);
    CHECK(m.states().size() == 2);
    REQUIRE(m.transitions().size() == 1);
    CHECK(m.transitions()[0].dest == 0);
    CHECK(m.state(0).views.size() == 1);  // the representative keeps its content

    const auto before = m;
    merge_into(m, 0, newcomer, incoming);
    CHECK(m == before);

    merge_into(m, 0, m.state(0), {0, {"A", "x", EventKind::Press, 0}, {}, -1});
    CHECK(m.transitions().size() == 2);
    CHECK(m.states().size() == 2);

    CHECK_THROWS_AS(merge_into(m, 0, state_of("B", {}), incoming), std::invalid_argument);
}

TEST_CASE("DOT export") {
    LatteModel m(state_of("A", {view("x")}), {"l"});
    m.add_transition({0, {"A", std::string(kGlobal), EventKind::Back, 0}, {}, m.q()});
    const auto dot = export_dot(m);
    CHECK(dot.rfind("digraph latte {", 0) == 0);
    CHECK(dot.find("s0 [label=\"s0 | A\"") != std::string::npos);
    CHECK(dot.find("q [label=\"q\", shape=doublecircle]") != std::string::npos);
    CHECK(dot.find("s0 -> q [label=\"GLOBAL:Back\"]") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '>') == 1);

    m.add_transition({0, {"A", "x", EventKind::Click, 0}, {"l"}, 0});
    CHECK(export_dot(m).find("s0 -> s0 [label=\"x:Click\\n{l}\", color=red, penwidth=2]") != std::string::npos);
}

TEST_CASE("JSON round trip") {
    for (const auto& name : bundled_fixtures()) {
        CAPTURE(name);
        for (double st : {0.0, 0.8, 1.0}) {
            BuildConfig cfg;
            cfg.similarity_threshold = st;
            const auto model = build_model(fixture(name), cfg).model;
            const auto text = export_json(model);
            const auto back = import_json(text);
            CHECK(back == model);
            CHECK(export_json(back) == text);
        }
    }
}

TEST_CASE("JSON import rejects broken documents") {
    const auto good = export_json(build_model(fixture("two_checkbox")).model);
    CHECK_THROWS_AS(import_json("{"), std::runtime_error);
    CHECK_THROWS_AS(import_json("{}"), std::runtime_error);
    auto replace = [&](const std::string& from, const std::string& to) {
        auto s = good;
        const auto at = s.find(from);
        REQUIRE(at != std::string::npos);
        return s.replace(at, from.size(), to);
    };
    CHECK_THROWS_AS(import_json(replace("\"version\": 1", "\"version\": 2")), std::runtime_error);
    CHECK_THROWS_AS(import_json(replace("\"dest\": 2", "\"dest\": 99")), std::runtime_error);
    CHECK_THROWS_AS(import_json(replace("\"kind\": \"terminal\"", "\"kind\": \"ordinary\"")), std::runtime_error);
}

TEST_CASE("equivalence") {
    const auto& spec = fixture("tomdroid");
    const auto a = build_model(spec).model;
    std::string why;
    CHECK(equivalent(a, a, &why));

    BuildConfig loose;
    loose.similarity_threshold = 0.0;
    CHECK_FALSE(equivalent(a, build_model(spec, loose).model, &why));
    CHECK(why.find("state counts differ") != std::string::npos);
}
