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

#include <random>

#include "fixtures.hpp"
#include "latte/bench.hpp"

using namespace latte;
using latte::testing::bundled_fixtures;
using latte::testing::fixture;

namespace {

const Target kNotes{{"deleteNote", "undeleteNote"}};

// A generator that counts down from the top of the range, to exercise rejection.
struct Countdown {
    std::uint64_t next = UINT64_MAX;
    std::uint64_t operator()() { return next--; }
};

}  // namespace

TEST_CASE("uniform index") {
    std::mt19937_64 gen(7);
    std::vector<int> hits(6);
    for (int i = 0; i < 60000; ++i) ++hits.at(uniform_index(gen, 6));
    for (int h : hits) {
        // Expected 10000 each; 5 standard deviations is about 456.
        CHECK(h > 9500);
        CHECK(h < 10500);
    }
    for (std::uint64_t n : {1, 2, 3, 1000}) CHECK(uniform_index(gen, n) < n);

    // The top UINT64_MAX % 3 + 1 values are rejected.
    Countdown c;
    const auto first = uniform_index(c, 3);
    CHECK(c.next == UINT64_MAX - 2);
    CHECK(first == (UINT64_MAX - 1) % 3);
}

TEST_CASE("random exploration is reproducible per seed") {
    const auto& spec = fixture("tomdroid");
    RandomConfig cfg;
    cfg.seed = 3;
    const auto a = random_explore(spec, kNotes, cfg);
    const auto b = random_explore(spec, kNotes, cfg);
    CHECK(a.events_to_cover == b.events_to_cover);
    CHECK(a.coverage.events_fired == b.coverage.events_fired);
    CHECK(random_json(spec, kNotes, cfg, a) == random_json(spec, kNotes, cfg, b));
}

TEST_CASE("coverage is reported at batch boundaries") {
    for (const auto& name : bundled_fixtures()) {
        const auto& spec = fixture(name);
        if (spec.label_universe().empty()) continue;
        CAPTURE(name);
        for (std::uint64_t seed : default_seeds()) {
            RandomConfig cfg;
            cfg.seed = seed;
            cfg.batch = 250;
            const auto r = random_explore(spec, Target{spec.label_universe()}, cfg);
            REQUIRE(r.events_to_cover);
            CHECK(*r.events_to_cover % cfg.batch == 0);
            CHECK(*r.events_to_cover == r.coverage.events_fired);
            CHECK(r.coverage.labels_covered == spec.label_universe());
            CHECK(r.coverage.labels_total == spec.label_universe().size());
        }
    }
}

TEST_CASE("uncoverable targets run out the budget") {
    RandomConfig cfg;
    cfg.batch = 50;
    cfg.max_batches = 4;
    const auto hidden = parse_app_spec(R"({
      "name": "never", "entry_activity": "A", "global_events": ["Back"], "labels": ["never", "hit"],
      "activities": [{"id": "A", "views": [{"id": "b", "view_type": "Button", "position": [0, 0]}],
        "handlers": [{"on": {"view": "b", "event": "Click"}, "effects": [], "emits": ["hit"]}]}]})");
    const auto r = random_explore(hidden, Target{{"never"}}, cfg);
    CHECK_FALSE(r.events_to_cover);
    CHECK(r.coverage.events_fired == 200);
    CHECK(r.coverage.restarts > 0);
    CHECK(r.coverage.labels_covered == std::set<std::string>{"hit"});

    cfg.max_batches = 0;
    const auto none = random_explore(fixture("tomdroid"), kNotes, cfg);
    CHECK_FALSE(none.events_to_cover);
    CHECK(none.coverage.events_fired == 0);

    CHECK_THROWS_AS(random_explore(fixture("tomdroid"), Target{{"bogus"}}, cfg), UnknownLabel);
}

TEST_CASE("a label one tap away is covered in the first batch") {
    const auto spec = parse_app_spec(R"({
      "name": "tap", "entry_activity": "A", "global_events": [], "labels": ["hit"],
      "activities": [{"id": "A", "views": [{"id": "b", "view_type": "Button", "position": [0, 0]}],
        "handlers": [{"on": {"view": "b", "event": "Click"}, "effects": [], "emits": ["hit"]}]}]})");
    const auto r = random_explore(spec, Target{{"hit"}}, {});
    CHECK(r.events_to_cover == 1000);
    CHECK(r.coverage.states_visited == 1);
}

TEST_CASE("threshold sweep") {
    const auto& spec = fixture("tomdroid");
    const auto rows = st_sweep(spec, {0.0, 0.5, 0.8, 1.0});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].states >= rows[i - 1].states);
        CHECK(rows[i].transitions >= rows[i - 1].transitions);
    }
    CHECK(rows[2].labels_covered == rows[3].labels_covered);
    CHECK(rows[3].states == 15);
    const auto json = sweep_json(rows, false);
    CHECK(json.find("wall_ms") == std::string::npos);
    CHECK(sweep_json(rows, true).find("wall_ms") != std::string::npos);
    CHECK(json == sweep_json(st_sweep(spec, {0.0, 0.5, 0.8, 1.0}), false));
    CHECK(sweep_table(rows, false).rfind("S_T", 0) == 0);
}

TEST_CASE("comparison") {
    const auto& spec = fixture("tomdroid");
    const auto report = compare(spec, kNotes, {}, {}, default_seeds());
    CHECK(report.targeted_covered);
    CHECK(report.suite_length <= 15);
    REQUIRE(report.random.size() == 5);
    for (const auto& r : report.random) {
        REQUIRE(r.events_to_cover);
        CHECK(*r.events_to_cover >= 10 * report.suite_length);
    }
    const auto again = compare(spec, kNotes, {}, {}, default_seeds());
    CHECK(comparison_json(report) == comparison_json(again));
    CHECK(comparison_table(report).find("(incomplete)") == std::string::npos);
}

TEST_CASE("random search covers whatever the targeted suite covers") {
    for (const auto& name : bundled_fixtures()) {
        const auto& spec = fixture(name);
        if (spec.label_universe().empty()) continue;
        CAPTURE(name);
        const Target target{spec.label_universe()};
        const auto report = compare(spec, target, {}, {}, {11});
        if (!report.targeted_covered) continue;
        CHECK(report.random.at(0).events_to_cover);
    }
}
