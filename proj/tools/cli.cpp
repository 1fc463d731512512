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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "latte/bench.hpp"
#include "latte/builder.hpp"
#include "latte/target.hpp"

namespace latte::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw std::runtime_error("cannot write '" + path + "'");
}

// Writes to `path` when given, else to `out`.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        write_file(path, content);
    }
}

AppSpec load_spec(const std::string& path, std::ostream& err) {
    auto spec = load_app_spec(path);
    for (const auto& issue : validate(spec)) err << path << ": " << format_issue(issue) << "\n";
    return spec;
}

struct BuildFlags {
    double omega = 0.5;
    double st = 0.8;
    std::uint64_t max_events = 0;
    double max_seconds = 3 * 3600.0;
    std::string event_order = "position";
    bool no_status = false;
    bool no_stack = false;
    CLI::Option* max_events_opt = nullptr;

    void attach(CLI::App& cmd, bool with_threshold) {
        cmd.add_option("--omega", omega, "weight of view similarity against stack similarity")->check(CLI::Range(0.0, 1.0));
        if (with_threshold) {
            cmd.add_option("--st", st, "similarity threshold above which states merge")->check(CLI::Range(0.0, 1.0));
        }
        max_events_opt = cmd.add_option("--max-events", max_events, "event budget, replays included")->default_str("unlimited");
        cmd.add_option("--max-seconds", max_seconds, "wall-time bound per build")->check(CLI::NonNegativeNumber);
        cmd.add_option("--event-order", event_order, "candidate event order")
            ->check(CLI::IsMember({"position", "declaration"}));
        cmd.add_flag("--no-status", no_status, "record views without their statuses");
        cmd.add_flag("--no-stack", no_stack, "record states without their back stack");
    }

    BuildConfig config() const {
        BuildConfig cfg;
        cfg.omega = omega;
        cfg.similarity_threshold = st;
        if (max_events_opt && max_events_opt->count()) cfg.max_events = max_events;
        cfg.max_wall_time = std::chrono::duration<double>(max_seconds);
        cfg.event_order = *parse_event_order(event_order);
        cfg.model_statuses = !no_status;
        cfg.model_stack = !no_stack;
        check_config(cfg);
        return cfg;
    }
};

struct RandomFlags {
    std::uint64_t batch = 1000;
    std::uint64_t max_batches = 100;

    void attach(CLI::App& cmd) {
        cmd.add_option("--batch", batch, "events per batch")->check(CLI::PositiveNumber);
        cmd.add_option("--max-batches", max_batches, "batches before giving up");
    }
};

Target target_of(const std::vector<std::string>& labels) { return {{labels.begin(), labels.end()}}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Builds GUI models of simulated Android apps and generates targeted event sequences.", "latte"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::function<int()> action;

    // build
    auto* build = app.add_subcommand("build", "explore an app and write its model");
    std::string spec_path, model_out, dot_out;
    BuildFlags build_flags;
    build->add_option("spec", spec_path, "app spec JSON")->required();
    build_flags.attach(*build, true);
    build->add_option("--out", model_out, "model JSON output");
    build->add_option("--dot", dot_out, "model DOT output");
    build->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const auto report = build_model(spec, build_flags.config());
            if (!model_out.empty()) write_file(model_out, export_json(report.model));
            if (!dot_out.empty()) write_file(dot_out, export_dot(report.model));
            out << report_json(report);
            err << "built in " << std::fixed << std::setprecision(3) << report.wall_time.count() << " s\n";
            return report.truncated ? kTruncated : kOk;
        };
    });

    // target
    auto* target = app.add_subcommand("target", "generate event sequences covering target labels");
    std::string model_path, suite_out;
    std::vector<std::string> labels;
    int maxtry = 5;
    target->add_option("spec", spec_path, "app spec JSON")->required();
    target->add_option("model", model_path, "model JSON written by build")->required();
    target->add_option("--labels", labels, "target labels, comma separated")->required()->delimiter(',');
    target->add_option("--maxtry", maxtry, "candidates tried per labelled transition")->check(CLI::PositiveNumber);
    target->add_option("--out", suite_out, "suite JSON output (default: standard output)");
    target->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const auto model = import_json(read_file(model_path));
            const auto t = target_of(labels);
            check_target(model, t);
            const auto suite = generate(model, spec, t, maxtry);
            emit(suite_out, suite_json(model, suite), out);
            err << suite.sequences.size() << " sequences, " << suite.total_length() << " events, "
                << suite.uncovered.size() << " uncovered transitions, " << suite.missing_labels.size()
                << " labels missing from the model\n";
            return suite.complete() ? kOk : kNotCovered;
        };
    });

    // random
    auto* random = app.add_subcommand("random", "random exploration until the target labels are emitted");
    std::string random_out;
    std::uint64_t seed = 1;
    RandomFlags random_flags;
    random->add_option("spec", spec_path, "app spec JSON")->required();
    random->add_option("--labels", labels, "target labels, comma separated")->required()->delimiter(',');
    random->add_option("--seed", seed, "random seed");
    random_flags.attach(*random);
    random->add_option("--out", random_out, "report JSON output (default: standard output)");
    random->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const RandomConfig cfg{seed, random_flags.batch, random_flags.max_batches};
            const auto t = target_of(labels);
            const auto result = random_explore(spec, t, cfg);
            emit(random_out, random_json(spec, t, cfg, result), out);
            return result.events_to_cover ? kOk : kNotCovered;
        };
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "build once per similarity threshold");
    std::vector<double> thresholds{0.0, 0.25, 0.5, 0.8, 1.0};
    std::string sweep_out;
    bool timing = false;
    BuildFlags sweep_flags;
    sweep->add_option("spec", spec_path, "app spec JSON")->required();
    sweep->add_option("--thresholds", thresholds, "similarity thresholds, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    sweep_flags.attach(*sweep, false);
    sweep->add_flag("--timing", timing, "include wall time in the outputs");
    sweep->add_option("--out", sweep_out, "sweep JSON output");
    sweep->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const auto rows = st_sweep(spec, thresholds, sweep_flags.config());
            if (!sweep_out.empty()) write_file(sweep_out, sweep_json(rows, timing));
            out << sweep_table(rows, timing);
            const bool truncated = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.truncated; });
            return truncated ? kTruncated : kOk;
        };
    });

    // compare
    auto* cmp = app.add_subcommand("compare", "targeted generation against random exploration");
    std::vector<std::uint64_t> seeds = default_seeds();
    std::string compare_out;
    BuildFlags compare_flags;
    RandomFlags compare_random;
    cmp->add_option("spec", spec_path, "app spec JSON")->required();
    cmp->add_option("--labels", labels, "target labels, comma separated")->required()->delimiter(',');
    cmp->add_option("--seeds", seeds, "random seeds, comma separated")->delimiter(',');
    cmp->add_option("--maxtry", maxtry, "candidates tried per labelled transition")->check(CLI::PositiveNumber);
    compare_flags.attach(*cmp, true);
    compare_random.attach(*cmp);
    cmp->add_option("--out", compare_out, "report JSON output");
    cmp->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const RandomConfig rc{1, compare_random.batch, compare_random.max_batches};
            const auto report = compare(spec, target_of(labels), compare_flags.config(), rc, seeds, maxtry);
            if (!compare_out.empty()) write_file(compare_out, comparison_json(report));
            out << comparison_table(report);
            return report.targeted_covered ? kOk : kNotCovered;
        };
    });

    // replay
    auto* rep = app.add_subcommand("replay", "replay event sequences and print their traces");
    std::string sequences_path;
    rep->add_option("spec", spec_path, "app spec JSON")->required();
    rep->add_option("sequences", sequences_path, "suite JSON or a JSON array of events")->required();
    rep->callback([&] {
        action = [&] {
            const auto spec = load_spec(spec_path, err);
            const auto sequences = parse_sequences(read_file(sequences_path));
            int rc = kOk;
            for (std::size_t i = 0; i < sequences.size(); ++i) {
                const auto run = replay(spec, sequences[i]);
                out << "# sequence " << i << "\n" << format_trace(run.trace);
                if (!run.feasible()) {
                    err << "sequence " << i << ": infeasible at step " << *run.infeasible_at << "\n";
                    rc = kNotCovered;
                }
            }
            return rc;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kBadInput;
    }

    try {
        return action();
    } catch (const SpecError& e) {
        for (const auto& issue : e.issues()) err << spec_path << ": " << format_issue(issue) << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kBadInput;
}

}  // namespace latte::cli
