#pragma once

/// @file experiment.hpp
/// @brief An experiment file bundles an engine, a run configuration and a
/// benchmark problem. This header loads one, runs it, and renders statistics.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stop_token>
#include <string>
#include <vector>

#include <evoengine/engine.hpp>
#include <evoengine/error.hpp>
#include <evoengine/problems.hpp>
#include <evoengine/serialization.hpp>

namespace evoengine {

struct Experiment {
    EngineConfig engine;
    RunConfig run;
    ProblemSpec problem;

    friend bool operator==(const Experiment&, const Experiment&) = default;
};

inline Json to_json(const Experiment& e) {
    return {{"engine", to_json(e.engine)}, {"run", to_json(e.run)}, {"problem", to_json(e.problem)}};
}

inline Experiment experiment_from_json(const Json& j) {
    json_detail::expect_object(j, "", {"engine", "run", "problem"});
    Experiment e;
    e.engine = engine_config_from_json(json_detail::field(j, "engine", ""), "engine");
    e.run = run_config_from_json(json_detail::field(j, "run", ""), "run");
    e.problem = problem_from_json(json_detail::field(j, "problem", ""), "problem");
    return e;
}

inline Experiment parse_experiment_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(errc::io_error, "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) {
        throw Error(errc::io_error, "cannot read " + path.string());
    }
    return experiment_from_json(parse_json_text(text.str()));
}

/// Outcome of a run, independent of the genome type.
struct ExperimentResult {
    std::vector<GenerationStats> history;
    StopReason stop_reason = StopReason::max_generations;
    Json record; ///< full RunRecord as JSON
};

/// Runs the experiment on the problem it names. Throws INFEASIBLE_CONFIG for
/// an infeasible engine.
inline ExperimentResult run_experiment(const Experiment& e, const GenerationObserver& observer = {},
                                       std::stop_token stop = {}) {
    const auto finish = [](const auto& record) {
        return ExperimentResult{record.history, record.stop_reason, to_json(record)};
    };
    if (e.problem.is_bitstring()) {
        return finish(run(e.engine, e.run, OneMax(e.problem), observer, stop));
    }
    return finish(run(e.engine, e.run, RealFunction(e.problem), observer, stop));
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

inline constexpr std::string_view csv_header = "generation,best,mean,worst,evaluations";

inline void write_csv_row(std::ostream& out, const GenerationStats& s) {
    out << s.generation << ',' << format_number(s.best) << ',' << format_number(s.mean) << ','
        << format_number(s.worst) << ',' << s.evaluations << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<GenerationStats>& history) {
    out << csv_header << '\n';
    for (const auto& s : history) {
        write_csv_row(out, s);
    }
}

} // namespace evoengine
