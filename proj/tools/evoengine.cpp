// evoengine: validate, classify, run, and generate evolution-engine configurations,
// or serve them over HTTP.
//
// Exit codes: 0 success (for `run`: target reached), 1 invalid input or
// infeasible engine, 2 run finished without reaching the target.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <evoengine/experiment.hpp>
#include <evoengine/presets.hpp>
#include <evoengine/serialization.hpp>
#include <evoengine/service.hpp>

namespace {

using namespace evoengine;

/// Accepts either a full experiment file or a bare engine config.
EngineConfig load_engine(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(errc::io_error, "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    const Json j = parse_json_text(text.str());
    if (j.is_object() && j.contains("engine")) {
        return experiment_from_json(j).engine;
    }
    return engine_config_from_json(j);
}

void print_report(const ValidationReport& report) {
    if (report.feasible()) {
        std::cout << "feasible\n";
        return;
    }
    std::cout << "infeasible\n";
    for (const auto& v : report.violations) {
        std::cout << "  " << v.code << " [" << v.field << "] " << v.message << '\n';
    }
}

/// "kind" or "kind:param", e.g. "deterministic-tournament:3", "roulette-wheel:2.0".
SelectorSpec parse_selector_flag(const std::string& text) {
    const auto colon = text.find(':');
    Json j;
    j["kind"] = text.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string arg = text.substr(colon + 1);
        const std::string kind = j["kind"];
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
        if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
            throw Error(errc::invalid_argument, "bad selector parameter \"" + arg + "\"");
        }
        if (kind == "deterministic-tournament") {
            if (value < 0.0 || value != static_cast<double>(static_cast<std::uint64_t>(value))) {
                throw Error(errc::invalid_argument, "tournament size must be a non-negative integer");
            }
            j["tournamentSize"] = static_cast<std::uint64_t>(value);
        } else if (kind == "stochastic-tournament") {
            j["probability"] = value;
        } else {
            j["pressure"] = value;
        }
    }
    return selector_from_json(j, "selector");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unified evolution-engine workbench"};
    app.require_subcommand(1);

    std::string file;

    auto* validate_cmd = app.add_subcommand("validate", "Check an engine config for feasibility");
    validate_cmd->add_option("file", file, "experiment or engine-config JSON")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Print the paradigm of an engine config");
    classify_cmd->add_option("file", file, "experiment or engine-config JSON")->required();

    auto* run_cmd = app.add_subcommand("run", "Run an experiment; CSV to stdout, summary to stderr");
    run_cmd->add_option("file", file, "experiment JSON")->required();
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_gen;
    std::optional<double> target;
    std::optional<std::size_t> stagnation;
    run_cmd->add_option("--seed", seed, "override run.seed");
    run_cmd->add_option("--max-gen", max_gen, "override run.maxGenerations");
    run_cmd->add_option("--target", target, "override run.targetFitness");
    run_cmd->add_option("--stagnation", stagnation, "override run.stagnationGenerations");

    auto* preset_cmd = app.add_subcommand("preset", "Print the engine config of a classical paradigm");
    std::string paradigm_token;
    PresetParams params;
    std::string selector_text;
    std::string sense_token = "maximize";
    preset_cmd->add_option("paradigm", paradigm_token, "gga | ssga | es-comma | es-plus | ep")->required();
    preset_cmd->add_option("--pop", params.pop_size, "population size (P or mu)")->default_val(100);
    preset_cmd->add_option("--lambda", params.lambda, "offspring count for the ES engines");
    preset_cmd->add_option("--offspring", params.offspring_count, "offspring per generation for SSGA")
        ->default_val(1);
    preset_cmd->add_option("--selector", selector_text, "GA selector, kind[:param]");
    preset_cmd->add_option("--weak-elite", params.weak_elite, "weak elite size for GGA")->default_val(0);
    preset_cmd->add_option("--ep-tournament", params.ep_tournament_size, "EP tournament size")->default_val(6);
    preset_cmd->add_option("--sense", sense_token, "maximize | minimize")->check(CLI::IsMember({"maximize", "minimize"}));

    auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
    ServiceOptions service_options;
    serve_cmd->add_option("--host", service_options.host, "bind address")->default_val("127.0.0.1");
    serve_cmd->add_option("--port", service_options.port, "bind port")->default_val(8571);
    serve_cmd->add_option("--cors-origin", service_options.cors_origin, "Access-Control-Allow-Origin value")
        ->default_val("*");
    serve_cmd->add_option("--static", service_options.static_dir, "directory of panel assets to serve at /");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            const ValidationReport report = validate(load_engine(file));
            print_report(report);
            return report.feasible() ? 0 : 1;
        }

        if (classify_cmd->parsed()) {
            std::cout << to_token(classify(load_engine(file))) << '\n';
            return 0;
        }

        if (run_cmd->parsed()) {
            Experiment experiment = parse_experiment_file(file);
            if (seed) {
                experiment.run.seed = *seed;
            }
            if (max_gen) {
                experiment.run.max_generations = *max_gen;
            }
            if (target) {
                experiment.run.target_fitness = *target;
            }
            if (stagnation) {
                experiment.run.stagnation_generations = *stagnation;
            }
            check_run_config(experiment.run);
            const ValidationReport report = validate(experiment.engine);
            if (!report.feasible()) {
                std::cerr << "engine config is infeasible:\n";
                for (const auto& v : report.violations) {
                    std::cerr << "  " << v.code << " [" << v.field << "] " << v.message << '\n';
                }
                return 1;
            }
            std::cout << csv_header << '\n';
            const ExperimentResult result =
                run_experiment(experiment, [](const GenerationStats& s) { write_csv_row(std::cout, s); });
            std::cout.flush();
            const GenerationStats& last = result.history.back();
            std::cerr << "stop=" << to_token(result.stop_reason) << " generations=" << last.generation
                      << " best=" << format_number(result.record["bestIndividual"]["fitness"].get<double>())
                      << " evaluations=" << last.evaluations << '\n';
            return result.stop_reason == StopReason::target_reached ? 0 : 2;
        }

        if (preset_cmd->parsed()) {
            const auto paradigm = parse_paradigm(paradigm_token);
            if (!paradigm) {
                throw Error(errc::invalid_argument, "unknown paradigm \"" + paradigm_token + "\"");
            }
            if (!selector_text.empty()) {
                params.selector = parse_selector_flag(selector_text);
            }
            const ObjectiveSense sense = sense_token == "minimize" ? ObjectiveSense::minimize : ObjectiveSense::maximize;
            std::cout << to_json(apply_preset(*paradigm, params, sense)).dump(2) << '\n';
            return 0;
        }

        if (serve_cmd->parsed()) {
            Service service(service_options);
            std::cerr << "listening on http://" << service_options.host << ':' << service_options.port << '\n';
            if (!service.listen()) {
                std::cerr << "error: cannot listen on " << service_options.host << ':' << service_options.port
                          << '\n';
                return 1;
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
