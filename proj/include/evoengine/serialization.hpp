#pragma once

/// @file serialization.hpp
/// @brief Canonical JSON form of every exchanged value. One format serves the
/// experiment files, the HTTP API, and the panel.
///
/// Parsing is strict: unknown fields are rejected, operator parameters must be
/// present exactly when their kind needs them, and every error names the
/// offending field path. Range checks on values are left to validate().

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <evoengine/config.hpp>
#include <evoengine/engine.hpp>
#include <evoengine/error.hpp>
#include <evoengine/presets.hpp>
#include <evoengine/problems.hpp>

namespace evoengine {

using Json = nlohmann::ordered_json;

namespace json_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
    throw Error(errc::schema_error, (path.empty() ? std::string("$") : path) + ": " + message);
}

inline std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline void expect_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            fail(join(path, key), "unknown field");
        }
    }
}

inline const Json& field(const Json& j, std::string_view key, const std::string& path) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) {
        fail(join(path, key), "missing required field");
    }
    return *it;
}

inline double number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

inline std::uint64_t count(const Json& j, const std::string& path) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer()) {
        fail(path, "expected a non-negative integer");
    }
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (v >= 0.0 && std::floor(v) == v && v < 1.8e19) {
            return static_cast<std::uint64_t>(v);
        }
    }
    fail(path, "expected a non-negative integer");
}

inline std::string token(const Json& j, const std::string& path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

} // namespace json_detail

// --- core model ---

inline Json to_json(const SizeParam& p) {
    Json j;
    j["mode"] = to_token(p.mode);
    if (p.mode == SizeParam::Mode::absolute && p.well_formed()) {
        j["value"] = static_cast<std::uint64_t>(p.value);
    } else {
        j["value"] = p.value;
    }
    return j;
}

inline SizeParam size_param_from_json(const Json& j, const std::string& path) {
    using namespace json_detail;
    expect_object(j, path, {"mode", "value"});
    const std::string mode = token(field(j, "mode", path), join(path, "mode"));
    SizeParam p;
    if (mode == "absolute") {
        p.mode = SizeParam::Mode::absolute;
    } else if (mode == "percent") {
        p.mode = SizeParam::Mode::percent;
    } else {
        fail(join(path, "mode"), "expected \"absolute\" or \"percent\", got \"" + mode + "\"");
    }
    p.value = number(field(j, "value", path), join(path, "value"));
    return p;
}

inline Json to_json(const SelectorSpec& spec) {
    Json j;
    j["kind"] = kind_token(spec);
    std::visit(
        [&j](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, selectors::RouletteWheel> || std::is_same_v<S, selectors::LinearRanking>) {
                j["pressure"] = s.pressure;
            } else if constexpr (std::is_same_v<S, selectors::DeterministicTournament>) {
                j["tournamentSize"] = s.tournament_size;
            } else if constexpr (std::is_same_v<S, selectors::StochasticTournament>) {
                j["probability"] = s.probability;
            }
        },
        spec);
    return j;
}

inline SelectorSpec selector_from_json(const Json& j, const std::string& path) {
    using namespace json_detail;
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const std::string kind = token(field(j, "kind", path), join(path, "kind"));
    if (kind == "roulette-wheel" || kind == "linear-ranking") {
        expect_object(j, path, {"kind", "pressure"});
        const double pressure = number(field(j, "pressure", path), join(path, "pressure"));
        if (kind == "roulette-wheel") {
            return selectors::RouletteWheel{pressure};
        }
        return selectors::LinearRanking{pressure};
    }
    if (kind == "deterministic-tournament") {
        expect_object(j, path, {"kind", "tournamentSize"});
        return selectors::DeterministicTournament{
            count(field(j, "tournamentSize", path), join(path, "tournamentSize"))};
    }
    if (kind == "stochastic-tournament") {
        expect_object(j, path, {"kind", "probability"});
        return selectors::StochasticTournament{number(field(j, "probability", path), join(path, "probability"))};
    }
    if (kind == "random") {
        expect_object(j, path, {"kind"});
        return selectors::Random{};
    }
    if (kind == "sequential") {
        expect_object(j, path, {"kind"});
        return selectors::Sequential{};
    }
    fail(join(path, "kind"), "unknown selector kind \"" + kind + "\"");
}

inline Json to_json(const ReducerSpec& spec) {
    Json j;
    j["kind"] = kind_token(spec);
    std::visit(
        [&j](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, reducers::DeterministicTournament> ||
                          std::is_same_v<R, reducers::EpTournament>) {
                j["tournamentSize"] = r.tournament_size;
            } else if constexpr (std::is_same_v<R, reducers::StochasticTournament>) {
                j["probability"] = r.probability;
            }
        },
        spec);
    return j;
}

inline ReducerSpec reducer_from_json(const Json& j, const std::string& path) {
    using namespace json_detail;
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const std::string kind = token(field(j, "kind", path), join(path, "kind"));
    if (kind == "sequential") {
        expect_object(j, path, {"kind"});
        return reducers::Sequential{};
    }
    if (kind == "random") {
        expect_object(j, path, {"kind"});
        return reducers::Random{};
    }
    if (kind == "deterministic-tournament" || kind == "ep-tournament") {
        expect_object(j, path, {"kind", "tournamentSize"});
        const auto t = count(field(j, "tournamentSize", path), join(path, "tournamentSize"));
        if (kind == "ep-tournament") {
            return reducers::EpTournament{t};
        }
        return reducers::DeterministicTournament{t};
    }
    if (kind == "stochastic-tournament") {
        expect_object(j, path, {"kind", "probability"});
        return reducers::StochasticTournament{number(field(j, "probability", path), join(path, "probability"))};
    }
    fail(join(path, "kind"), "unknown reducer kind \"" + kind + "\"");
}

inline ObjectiveSense sense_from_json(const Json& j, const std::string& path) {
    const std::string s = json_detail::token(j, path);
    if (s == "maximize") {
        return ObjectiveSense::maximize;
    }
    if (s == "minimize") {
        return ObjectiveSense::minimize;
    }
    json_detail::fail(path, "expected \"maximize\" or \"minimize\", got \"" + s + "\"");
}

inline Json to_json(const EngineConfig& c) {
    Json j;
    j["popSize"] = c.pop_size;
    j["sense"] = to_token(c.sense);
    j["fertile"] = to_json(c.fertile);
    j["offspringSize"] = to_json(c.offspring_size);
    j["parentSelector"] = to_json(c.parent_selector);
    j["nepReducer"] = to_json(c.nep_reducer);
    j["reducedNepSize"] = to_json(c.reduced_nep_size);
    j["offspringReducer"] = to_json(c.offspring_reducer);
    j["reducedOffspringSize"] = to_json(c.reduced_offspring_size);
    j["finalReducer"] = to_json(c.final_reducer);
    j["elitism"] = {{"mode", to_token(c.elitism.mode)}, {"eliteSize", c.elitism.elite_size}};
    return j;
}

inline EngineConfig engine_config_from_json(const Json& j, const std::string& path = "") {
    using namespace json_detail;
    expect_object(j, path,
                  {"popSize", "sense", "fertile", "offspringSize", "parentSelector", "nepReducer", "reducedNepSize",
                   "offspringReducer", "reducedOffspringSize", "finalReducer", "elitism"});
    EngineConfig c;
    c.pop_size = count(field(j, "popSize", path), join(path, "popSize"));
    c.sense = sense_from_json(field(j, "sense", path), join(path, "sense"));
    c.fertile = size_param_from_json(field(j, "fertile", path), join(path, "fertile"));
    c.offspring_size = size_param_from_json(field(j, "offspringSize", path), join(path, "offspringSize"));
    c.parent_selector = selector_from_json(field(j, "parentSelector", path), join(path, "parentSelector"));
    c.nep_reducer = reducer_from_json(field(j, "nepReducer", path), join(path, "nepReducer"));
    c.reduced_nep_size = size_param_from_json(field(j, "reducedNepSize", path), join(path, "reducedNepSize"));
    c.offspring_reducer = reducer_from_json(field(j, "offspringReducer", path), join(path, "offspringReducer"));
    c.reduced_offspring_size =
        size_param_from_json(field(j, "reducedOffspringSize", path), join(path, "reducedOffspringSize"));
    c.final_reducer = reducer_from_json(field(j, "finalReducer", path), join(path, "finalReducer"));

    const std::string epath = join(path, "elitism");
    const Json& e = field(j, "elitism", path);
    expect_object(e, epath, {"mode", "eliteSize"});
    const std::string mode = token(field(e, "mode", epath), join(epath, "mode"));
    if (mode == "strong") {
        c.elitism.mode = ElitismMode::strong;
    } else if (mode == "weak") {
        c.elitism.mode = ElitismMode::weak;
    } else {
        fail(join(epath, "mode"), "expected \"strong\" or \"weak\", got \"" + mode + "\"");
    }
    c.elitism.elite_size = count(field(e, "eliteSize", epath), join(epath, "eliteSize"));
    return c;
}

inline Json to_json(const ValidationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"code", v.code}, {"message", v.message}, {"field", v.field}});
    }
    return {{"feasible", report.feasible()}, {"violations", std::move(violations)}};
}

inline Json to_json(const ResolvedSizes& s) {
    return {{"pop", s.pop},
            {"fertile", s.fertile},
            {"offspring", s.offspring},
            {"eliteSeats", s.elite_seats},
            {"nep", s.nep},
            {"reducedNep", s.reduced_nep},
            {"reducedOffspring", s.reduced_offspring},
            {"intermed", s.intermed},
            {"survivors", s.survivors},
            {"newPop", s.pop}};
}

// --- presets ---

inline Paradigm paradigm_from_json(const Json& j, const std::string& path) {
    const std::string t = json_detail::token(j, path);
    if (const auto p = parse_paradigm(t)) {
        return *p;
    }
    json_detail::fail(path, "unknown paradigm \"" + t + "\"");
}

inline PresetParams preset_params_from_json(const Json& j, const std::string& path) {
    using namespace json_detail;
    expect_object(j, path, {"popSize", "lambda", "offspringCount", "selector", "weakElite", "epTournamentSize"});
    PresetParams p;
    p.pop_size = count(field(j, "popSize", path), join(path, "popSize"));
    if (j.contains("lambda")) {
        p.lambda = count(j["lambda"], join(path, "lambda"));
    }
    if (j.contains("offspringCount")) {
        p.offspring_count = count(j["offspringCount"], join(path, "offspringCount"));
    }
    if (j.contains("selector")) {
        p.selector = selector_from_json(j["selector"], join(path, "selector"));
    }
    if (j.contains("weakElite")) {
        p.weak_elite = count(j["weakElite"], join(path, "weakElite"));
    }
    if (j.contains("epTournamentSize")) {
        p.ep_tournament_size = count(j["epTournamentSize"], join(path, "epTournamentSize"));
    }
    return p;
}

// --- problems ---

inline Json to_json(const ProblemSpec& p) {
    Json j;
    j["kind"] = to_token(p.kind);
    j["dimension"] = p.dimension;
    if (p.is_bitstring()) {
        j["bitFlipRate"] = p.bit_flip_rate;
    } else {
        j["bounds"] = {p.low, p.high};
        j["mutationSigma"] = p.mutation_sigma;
    }
    return j;
}

inline ProblemSpec problem_from_json(const Json& j, const std::string& path = "") {
    using namespace json_detail;
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    ProblemSpec p;
    const std::string kind = token(field(j, "kind", path), join(path, "kind"));
    if (kind == "onemax") {
        p.kind = ProblemKind::onemax;
    } else if (kind == "sphere") {
        p.kind = ProblemKind::sphere;
    } else if (kind == "rastrigin") {
        p.kind = ProblemKind::rastrigin;
    } else {
        fail(join(path, "kind"), "unknown problem kind \"" + kind + "\"");
    }
    p.dimension = count(field(j, "dimension", path), join(path, "dimension"));
    if (p.is_bitstring()) {
        expect_object(j, path, {"kind", "dimension", "bitFlipRate"});
        p.bit_flip_rate = number(field(j, "bitFlipRate", path), join(path, "bitFlipRate"));
    } else {
        expect_object(j, path, {"kind", "dimension", "bounds", "mutationSigma"});
        const Json& b = field(j, "bounds", path);
        if (!b.is_array() || b.size() != 2) {
            fail(join(path, "bounds"), "expected [low, high]");
        }
        p.low = number(b[0], join(path, "bounds[0]"));
        p.high = number(b[1], join(path, "bounds[1]"));
        p.mutation_sigma = number(field(j, "mutationSigma", path), join(path, "mutationSigma"));
    }
    try {
        check_problem(p);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return p;
}

// --- runs ---

inline Json to_json(const RunConfig& r) {
    Json j;
    j["seed"] = r.seed;
    j["maxGenerations"] = r.max_generations;
    if (r.target_fitness) {
        j["targetFitness"] = *r.target_fitness;
    }
    if (r.stagnation_generations) {
        j["stagnationGenerations"] = *r.stagnation_generations;
    }
    j["crossoverProbability"] = r.crossover_probability;
    j["mutationProbability"] = r.mutation_probability;
    return j;
}

inline RunConfig run_config_from_json(const Json& j, const std::string& path = "") {
    using namespace json_detail;
    expect_object(j, path,
                  {"seed", "maxGenerations", "targetFitness", "stagnationGenerations", "crossoverProbability",
                   "mutationProbability"});
    RunConfig r;
    r.seed = count(field(j, "seed", path), join(path, "seed"));
    r.max_generations = count(field(j, "maxGenerations", path), join(path, "maxGenerations"));
    if (j.contains("targetFitness") && !j["targetFitness"].is_null()) {
        r.target_fitness = number(j["targetFitness"], join(path, "targetFitness"));
    }
    if (j.contains("stagnationGenerations") && !j["stagnationGenerations"].is_null()) {
        r.stagnation_generations = count(j["stagnationGenerations"], join(path, "stagnationGenerations"));
    }
    if (j.contains("crossoverProbability")) {
        r.crossover_probability = number(j["crossoverProbability"], join(path, "crossoverProbability"));
    }
    if (j.contains("mutationProbability")) {
        r.mutation_probability = number(j["mutationProbability"], join(path, "mutationProbability"));
    }
    try {
        check_run_config(r);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return r;
}

inline Json to_json(const GenerationStats& s) {
    return {{"generation", s.generation},
            {"best", s.best},
            {"mean", s.mean},
            {"worst", s.worst},
            {"evaluations", s.evaluations}};
}

template <typename Genome>
Json to_json(const Individual<Genome>& ind) {
    Json genome = Json::array();
    for (const auto& g : ind.genome) {
        genome.push_back(g);
    }
    return {{"genome", std::move(genome)}, {"fitness", ind.fitness}, {"birthGeneration", ind.birth_generation}};
}

template <typename Genome>
Json to_json(const RunRecord<Genome>& r) {
    Json history = Json::array();
    for (const auto& s : r.history) {
        history.push_back(to_json(s));
    }
    return {{"config", to_json(r.config)},
            {"runConfig", to_json(r.run_config)},
            {"history", std::move(history)},
            {"stopReason", to_token(r.stop_reason)},
            {"bestIndividual", to_json(r.best_individual)}};
}

/// Parses JSON text, mapping syntax errors onto SCHEMA_ERROR.
inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errc::schema_error, std::string("$: invalid JSON: ") + e.what());
    }
}

} // namespace evoengine
