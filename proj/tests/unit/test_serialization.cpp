#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <evoengine/experiment.hpp>
#include <evoengine/serialization.hpp>

#include "fixtures.hpp"

using namespace evoengine;
using evoengine::testing::panel_config;

namespace {

std::string schema_path(const std::string& text) {
    try {
        (void)experiment_from_json(parse_json_text(text));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "SCHEMA_ERROR") << e.what();
        return e.what();
    }
    ADD_FAILURE() << "accepted: " << text;
    return {};
}

Json panel_experiment() {
    std::ifstream in(std::string(EVOENGINE_SAMPLES_DIR) + "/panel.json");
    std::stringstream s;
    s << in.rdbuf();
    return parse_json_text(s.str());
}

} // namespace

TEST(Serialization, EngineConfigRoundTrip) {
    std::mt19937_64 gen(51);
    for (int i = 0; i < 2000; ++i) {
        const EngineConfig c = evoengine::testing::random_config(gen);
        const Json j = to_json(c);
        ASSERT_EQ(engine_config_from_json(j), c) << j.dump();
        ASSERT_EQ(engine_config_from_json(parse_json_text(j.dump())), c);
    }
}

TEST(Serialization, ProblemAndRunRoundTrip) {
    const ProblemSpec onemax = evoengine::testing::onemax_spec(12, 0.125);
    EXPECT_EQ(problem_from_json(to_json(onemax)), onemax);
    const ProblemSpec sphere = evoengine::testing::real_spec(ProblemKind::sphere, 3, -1.5, 2.25, 0.3);
    EXPECT_EQ(problem_from_json(to_json(sphere)), sphere);

    RunConfig r;
    r.seed = 18446744073709551615ull;
    r.max_generations = 7;
    r.target_fitness = -0.1;
    r.stagnation_generations = 4;
    r.crossover_probability = 0.25;
    EXPECT_EQ(run_config_from_json(to_json(r)), r);
}

TEST(Serialization, ShippedSampleParses) {
    const Experiment e = experiment_from_json(panel_experiment());
    EXPECT_EQ(e.engine, panel_config());
    EXPECT_EQ(e.problem.kind, ProblemKind::onemax);
    EXPECT_EQ(e.run.target_fitness, 64.0);
}

TEST(Serialization, SerializeOfParseIsSemanticallyIdentity) {
    for (const auto& entry : std::filesystem::directory_iterator(EVOENGINE_SAMPLES_DIR)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        std::ifstream in(entry.path());
        std::stringstream s;
        s << in.rdbuf();
        const Json original = parse_json_text(s.str());
        const Json again = to_json(experiment_from_json(original));
        EXPECT_EQ(experiment_from_json(again), experiment_from_json(original)) << entry.path();
        // numeric values compare by value, not by spelling
        EXPECT_EQ(nlohmann::json(again["engine"]), nlohmann::json(original["engine"])) << entry.path();
    }
}

TEST(Serialization, StrictnessErrors) {
    Json j = panel_experiment();

    Json bad = j;
    bad["engine"]["popsize"] = 3;
    EXPECT_NE(schema_path(bad.dump()).find("engine.popsize"), std::string::npos);

    bad = j;
    bad["engine"].erase("finalReducer");
    EXPECT_NE(schema_path(bad.dump()).find("engine.finalReducer"), std::string::npos);

    bad = j;
    bad["engine"]["parentSelector"] = {{"kind", "roulette-wheel"}};
    EXPECT_NE(schema_path(bad.dump()).find("pressure"), std::string::npos);

    bad = j;
    bad["engine"]["nepReducer"] = {{"kind", "sequential"}, {"tournamentSize", 3}};
    EXPECT_NE(schema_path(bad.dump()).find("tournamentSize"), std::string::npos);

    bad = j;
    bad["engine"]["fertile"]["mode"] = "fraction";
    EXPECT_NE(schema_path(bad.dump()).find("engine.fertile.mode"), std::string::npos);

    bad = j;
    bad["engine"]["popSize"] = -1;
    schema_path(bad.dump());
    bad["engine"]["popSize"] = 2.5;
    schema_path(bad.dump());
    bad["engine"]["popSize"] = "100";
    schema_path(bad.dump());

    bad = j;
    bad["engine"]["sense"] = "up";
    schema_path(bad.dump());

    bad = j;
    bad["problem"]["kind"] = "knapsack";
    schema_path(bad.dump());

    bad = j;
    bad["problem"]["bitFlipRate"] = 0;
    schema_path(bad.dump());

    bad = j;
    bad["run"]["maxGenerations"] = 0;
    schema_path(bad.dump());

    bad = j;
    bad["extra"] = true;
    schema_path(bad.dump());

    schema_path("");
    schema_path("[]");
    schema_path("{\"engine\": ");
}

TEST(Serialization, InfeasibleButWellFormedParses) {
    Json j = to_json(panel_config());
    j["reducedNepSize"]["value"] = 95;
    const EngineConfig c = engine_config_from_json(j);
    EXPECT_FALSE(validate(c).feasible());
}

TEST(Serialization, ValidationReportJson) {
    EngineConfig c = panel_config();
    c.reduced_nep_size = SizeParam::absolute(95);
    const Json j = to_json(validate(c));
    EXPECT_EQ(j["feasible"], false);
    EXPECT_EQ(j["violations"][0]["code"], "REDUCED_NEP_EXCEEDS_NEP");
    EXPECT_EQ(j["violations"][0]["field"], "reducedNepSize");
}

TEST(Serialization, ResolvedSizesJson) {
    const Json j = to_json(resolve_sizes(panel_config()));
    EXPECT_EQ(j["fertile"], 80);
    EXPECT_EQ(j["intermed"], 140);
    EXPECT_EQ(j["survivors"], 90);
    EXPECT_EQ(j["newPop"], 100);
}

TEST(Serialization, PresetParams) {
    const PresetParams p = preset_params_from_json(
        parse_json_text(R"({"popSize": 5, "lambda": 35, "selector": {"kind": "random"}})"), "params");
    EXPECT_EQ(p.pop_size, 5u);
    EXPECT_EQ(p.lambda, 35u);
    EXPECT_EQ(p.selector, SelectorSpec{selectors::Random{}});
    EXPECT_THROW((void)preset_params_from_json(parse_json_text(R"({"lambda": 3})"), "params"), Error);
    EXPECT_THROW((void)preset_params_from_json(parse_json_text(R"({"popSize": 3, "mu": 1})"), "params"), Error);
}

TEST(Serialization, MissingFileIsIoError) {
    try {
        (void)parse_experiment_file("/nonexistent/experiment.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "IO_ERROR");
    }
}

TEST(Csv, FormatAndRoundTrip) {
    std::ostringstream out;
    write_csv(out, {{0, 1.5, 0.1, -2, 10}, {1, 1.0 / 3.0, 1e-300, 0, 20}});
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "generation,best,mean,worst,evaluations");
    EXPECT_NE(text.find("\n0,1.5,0.1,-2,10\n"), std::string::npos);
    EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Experiment, RunIsReproducible) {
    Experiment e = experiment_from_json(panel_experiment());
    e.run.max_generations = 5;
    const auto a = run_experiment(e);
    const auto b = run_experiment(e);
    EXPECT_EQ(a.history, b.history);
    EXPECT_EQ(a.record.dump(), b.record.dump());
    EXPECT_EQ(a.record["history"].size(), a.history.size());
}
