#include <string>

#include <gtest/gtest.h>

#include <evoengine/presets.hpp>

#include "fixtures.hpp"

using namespace evoengine;
using evoengine::testing::panel_config;

namespace {

std::string code_of(Paradigm p, const PresetParams& params) {
    try {
        (void)apply_preset(p, params);
    } catch (const Error& e) {
        return e.code();
    }
    return {};
}

} // namespace

TEST(Paradigm, Tokens) {
    for (auto p : {Paradigm::generational_ga, Paradigm::steady_state_ga, Paradigm::es_comma, Paradigm::es_plus,
                   Paradigm::ep, Paradigm::custom}) {
        EXPECT_EQ(parse_paradigm(to_token(p)), p);
    }
    EXPECT_EQ(parse_paradigm("GGA"), std::nullopt);
    EXPECT_EQ(to_token(Paradigm::es_plus), "es-plus");
}

TEST(ApplyPreset, GenerationalGa) {
    const EngineConfig c = apply_preset(Paradigm::generational_ga, {.pop_size = 50, .weak_elite = 1});
    const ResolvedSizes s = resolve_sizes(c);
    EXPECT_EQ(s.offspring, 50u);
    EXPECT_EQ(s.reduced_nep, 0u);
    EXPECT_EQ(s.reduced_offspring, 50u);
    EXPECT_EQ(c.elitism.mode, ElitismMode::weak);
    EXPECT_EQ(c.elitism.elite_size, 1u);
    EXPECT_EQ(c.parent_selector, SelectorSpec{selectors::DeterministicTournament{2}});
}

TEST(ApplyPreset, SteadyState) {
    const EngineConfig c = apply_preset(Paradigm::steady_state_ga, {.pop_size = 10, .offspring_count = 2});
    const ResolvedSizes s = resolve_sizes(c);
    EXPECT_EQ(s.offspring, 2u);
    EXPECT_EQ(s.reduced_nep, 8u);
    EXPECT_EQ(s.reduced_offspring, 2u);
    EXPECT_EQ(s.survivors, 10u);
    EXPECT_EQ(c.nep_reducer, ReducerSpec{reducers::DeterministicTournament{ssga_reducer_tournament_size}});
}

TEST(ApplyPreset, EvolutionStrategies) {
    const EngineConfig plus = apply_preset(Paradigm::es_plus, {.pop_size = 5, .lambda = 35}, ObjectiveSense::minimize);
    EXPECT_EQ(plus.sense, ObjectiveSense::minimize);
    EXPECT_EQ(resolve_sizes(plus).intermed, 40u);
    EXPECT_EQ(plus.parent_selector, SelectorSpec{selectors::Sequential{}});
    const EngineConfig comma = apply_preset(Paradigm::es_comma, {.pop_size = 5, .lambda = 35});
    EXPECT_EQ(resolve_sizes(comma).intermed, 35u);
    EXPECT_EQ(resolve_sizes(comma).reduced_nep, 0u);
}

TEST(ApplyPreset, EvolutionaryProgramming) {
    const EngineConfig c = apply_preset(Paradigm::ep, {.pop_size = 20, .ep_tournament_size = 8});
    EXPECT_EQ(resolve_sizes(c).intermed, 40u);
    EXPECT_EQ(c.final_reducer, ReducerSpec{reducers::EpTournament{8}});
}

TEST(ApplyPreset, Errors) {
    EXPECT_EQ(code_of(Paradigm::custom, {}), "NOT_A_PRESET");
    EXPECT_EQ(code_of(Paradigm::es_comma, {.pop_size = 10, .lambda = 5}), "INFEASIBLE_PRESET");
    EXPECT_EQ(code_of(Paradigm::es_plus, {.pop_size = 10, .lambda = 0}), "INVALID_ARGUMENT");
    EXPECT_EQ(code_of(Paradigm::steady_state_ga, {.pop_size = 2, .offspring_count = 2}), "INFEASIBLE_PRESET");
    EXPECT_EQ(code_of(Paradigm::steady_state_ga, {.pop_size = 5, .offspring_count = 0}), "INFEASIBLE_PRESET");
    EXPECT_EQ(code_of(Paradigm::generational_ga, {.pop_size = 0}), "INVALID_ARGUMENT");
    EXPECT_EQ(code_of(Paradigm::generational_ga, {.pop_size = 3, .weak_elite = 4}), "INFEASIBLE_PRESET");
}

TEST(Classify, PresetRoundTripGrid) {
    const auto grid = evoengine::testing::preset_grid();
    EXPECT_GE(grid.size(), 30u);
    for (const auto& [paradigm, params] : grid) {
        for (auto sense : {ObjectiveSense::maximize, ObjectiveSense::minimize}) {
            const EngineConfig c = apply_preset(paradigm, params, sense);
            ASSERT_TRUE(validate(c).feasible()) << to_token(paradigm) << " P=" << params.pop_size;
            EXPECT_EQ(classify(c), paradigm) << to_token(paradigm) << " P=" << params.pop_size
                                             << " lambda=" << params.lambda << " k=" << params.offspring_count;
        }
    }
}

TEST(Classify, GgaAcrossSelectors) {
    for (SelectorSpec s : {SelectorSpec{selectors::RouletteWheel{2}}, SelectorSpec{selectors::LinearRanking{1.5}},
                           SelectorSpec{selectors::StochasticTournament{0.9}}, SelectorSpec{selectors::Random{}}}) {
        EXPECT_EQ(classify(apply_preset(Paradigm::generational_ga, {.pop_size = 20, .selector = s})),
                  Paradigm::generational_ga);
    }
}

TEST(Classify, SingleFieldEdits) {
    EngineConfig c = apply_preset(Paradigm::es_plus, {.pop_size = 10, .lambda = 20});
    c.reduced_nep_size = SizeParam::absolute(0);
    EXPECT_EQ(classify(c), Paradigm::es_comma);

    c = apply_preset(Paradigm::es_plus, {.pop_size = 10, .lambda = 20});
    c.reduced_nep_size = SizeParam::absolute(5);
    EXPECT_EQ(classify(c), Paradigm::custom);

    c = apply_preset(Paradigm::es_plus, {.pop_size = 10, .lambda = 20});
    c.fertile = SizeParam::absolute(8);
    EXPECT_EQ(classify(c), Paradigm::custom);

    c = apply_preset(Paradigm::generational_ga, {.pop_size = 10});
    c.elitism = {ElitismMode::strong, 1};
    c.reduced_offspring_size = SizeParam::absolute(9);
    EXPECT_EQ(classify(c), Paradigm::custom);

    c = apply_preset(Paradigm::steady_state_ga, {.pop_size = 10, .offspring_count = 3});
    c.nep_reducer = reducers::Random{};
    EXPECT_EQ(classify(c), Paradigm::custom);

    c = apply_preset(Paradigm::ep, {.pop_size = 10});
    c.final_reducer = reducers::Sequential{};
    EXPECT_EQ(classify(c), Paradigm::es_plus);

    c = apply_preset(Paradigm::ep, {.pop_size = 10});
    c.parent_selector = selectors::Random{};
    EXPECT_EQ(classify(c), Paradigm::ep);
}

TEST(Classify, ReferencePanelIsCustom) {
    EXPECT_EQ(classify(panel_config()), Paradigm::custom);
}

TEST(Classify, PercentSizesResolveBeforeMatching) {
    EngineConfig c = apply_preset(Paradigm::generational_ga, {.pop_size = 40});
    c.offspring_size = SizeParam::percent(100);
    c.reduced_offspring_size = SizeParam::percent(100);
    c.fertile = SizeParam::percent(50);
    EXPECT_EQ(classify(c), Paradigm::generational_ga);
}

TEST(Classify, RejectsInfeasible) {
    EngineConfig c = panel_config();
    c.reduced_nep_size = SizeParam::absolute(95);
    try {
        (void)classify(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "INFEASIBLE_CONFIG");
    }
}
