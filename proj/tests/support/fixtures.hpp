#pragma once

// Shared configurations and generators for the test suites.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <evoengine/config.hpp>
#include <evoengine/presets.hpp>
#include <evoengine/problems.hpp>

namespace evoengine::testing {

/// The reference panel: P=100, 80% fertile, roulette 2.0, 150 offspring,
/// N.E.P. -> 40, offspring -> 100, EP tournament T=6, strong elitism 10.
inline EngineConfig panel_config() {
    EngineConfig c;
    c.pop_size = 100;
    c.sense = ObjectiveSense::maximize;
    c.fertile = SizeParam::percent(80);
    c.offspring_size = SizeParam::absolute(150);
    c.parent_selector = selectors::RouletteWheel{2.0};
    c.nep_reducer = reducers::Sequential{};
    c.reduced_nep_size = SizeParam::absolute(40);
    c.offspring_reducer = reducers::Sequential{};
    c.reduced_offspring_size = SizeParam::absolute(100);
    c.final_reducer = reducers::EpTournament{6};
    c.elitism = {ElitismMode::strong, 10};
    return c;
}

inline ProblemSpec onemax_spec(std::size_t dimension, double flip_rate) {
    ProblemSpec p;
    p.kind = ProblemKind::onemax;
    p.dimension = dimension;
    p.bit_flip_rate = flip_rate;
    return p;
}

inline ProblemSpec real_spec(ProblemKind kind, std::size_t dimension, double low, double high, double sigma) {
    ProblemSpec p;
    p.kind = kind;
    p.dimension = dimension;
    p.low = low;
    p.high = high;
    p.mutation_sigma = sigma;
    return p;
}

inline SelectorSpec random_selector(std::mt19937_64& gen, bool allow_bad_params = false) {
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const bool bad = allow_bad_params && u(gen) < 0.1;
    switch (kind(gen)) {
    case 0:
        return selectors::RouletteWheel{bad ? 1.0 : 1.0 + 0.01 + 4.0 * u(gen)};
    case 1:
        return selectors::LinearRanking{bad ? 2.5 : 1.0 + 0.01 + 0.99 * u(gen)};
    case 2:
        return selectors::DeterministicTournament{bad ? 1 : 2 + static_cast<std::size_t>(gen() % 5)};
    case 3:
        return selectors::StochasticTournament{bad ? 0.5 : 0.51 + 0.49 * u(gen)};
    case 4:
        return selectors::Random{};
    default:
        return selectors::Sequential{};
    }
}

inline ReducerSpec random_reducer(std::mt19937_64& gen, bool allow_bad_params = false) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const bool bad = allow_bad_params && u(gen) < 0.1;
    switch (kind(gen)) {
    case 0:
        return reducers::Sequential{};
    case 1:
        return reducers::Random{};
    case 2:
        return reducers::DeterministicTournament{bad ? 1 : 2 + static_cast<std::size_t>(gen() % 5)};
    case 3:
        return reducers::StochasticTournament{bad ? 1.5 : 0.51 + 0.49 * u(gen)};
    default:
        return reducers::EpTournament{bad ? 0 : 2 + static_cast<std::size_t>(gen() % 8)};
    }
}

inline SizeParam random_size(std::mt19937_64& gen, std::size_t upstream_hint) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(gen) < 0.5) {
        return SizeParam::percent(std::round(u(gen) * 1000.0) / 10.0);
    }
    return SizeParam::absolute(static_cast<std::size_t>(u(gen) * 1.3 * static_cast<double>(upstream_hint + 1)));
}

/// Arbitrary configs over small populations; a sizeable fraction is infeasible.
inline EngineConfig random_config(std::mt19937_64& gen, bool allow_bad_params = true) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EngineConfig c;
    c.pop_size = 1 + gen() % 30;
    c.sense = u(gen) < 0.5 ? ObjectiveSense::maximize : ObjectiveSense::minimize;
    c.fertile = u(gen) < 0.5 ? SizeParam::percent(100) : random_size(gen, c.pop_size);
    c.offspring_size = random_size(gen, 2 * c.pop_size);
    c.parent_selector = random_selector(gen, allow_bad_params);
    c.nep_reducer = random_reducer(gen, allow_bad_params);
    c.offspring_reducer = random_reducer(gen, allow_bad_params);
    c.final_reducer = random_reducer(gen, allow_bad_params);
    c.elitism.mode = u(gen) < 0.5 ? ElitismMode::strong : ElitismMode::weak;
    c.elitism.elite_size = u(gen) < 0.4 ? 0 : gen() % (c.pop_size + 2);
    c.reduced_nep_size = random_size(gen, c.pop_size);
    c.reduced_offspring_size = u(gen) < 0.4 ? SizeParam::percent(100) : random_size(gen, 2 * c.pop_size);
    return c;
}

/// A feasible config with strong elitism of size `elite`, by rejection.
inline EngineConfig random_strong_elitist_config(std::mt19937_64& gen, std::size_t elite) {
    while (true) {
        EngineConfig c = random_config(gen, false);
        if (c.pop_size < elite) {
            continue;
        }
        c.elitism = {ElitismMode::strong, elite};
        if (validate(c).feasible()) {
            return c;
        }
    }
}

struct PresetCase {
    Paradigm paradigm;
    PresetParams params;
};

/// Preset grid over P in {2, 10, 100}: lambda in {P, 2P, 7P} for both ES
/// engines, offspring in {1, 2, P-1} for SSGA (points with offspring >= P
/// are outside the SSGA domain and skipped), GGA with and without a weak
/// elite, EP with its default tournament.
inline std::vector<PresetCase> preset_grid() {
    std::vector<PresetCase> cases;
    for (std::size_t P : {2u, 10u, 100u}) {
        for (std::size_t weak : {0u, 1u}) {
            cases.push_back({Paradigm::generational_ga, {.pop_size = P, .weak_elite = weak}});
        }
        for (std::size_t k : {std::size_t{1}, std::size_t{2}, P - 1}) {
            if (k < P) {
                cases.push_back({Paradigm::steady_state_ga, {.pop_size = P, .offspring_count = k}});
            }
        }
        for (std::size_t lambda : {P, 2 * P, 7 * P}) {
            cases.push_back({Paradigm::es_plus, {.pop_size = P, .lambda = lambda}});
            cases.push_back({Paradigm::es_comma, {.pop_size = P, .lambda = lambda}});
        }
        cases.push_back({Paradigm::ep, {.pop_size = P}});
    }
    return cases;
}

} // namespace evoengine::testing
