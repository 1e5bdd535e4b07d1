#pragma once

/// @file presets.hpp
/// @brief The five classical evolution engines as EngineConfig values, and
/// the reverse mapping from any feasible config to its paradigm.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <evoengine/config.hpp>
#include <evoengine/error.hpp>

namespace evoengine {

enum class Paradigm { generational_ga, steady_state_ga, es_comma, es_plus, ep, custom };

[[nodiscard]] constexpr std::string_view to_token(Paradigm p) noexcept {
    switch (p) {
    case Paradigm::generational_ga:
        return "gga";
    case Paradigm::steady_state_ga:
        return "ssga";
    case Paradigm::es_comma:
        return "es-comma";
    case Paradigm::es_plus:
        return "es-plus";
    case Paradigm::ep:
        return "ep";
    case Paradigm::custom:
        return "custom";
    }
    return "custom";
}

[[nodiscard]] inline std::optional<Paradigm> parse_paradigm(std::string_view token) noexcept {
    for (Paradigm p : {Paradigm::generational_ga, Paradigm::steady_state_ga, Paradigm::es_comma, Paradigm::es_plus,
                       Paradigm::ep, Paradigm::custom}) {
        if (to_token(p) == token) {
            return p;
        }
    }
    return std::nullopt;
}

/// Each paradigm reads only its own fields: pop_size always; lambda for the
/// ES engines; offspring_count for SSGA; selector for the GA engines;
/// weak_elite for GGA; ep_tournament_size for EP.
struct PresetParams {
    std::size_t pop_size = 100;
    std::size_t lambda = 0;
    std::size_t offspring_count = 1;
    SelectorSpec selector = selectors::DeterministicTournament{2};
    std::size_t weak_elite = 0;
    std::size_t ep_tournament_size = 6;
};

/// Elimination tournament size used by the SSGA parent reducer.
inline constexpr std::size_t ssga_reducer_tournament_size = 2;

[[nodiscard]] inline EngineConfig apply_preset(Paradigm paradigm, const PresetParams& params,
                                               ObjectiveSense sense = ObjectiveSense::maximize) {
    const std::size_t P = params.pop_size;
    if (P < 1) {
        throw Error(errc::invalid_argument, "population size must be >= 1");
    }
    EngineConfig c;
    c.pop_size = P;
    c.sense = sense;
    c.fertile = SizeParam::absolute(P);
    c.nep_reducer = reducers::Sequential{};
    c.offspring_reducer = reducers::Sequential{};
    c.final_reducer = reducers::Sequential{};
    c.elitism = {ElitismMode::strong, 0};

    switch (paradigm) {
    case Paradigm::generational_ga:
        if (params.weak_elite > P) {
            throw Error(errc::infeasible_preset, "weak elite size exceeds population size");
        }
        c.parent_selector = params.selector;
        c.offspring_size = SizeParam::absolute(P);
        c.reduced_nep_size = SizeParam::absolute(0);
        c.reduced_offspring_size = SizeParam::absolute(P);
        if (params.weak_elite > 0) {
            c.elitism = {ElitismMode::weak, params.weak_elite};
        }
        return c;
    case Paradigm::steady_state_ga: {
        const std::size_t k = params.offspring_count;
        if (k < 1 || k >= P) {
            throw Error(errc::infeasible_preset, "steady-state offspring count must be in [1, pop size)");
        }
        c.parent_selector = params.selector;
        c.offspring_size = SizeParam::absolute(k);
        c.nep_reducer = reducers::DeterministicTournament{ssga_reducer_tournament_size};
        c.reduced_nep_size = SizeParam::absolute(P - k);
        c.reduced_offspring_size = SizeParam::absolute(k);
        return c;
    }
    case Paradigm::es_comma:
    case Paradigm::es_plus: {
        const std::size_t lambda = params.lambda;
        if (lambda < 1) {
            throw Error(errc::invalid_argument, "lambda must be >= 1");
        }
        if (paradigm == Paradigm::es_comma && lambda < P) {
            throw Error(errc::infeasible_preset, "(mu,lambda) needs lambda >= mu to fill the new population");
        }
        c.parent_selector = selectors::Sequential{};
        c.offspring_size = SizeParam::absolute(lambda);
        c.reduced_offspring_size = SizeParam::absolute(lambda);
        c.reduced_nep_size = SizeParam::absolute(paradigm == Paradigm::es_plus ? P : 0);
        return c;
    }
    case Paradigm::ep:
        c.parent_selector = selectors::Sequential{};
        c.offspring_size = SizeParam::absolute(P);
        c.reduced_nep_size = SizeParam::absolute(P);
        c.reduced_offspring_size = SizeParam::absolute(P);
        c.final_reducer = reducers::EpTournament{params.ep_tournament_size};
        return c;
    case Paradigm::custom:
        break;
    }
    throw Error(errc::not_a_preset, "custom is not a preset engine");
}

/// The first paradigm whose defining shape matches, tested in the order
/// GGA, SSGA, (mu+lambda), (mu,lambda), EP; otherwise Custom.
///
/// Reducers that are asked to keep their whole input are inactive, so their
/// kind is never part of a shape. GGA excludes the Sequential selector: with
/// it, GGA and (mu,mu)-ES are the same engine, and it reads as the ES.
[[nodiscard]] inline Paradigm classify(const EngineConfig& config) {
    const ValidationReport report = validate(config);
    if (!report.feasible()) {
        throw Error(errc::infeasible_config, "cannot classify an infeasible config (" +
                                                 report.violations.front().code + ")");
    }
    const ResolvedSizes s = resolve_sizes(config);
    const std::size_t P = s.pop;
    const bool no_elitism = !config.elitism.active();
    const bool sequential_selector = std::holds_alternative<selectors::Sequential>(config.parent_selector);
    const bool final_inactive = s.intermed == s.survivors;

    if (!sequential_selector && s.offspring == P && s.reduced_nep == 0 && s.reduced_offspring == P &&
        (no_elitism || config.elitism.mode == ElitismMode::weak)) {
        return Paradigm::generational_ga;
    }

    const bool tournament_nep = std::holds_alternative<reducers::DeterministicTournament>(config.nep_reducer) ||
                                std::holds_alternative<reducers::StochasticTournament>(config.nep_reducer);
    if (s.fertile == P && s.offspring >= 1 && s.offspring < P && tournament_nep && s.reduced_nep == P - s.offspring &&
        s.reduced_offspring == s.offspring && final_inactive && no_elitism) {
        return Paradigm::steady_state_ga;
    }

    const bool es_shape = sequential_selector && s.fertile == P && s.reduced_offspring == s.offspring &&
                          std::holds_alternative<reducers::Sequential>(config.final_reducer) && no_elitism;
    if (es_shape && s.reduced_nep == P) {
        return Paradigm::es_plus;
    }
    if (es_shape && s.reduced_nep == 0) {
        return Paradigm::es_comma;
    }

    if (s.offspring == P && s.reduced_nep == P && s.reduced_offspring == P &&
        std::holds_alternative<reducers::EpTournament>(config.final_reducer) && no_elitism) {
        return Paradigm::ep;
    }
    return Paradigm::custom;
}

} // namespace evoengine
