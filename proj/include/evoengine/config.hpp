#pragma once

/// @file config.hpp
/// @brief The evolution-engine parameter space: sizes, Darwinian operator
/// choices, elitism, and the feasibility validator.
///
/// An EngineConfig describes one generation as a flow of populations:
///
///     selection (with repetition):
///         Init.Pop -> Fertile -> Offspring
///     replacement (each individual at most once):
///         N.E.P.    -> reduced N.E.P.  --+
///                                        +--> Intermed.Pop -> New Pop
///         Offspring -> reduced Offspr. --+
///
/// Every size may be given as an absolute count or as a percentage of the
/// population directly upstream of it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <evoengine/error.hpp>

namespace evoengine {

enum class ObjectiveSense { maximize, minimize };

/// Strict, sense-relative comparison. Every "better"/"worse" in the library goes through here.
[[nodiscard]] constexpr bool is_better(double a, double b, ObjectiveSense sense) noexcept {
    return sense == ObjectiveSense::maximize ? a > b : a < b;
}

[[nodiscard]] constexpr bool is_worse(double a, double b, ObjectiveSense sense) noexcept {
    return is_better(b, a, sense);
}

struct SizeParam {
    enum class Mode { absolute, percent };

    Mode mode = Mode::absolute;
    double value = 0.0;

    [[nodiscard]] static constexpr SizeParam absolute(std::size_t count) noexcept {
        return {Mode::absolute, static_cast<double>(count)};
    }
    [[nodiscard]] static constexpr SizeParam percent(double pct) noexcept {
        return {Mode::percent, pct};
    }

    /// Absolute: an integer >= 0. Percent: a real in [0, 100].
    [[nodiscard]] bool well_formed() const noexcept {
        if (!std::isfinite(value) || value < 0.0) {
            return false;
        }
        return mode == Mode::absolute ? std::floor(value) == value : value <= 100.0;
    }

    friend bool operator==(const SizeParam&, const SizeParam&) = default;
};

namespace selectors {
struct RouletteWheel {
    double pressure = 2.0; ///< best-to-worst weight ratio, > 1
    friend bool operator==(const RouletteWheel&, const RouletteWheel&) = default;
};
struct LinearRanking {
    double pressure = 2.0; ///< in (1, 2]
    friend bool operator==(const LinearRanking&, const LinearRanking&) = default;
};
struct DeterministicTournament {
    std::size_t tournament_size = 2;
    friend bool operator==(const DeterministicTournament&, const DeterministicTournament&) = default;
};
struct StochasticTournament {
    double probability = 0.75; ///< in (0.5, 1]
    friend bool operator==(const StochasticTournament&, const StochasticTournament&) = default;
};
struct Random {
    friend bool operator==(const Random&, const Random&) = default;
};
struct Sequential {
    friend bool operator==(const Sequential&, const Sequential&) = default;
};
} // namespace selectors

/// Parent selector: draws with repetition.
using SelectorSpec =
    std::variant<selectors::RouletteWheel, selectors::LinearRanking, selectors::DeterministicTournament,
                 selectors::StochasticTournament, selectors::Random, selectors::Sequential>;

namespace reducers {
struct Sequential {
    friend bool operator==(const Sequential&, const Sequential&) = default;
};
struct Random {
    friend bool operator==(const Random&, const Random&) = default;
};
struct DeterministicTournament {
    std::size_t tournament_size = 2;
    friend bool operator==(const DeterministicTournament&, const DeterministicTournament&) = default;
};
struct StochasticTournament {
    double probability = 0.75;
    friend bool operator==(const StochasticTournament&, const StochasticTournament&) = default;
};
struct EpTournament {
    std::size_t tournament_size = 6;
    friend bool operator==(const EpTournament&, const EpTournament&) = default;
};
} // namespace reducers

/// Survivor reducer: each member survives at most once.
using ReducerSpec = std::variant<reducers::Sequential, reducers::Random, reducers::DeterministicTournament,
                                 reducers::StochasticTournament, reducers::EpTournament>;

enum class ElitismMode { strong, weak };

/// elite_size == 0 turns elitism off whatever the mode.
struct ElitismSpec {
    ElitismMode mode = ElitismMode::strong;
    std::size_t elite_size = 0;

    [[nodiscard]] constexpr bool active() const noexcept { return elite_size > 0; }
    friend bool operator==(const ElitismSpec&, const ElitismSpec&) = default;
};

struct EngineConfig {
    std::size_t pop_size = 1;
    ObjectiveSense sense = ObjectiveSense::maximize;
    SizeParam fertile = SizeParam::percent(100);         ///< upstream: pop_size
    SizeParam offspring_size = SizeParam::percent(100);  ///< upstream: pop_size
    SelectorSpec parent_selector = selectors::DeterministicTournament{2};
    ReducerSpec nep_reducer = reducers::Sequential{};
    SizeParam reduced_nep_size = SizeParam::absolute(0); ///< upstream: N.E.P. size
    ReducerSpec offspring_reducer = reducers::Sequential{};
    SizeParam reduced_offspring_size = SizeParam::percent(100); ///< upstream: offspring size
    ReducerSpec final_reducer = reducers::Sequential{};
    ElitismSpec elitism{};

    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

/// Round-half-up for percentages; absolute counts pass through unchanged.
[[nodiscard]] inline std::size_t resolve_size(const SizeParam& param, std::size_t upstream) noexcept {
    const double raw = param.mode == SizeParam::Mode::absolute
                           ? param.value
                           : std::floor(param.value * static_cast<double>(upstream) / 100.0 + 0.5);
    if (!(raw > 0.0)) {
        return 0;
    }
    if (raw >= 9.0e18) {
        return static_cast<std::size_t>(9.0e18);
    }
    return static_cast<std::size_t>(raw);
}

/// Seats reserved in the New Pop. before replacement (strong elitism only).
[[nodiscard]] constexpr std::size_t elite_seats(const EngineConfig& config) noexcept {
    return config.elitism.mode == ElitismMode::strong ? config.elitism.elite_size : 0;
}

/// Size of the Non-Elite Population. Weak elitism acts after replacement,
/// so it leaves the whole parent population in the N.E.P.
[[nodiscard]] constexpr std::size_t nep_size(const EngineConfig& config) noexcept {
    const std::size_t seats = elite_seats(config);
    return seats >= config.pop_size ? 0 : config.pop_size - seats;
}

/// Every population size of one generation, with percentages resolved.
struct ResolvedSizes {
    std::size_t pop = 0;
    std::size_t fertile = 0;
    std::size_t offspring = 0;
    std::size_t elite_seats = 0;
    std::size_t nep = 0;
    std::size_t reduced_nep = 0;
    std::size_t reduced_offspring = 0;
    std::size_t intermed = 0;
    std::size_t survivors = 0; ///< seats filled by the final reducer

    friend bool operator==(const ResolvedSizes&, const ResolvedSizes&) = default;
};

[[nodiscard]] inline ResolvedSizes resolve_sizes(const EngineConfig& config) noexcept {
    ResolvedSizes s;
    s.pop = config.pop_size;
    s.fertile = resolve_size(config.fertile, s.pop);
    s.offspring = resolve_size(config.offspring_size, s.pop);
    s.elite_seats = elite_seats(config);
    s.nep = nep_size(config);
    s.reduced_nep = resolve_size(config.reduced_nep_size, s.nep);
    s.reduced_offspring = resolve_size(config.reduced_offspring_size, s.offspring);
    s.intermed = s.reduced_nep + s.reduced_offspring;
    s.survivors = s.elite_seats >= s.pop ? 0 : s.pop - s.elite_seats;
    return s;
}

struct Violation {
    std::string code;
    std::string message;
    std::string field;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool feasible() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(std::string_view code) const noexcept {
        for (const auto& v : violations) {
            if (v.code == code) {
                return true;
            }
        }
        return false;
    }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Violation codes. The UI maps them onto panel fields.
namespace violation {
inline constexpr std::string_view pop_size_invalid = "POP_SIZE_INVALID";
inline constexpr std::string_view size_param_invalid = "SIZE_PARAM_INVALID";
inline constexpr std::string_view fertile_out_of_range = "FERTILE_OUT_OF_RANGE";
inline constexpr std::string_view offspring_too_small = "OFFSPRING_TOO_SMALL";
inline constexpr std::string_view elite_exceeds_pop = "ELITE_EXCEEDS_POP";
inline constexpr std::string_view reduced_nep_exceeds_nep = "REDUCED_NEP_EXCEEDS_NEP";
inline constexpr std::string_view reduced_offspring_exceeds_offspring = "REDUCED_OFFSPRING_EXCEEDS_OFFSPRING";
inline constexpr std::string_view intermed_too_small = "INTERMED_TOO_SMALL";
inline constexpr std::string_view selector_param_out_of_range = "SELECTOR_PARAM_OUT_OF_RANGE";
inline constexpr std::string_view reducer_param_out_of_range = "REDUCER_PARAM_OUT_OF_RANGE";
} // namespace violation

namespace detail {

inline void check_selector(const SelectorSpec& spec, std::vector<Violation>& out) {
    const auto bad = [&out](std::string_view param, std::string message) {
        out.push_back({std::string(violation::selector_param_out_of_range), std::move(message),
                       "parentSelector." + std::string(param)});
    };
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, selectors::RouletteWheel>) {
                if (!(std::isfinite(s.pressure) && s.pressure > 1.0)) {
                    bad("pressure", "roulette wheel pressure must be > 1");
                }
            } else if constexpr (std::is_same_v<S, selectors::LinearRanking>) {
                if (!(s.pressure > 1.0 && s.pressure <= 2.0)) {
                    bad("pressure", "linear ranking pressure must be in (1, 2]");
                }
            } else if constexpr (std::is_same_v<S, selectors::DeterministicTournament>) {
                if (s.tournament_size < 2) {
                    bad("tournamentSize", "tournament size must be >= 2");
                }
            } else if constexpr (std::is_same_v<S, selectors::StochasticTournament>) {
                if (!(s.probability > 0.5 && s.probability <= 1.0)) {
                    bad("probability", "stochastic tournament probability must be in (0.5, 1]");
                }
            }
        },
        spec);
}

inline void check_reducer(const ReducerSpec& spec, std::string_view field, std::vector<Violation>& out) {
    const auto bad = [&](std::string_view param, std::string message) {
        out.push_back({std::string(violation::reducer_param_out_of_range), std::move(message),
                       std::string(field) + "." + std::string(param)});
    };
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, reducers::DeterministicTournament> ||
                          std::is_same_v<R, reducers::EpTournament>) {
                if (r.tournament_size < 2) {
                    bad("tournamentSize", "tournament size must be >= 2");
                }
            } else if constexpr (std::is_same_v<R, reducers::StochasticTournament>) {
                if (!(r.probability > 0.5 && r.probability <= 1.0)) {
                    bad("probability", "stochastic tournament probability must be in (0.5, 1]");
                }
            }
        },
        spec);
}

} // namespace detail

/// Feasibility check over resolved sizes. One violation per failed check.
[[nodiscard]] inline ValidationReport validate(const EngineConfig& config) {
    ValidationReport report;
    auto& out = report.violations;
    const auto add = [&out](std::string_view code, std::string message, std::string field) {
        out.push_back({std::string(code), std::move(message), std::move(field)});
    };

    if (config.pop_size < 1) {
        add(violation::pop_size_invalid, "population size must be >= 1", "popSize");
    }
    const std::pair<const SizeParam*, const char*> params[] = {
        {&config.fertile, "fertile"},
        {&config.offspring_size, "offspringSize"},
        {&config.reduced_nep_size, "reducedNepSize"},
        {&config.reduced_offspring_size, "reducedOffspringSize"},
    };
    for (const auto& [param, name] : params) {
        if (!param->well_formed()) {
            add(violation::size_param_invalid,
                param->mode == SizeParam::Mode::absolute ? "absolute size must be an integer >= 0"
                                                         : "percentage must be in [0, 100]",
                name);
        }
    }

    const ResolvedSizes s = resolve_sizes(config);
    if (s.fertile < 1 || s.fertile > s.pop) {
        add(violation::fertile_out_of_range,
            "fertile size " + std::to_string(s.fertile) + " must be in [1, " + std::to_string(s.pop) + "]",
            "fertile");
    }
    if (s.offspring < 1) {
        add(violation::offspring_too_small, "offspring size must be >= 1", "offspringSize");
    }
    if (config.elitism.elite_size > s.pop) {
        add(violation::elite_exceeds_pop,
            "elite size " + std::to_string(config.elitism.elite_size) + " exceeds population size " +
                std::to_string(s.pop),
            "elitism.eliteSize");
    }
    if (s.reduced_nep > s.nep) {
        add(violation::reduced_nep_exceeds_nep,
            "reduced N.E.P. size " + std::to_string(s.reduced_nep) + " exceeds N.E.P. size " +
                std::to_string(s.nep),
            "reducedNepSize");
    }
    if (s.reduced_offspring > s.offspring) {
        add(violation::reduced_offspring_exceeds_offspring,
            "reduced offspring size " + std::to_string(s.reduced_offspring) + " exceeds offspring size " +
                std::to_string(s.offspring),
            "reducedOffspringSize");
    }
    if (s.intermed < s.survivors) {
        add(violation::intermed_too_small,
            "intermediate population (" + std::to_string(s.reduced_nep) + " + " +
                std::to_string(s.reduced_offspring) + ") cannot fill " + std::to_string(s.survivors) +
                " seats of the new population",
            "reducedOffspringSize");
    }

    detail::check_selector(config.parent_selector, out);
    detail::check_reducer(config.nep_reducer, "nepReducer", out);
    detail::check_reducer(config.offspring_reducer, "offspringReducer", out);
    detail::check_reducer(config.final_reducer, "finalReducer", out);
    return report;
}

// --- string tokens shared by the JSON format, the CLI, and the HTTP API ---

[[nodiscard]] constexpr std::string_view to_token(ObjectiveSense s) noexcept {
    return s == ObjectiveSense::maximize ? "maximize" : "minimize";
}

[[nodiscard]] constexpr std::string_view to_token(ElitismMode m) noexcept {
    return m == ElitismMode::strong ? "strong" : "weak";
}

[[nodiscard]] constexpr std::string_view to_token(SizeParam::Mode m) noexcept {
    return m == SizeParam::Mode::absolute ? "absolute" : "percent";
}

[[nodiscard]] inline std::string_view kind_token(const SelectorSpec& spec) noexcept {
    constexpr std::string_view names[] = {"roulette-wheel",        "linear-ranking", "deterministic-tournament",
                                          "stochastic-tournament", "random",         "sequential"};
    return names[spec.index()];
}

[[nodiscard]] inline std::string_view kind_token(const ReducerSpec& spec) noexcept {
    constexpr std::string_view names[] = {"sequential", "random", "deterministic-tournament",
                                          "stochastic-tournament", "ep-tournament"};
    return names[spec.index()];
}

} // namespace evoengine
