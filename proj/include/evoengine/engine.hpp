#pragma once

/// @file engine.hpp
/// @brief The generic generation loop: initialization, selection, variation,
/// evaluation, three-stage replacement, elitism, and termination.
///
/// The engine is parameterized by a Problem, which owns the genome type and
/// the variation operators. Everything Darwinian is driven by EngineConfig.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <stop_token>
#include <string_view>
#include <utility>
#include <vector>

#include <evoengine/config.hpp>
#include <evoengine/error.hpp>
#include <evoengine/replacement.hpp>
#include <evoengine/selection.hpp>

namespace evoengine {

template <typename P>
concept Problem = requires(const P& problem, const typename P::genome_type& genome, Rng& rng) {
    typename P::genome_type;
    { problem.init_genome(rng) } -> std::same_as<typename P::genome_type>;
    { problem.mutate(genome, rng) } -> std::same_as<typename P::genome_type>;
    { problem.crossover(genome, genome, rng) } -> std::same_as<typename P::genome_type>;
    { problem.evaluate(genome) } -> std::convertible_to<double>;
};

template <typename Genome>
struct Individual {
    Genome genome{};
    double fitness = 0.0;
    std::size_t birth_generation = 0;

    friend bool operator==(const Individual&, const Individual&) = default;
};

template <typename Genome>
struct Population {
    std::vector<Individual<Genome>> members;
    std::size_t generation = 0;
    std::size_t evaluations = 0; ///< cumulative, including this population's ancestors

    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }

    [[nodiscard]] std::vector<double> fitness() const {
        std::vector<double> f;
        f.reserve(members.size());
        for (const auto& m : members) {
            f.push_back(m.fitness);
        }
        return f;
    }

    friend bool operator==(const Population&, const Population&) = default;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t max_generations = 100;
    std::optional<double> target_fitness;
    std::optional<std::size_t> stagnation_generations;
    double crossover_probability = 0.9;
    double mutation_probability = 1.0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline void check_run_config(const RunConfig& run) {
    if (run.max_generations < 1) {
        throw Error(errc::invalid_argument, "maxGenerations must be >= 1");
    }
    if (run.stagnation_generations && *run.stagnation_generations < 1) {
        throw Error(errc::invalid_argument, "stagnationGenerations must be >= 1");
    }
    if (!(run.crossover_probability >= 0.0 && run.crossover_probability <= 1.0)) {
        throw Error(errc::invalid_argument, "crossoverProbability must be in [0, 1]");
    }
    if (!(run.mutation_probability >= 0.0 && run.mutation_probability <= 1.0)) {
        throw Error(errc::invalid_argument, "mutationProbability must be in [0, 1]");
    }
}

struct GenerationStats {
    std::size_t generation = 0;
    double best = 0.0;
    double mean = 0.0;
    double worst = 0.0;
    std::size_t evaluations = 0;

    friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

enum class StopReason { target_reached, max_generations, stagnation };

[[nodiscard]] constexpr std::string_view to_token(StopReason r) noexcept {
    switch (r) {
    case StopReason::target_reached:
        return "TargetReached";
    case StopReason::max_generations:
        return "MaxGenerations";
    case StopReason::stagnation:
        return "Stagnation";
    }
    return "MaxGenerations";
}

template <typename Genome>
struct RunRecord {
    EngineConfig config;
    RunConfig run_config;
    std::vector<GenerationStats> history;
    StopReason stop_reason = StopReason::max_generations;
    Individual<Genome> best_individual; ///< best ever seen, not just in the last population

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

template <typename Genome>
[[nodiscard]] GenerationStats compute_stats(const Population<Genome>& pop, ObjectiveSense sense) {
    GenerationStats st;
    st.generation = pop.generation;
    st.evaluations = pop.evaluations;
    if (pop.members.empty()) {
        return st;
    }
    st.best = st.worst = pop.members.front().fitness;
    double sum = 0.0;
    for (const auto& m : pop.members) {
        if (is_better(m.fitness, st.best, sense)) {
            st.best = m.fitness;
        }
        if (is_worse(m.fitness, st.worst, sense)) {
            st.worst = m.fitness;
        }
        sum += m.fitness;
    }
    st.mean = sum / static_cast<double>(pop.members.size());
    return st;
}

namespace detail {

inline void require_feasible(const EngineConfig& config) {
    const ValidationReport report = validate(config);
    if (!report.feasible()) {
        throw Error(errc::infeasible_config, report.violations.front().code + " (" +
                                                 report.violations.front().message + ")");
    }
}

template <typename Genome>
[[nodiscard]] std::size_t best_position(const Population<Genome>& pop, ObjectiveSense sense) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.members.size(); ++i) {
        if (is_better(pop.members[i].fitness, pop.members[best].fitness, sense)) {
            best = i;
        }
    }
    return best;
}

} // namespace detail

/// Generation 0: `pop_size` individuals from the problem's initializer, evaluated.
template <Problem P>
[[nodiscard]] Population<typename P::genome_type> initialize(const EngineConfig& config, const P& problem, Rng& rng) {
    detail::require_feasible(config);
    Population<typename P::genome_type> pop;
    pop.members.reserve(config.pop_size);
    for (std::size_t i = 0; i < config.pop_size; ++i) {
        auto genome = problem.init_genome(rng);
        const double f = problem.evaluate(genome);
        pop.members.push_back({std::move(genome), f, 0});
    }
    pop.evaluations = config.pop_size;
    return pop;
}

template <typename Genome>
struct StepResult {
    Population<Genome> population;
    GenerationStats stats;
};

/// One generation.
///
///  1. Strong elitism copies the e best parents into reserved seats; the
///     remaining parents form the N.E.P. Elites still take part in selection.
///  2. Parents are drawn from the fertile subset. Offspring k comes from the
///     selected pair (k, k+1 mod lambda): crossover with the crossover
///     probability (otherwise a copy of the first), then mutation with the
///     mutation probability.
///  3. N.E.P. and offspring are reduced, merged, and the merge is reduced
///     to the free seats.
///  4. Weak elitism: if the new best is worse than the best parent, each of
///     the e best parents that beats the new best replaces one of the worst.
template <Problem P>
[[nodiscard]] StepResult<typename P::genome_type> step(const Population<typename P::genome_type>& parents,
                                                       const EngineConfig& config, const RunConfig& run,
                                                       const P& problem, Rng& rng) {
    using Genome = typename P::genome_type;
    detail::require_feasible(config);
    if (parents.size() != config.pop_size) {
        throw Error(errc::invalid_argument, "population has " + std::to_string(parents.size()) +
                                                " members, config expects " + std::to_string(config.pop_size));
    }
    const ObjectiveSense sense = config.sense;
    const ResolvedSizes sizes = resolve_sizes(config);
    const std::size_t next_generation = parents.generation + 1;

    const std::vector<double> parent_fitness = parents.fitness();
    const SelectionPool all_parents = make_pool(parent_fitness, sense, Origin::parent);
    const std::vector<std::size_t> ranked = ranked_positions(all_parents);

    // 1. elite seats and the non-elite population
    std::vector<bool> is_elite(parents.size(), false);
    for (std::size_t i = 0; i < sizes.elite_seats; ++i) {
        is_elite[ranked[i]] = true;
    }
    SelectionPool nep;
    nep.sense = sense;
    for (const PoolMember& m : all_parents.members) {
        if (!is_elite[m.ref]) {
            nep.members.push_back(m);
        }
    }

    // 2. selection, variation, evaluation
    const SelectionPool fertile = fertile_subset(parent_fitness, sizes.fertile, sense);
    const std::vector<std::size_t> selected = select_parents(fertile, config.parent_selector, sizes.offspring, rng);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Individual<Genome>> offspring;
    offspring.reserve(selected.size());
    for (std::size_t k = 0; k < selected.size(); ++k) {
        const Genome& first = parents.members[selected[k]].genome;
        const Genome& mate = parents.members[selected[(k + 1) % selected.size()]].genome;
        Genome child = coin(rng) < run.crossover_probability ? problem.crossover(first, mate, rng) : first;
        if (coin(rng) < run.mutation_probability) {
            child = problem.mutate(child, rng);
        }
        const double f = problem.evaluate(child);
        offspring.push_back({std::move(child), f, next_generation});
    }

    // 3. three-stage replacement
    std::vector<double> offspring_fitness;
    offspring_fitness.reserve(offspring.size());
    for (const auto& o : offspring) {
        offspring_fitness.push_back(o.fitness);
    }
    const SelectionPool reduced_parents = reduce(nep, config.nep_reducer, sizes.reduced_nep, rng);
    const SelectionPool reduced_offspring =
        reduce(make_pool(offspring_fitness, sense, Origin::offspring), config.offspring_reducer,
               sizes.reduced_offspring, rng);
    const SelectionPool intermed = merge(reduced_parents, reduced_offspring);
    const SelectionPool survivors = reduce(intermed, config.final_reducer, sizes.survivors, rng);

    Population<Genome> next;
    next.generation = next_generation;
    next.evaluations = parents.evaluations + offspring.size();
    next.members.reserve(config.pop_size);
    for (std::size_t i = 0; i < sizes.elite_seats; ++i) {
        next.members.push_back(parents.members[ranked[i]]);
    }
    for (const PoolMember& m : survivors.members) {
        next.members.push_back(m.origin == Origin::parent ? parents.members[m.ref] : offspring[m.ref]);
    }

    // 4. weak elitism repair
    if (config.elitism.mode == ElitismMode::weak && config.elitism.active() && !next.members.empty()) {
        const double new_best = next.members[detail::best_position(next, sense)].fitness;
        if (is_worse(new_best, parent_fitness[ranked.front()], sense)) {
            std::vector<std::size_t> worst_first(next.members.size());
            std::iota(worst_first.begin(), worst_first.end(), std::size_t{0});
            std::stable_sort(worst_first.begin(), worst_first.end(), [&](std::size_t a, std::size_t b) {
                const double fa = next.members[a].fitness;
                const double fb = next.members[b].fitness;
                return is_worse(fa, fb, sense) || (fa == fb && a > b);
            });
            const std::size_t candidates = std::min(config.elitism.elite_size, ranked.size());
            std::size_t seat = 0;
            for (std::size_t i = 0; i < candidates; ++i) {
                const auto& elite = parents.members[ranked[i]];
                if (!is_better(elite.fitness, new_best, sense)) {
                    break; // ranked best first: no later candidate can qualify
                }
                next.members[worst_first[seat++]] = elite;
            }
        }
    }

    GenerationStats stats = compute_stats(next, sense);
    return {std::move(next), stats};
}

/// First matching rule, in order: target reached, generation budget, stagnation.
/// Stagnation means the best-so-far has not strictly improved over the last
/// `stagnation_generations` generations.
[[nodiscard]] inline std::optional<StopReason> should_stop(const std::vector<GenerationStats>& history,
                                                           const RunConfig& run, ObjectiveSense sense) {
    if (history.empty()) {
        throw Error(errc::invalid_argument, "should_stop needs a non-empty history");
    }
    const GenerationStats& last = history.back();
    if (run.target_fitness && !is_worse(last.best, *run.target_fitness, sense)) {
        return StopReason::target_reached;
    }
    if (last.generation >= run.max_generations) {
        return StopReason::max_generations;
    }
    if (run.stagnation_generations && history.size() > *run.stagnation_generations) {
        const std::size_t window_start = history.size() - *run.stagnation_generations;
        double before = history.front().best;
        for (std::size_t i = 1; i < window_start; ++i) {
            if (is_better(history[i].best, before, sense)) {
                before = history[i].best;
            }
        }
        bool improved = false;
        for (std::size_t i = window_start; i < history.size(); ++i) {
            improved = improved || is_better(history[i].best, before, sense);
        }
        if (!improved) {
            return StopReason::stagnation;
        }
    }
    return std::nullopt;
}

/// Called once per generation, generation 0 included, with the stats of the
/// population just produced.
using GenerationObserver = std::function<void(const GenerationStats&)>;

/// Initialize, then step until a stopping rule fires. Deterministic in the seed.
/// A stop request aborts the run with a CANCELLED error.
template <Problem P>
[[nodiscard]] RunRecord<typename P::genome_type> run(const EngineConfig& config, const RunConfig& run_config,
                                                     const P& problem, const GenerationObserver& observer = {},
                                                     std::stop_token stop = {}) {
    using Genome = typename P::genome_type;
    check_run_config(run_config);
    detail::require_feasible(config);

    Rng rng(run_config.seed);
    RunRecord<Genome> record;
    record.config = config;
    record.run_config = run_config;

    Population<Genome> pop = initialize(config, problem, rng);
    record.best_individual = pop.members[detail::best_position(pop, config.sense)];
    record.history.push_back(compute_stats(pop, config.sense));
    if (observer) {
        observer(record.history.back());
    }

    while (true) {
        if (const auto reason = should_stop(record.history, run_config, config.sense)) {
            record.stop_reason = *reason;
            break;
        }
        if (stop.stop_requested()) {
            throw Error(errc::cancelled, "run cancelled");
        }
        auto [next, stats] = step(pop, config, run_config, problem, rng);
        pop = std::move(next);
        const auto& best = pop.members[detail::best_position(pop, config.sense)];
        if (is_better(best.fitness, record.best_individual.fitness, config.sense)) {
            record.best_individual = best;
        }
        record.history.push_back(stats);
        if (observer) {
            observer(stats);
        }
    }
    return record;
}

} // namespace evoengine
