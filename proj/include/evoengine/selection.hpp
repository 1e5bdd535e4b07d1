#pragma once

/// @file selection.hpp
/// @brief Parent selection: repeated, fitness-biased draws with repetition
/// from the fertile individuals.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include <evoengine/config.hpp>
#include <evoengine/error.hpp>

namespace evoengine {

/// All randomness in the library flows through explicitly passed engines of this type.
using Rng = std::mt19937_64;

/// Where a pool member came from; kept through the merge so the intermediate
/// population can be split into its parent and offspring parts.
enum class Origin { parent, offspring };

struct PoolMember {
    std::size_t ref = 0; ///< index into the owning population
    double fitness = 0.0;
    Origin origin = Origin::parent;

    friend bool operator==(const PoolMember&, const PoolMember&) = default;
};

/// An ordered list of evaluated individuals, by reference. "Lower index" in
/// tie-breaking always means earlier position in `members`.
struct SelectionPool {
    std::vector<PoolMember> members;
    ObjectiveSense sense = ObjectiveSense::maximize;

    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
    [[nodiscard]] bool empty() const noexcept { return members.empty(); }
    [[nodiscard]] const PoolMember& operator[](std::size_t i) const noexcept { return members[i]; }

    friend bool operator==(const SelectionPool&, const SelectionPool&) = default;
};

/// Pool over a fitness vector; member i refers to index i.
[[nodiscard]] inline SelectionPool make_pool(std::span<const double> fitness, ObjectiveSense sense,
                                             Origin origin = Origin::parent) {
    SelectionPool pool;
    pool.sense = sense;
    pool.members.reserve(fitness.size());
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        pool.members.push_back({i, fitness[i], origin});
    }
    return pool;
}

/// Pool positions sorted best first; ties keep the lower position first.
[[nodiscard]] inline std::vector<std::size_t> ranked_positions(const SelectionPool& pool) {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&pool](std::size_t a, std::size_t b) {
        return is_better(pool[a].fitness, pool[b].fitness, pool.sense);
    });
    return order;
}

/// Truncation to the `fertile_count` best individuals, in population order.
[[nodiscard]] inline SelectionPool fertile_subset(std::span<const double> fitness, std::size_t fertile_count,
                                                  ObjectiveSense sense) {
    if (fitness.empty()) {
        throw Error(errc::empty_population, "cannot take the fertile subset of an empty population");
    }
    if (fertile_count < 1 || fertile_count > fitness.size()) {
        throw Error(errc::invalid_argument, "fertile count " + std::to_string(fertile_count) +
                                                " outside [1, " + std::to_string(fitness.size()) + "]");
    }
    const SelectionPool all = make_pool(fitness, sense);
    std::vector<std::size_t> keep = ranked_positions(all);
    keep.resize(fertile_count);
    std::sort(keep.begin(), keep.end());

    SelectionPool pool;
    pool.sense = sense;
    pool.members.reserve(fertile_count);
    for (std::size_t pos : keep) {
        pool.members.push_back(all[pos]);
    }
    return pool;
}

/// Selection probabilities of the weight-based selectors (roulette wheel,
/// linear ranking, random). Sums to 1.
///
/// Roulette wheel shifts fitness by an offset so that the best member weighs
/// exactly `pressure` times the worst:
///     w_i = g_i - g_min + (g_max - g_min) / (pressure - 1)
/// with g the fitness, negated under minimization. A flat pool is uniform.
///
/// Linear ranking with slope s, rank r = 0 for the best of n members:
///     p_i = (s - (2s - 2) r_i / (n - 1)) / n
[[nodiscard]] inline std::vector<double> selection_weights(const SelectionPool& pool, const SelectorSpec& selector) {
    if (pool.empty()) {
        throw Error(errc::empty_pool, "selection pool is empty");
    }
    const std::size_t n = pool.size();
    std::vector<double> p(n, 1.0 / static_cast<double>(n));

    if (const auto* roulette = std::get_if<selectors::RouletteWheel>(&selector)) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = pool.sense == ObjectiveSense::maximize ? pool[i].fitness : -pool[i].fitness;
        }
        const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
        const double g_min = *lo;
        const double g_max = *hi;
        if (g_max == g_min) {
            return p;
        }
        const double offset = (g_max - g_min) / (roulette->pressure - 1.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = g[i] - g_min + offset;
            total += p[i];
        }
        for (double& w : p) {
            w /= total;
        }
        return p;
    }
    if (const auto* ranking = std::get_if<selectors::LinearRanking>(&selector)) {
        if (n == 1) {
            return p;
        }
        const double s = ranking->pressure;
        const std::vector<std::size_t> order = ranked_positions(pool);
        for (std::size_t rank = 0; rank < n; ++rank) {
            const double r = static_cast<double>(rank);
            p[order[rank]] = (s - (2.0 * s - 2.0) * r / static_cast<double>(n - 1)) / static_cast<double>(n);
        }
        return p;
    }
    if (std::holds_alternative<selectors::Random>(selector)) {
        return p;
    }
    throw Error(errc::not_a_weight_selector,
                std::string(kind_token(selector)) + " does not define selection weights");
}

namespace detail {

/// Better of two pool positions; ties go to the lower position.
[[nodiscard]] inline std::size_t better_of(const SelectionPool& pool, std::size_t a, std::size_t b) noexcept {
    if (is_better(pool[b].fitness, pool[a].fitness, pool.sense)) {
        return b;
    }
    if (is_better(pool[a].fitness, pool[b].fitness, pool.sense)) {
        return a;
    }
    return std::min(a, b);
}

} // namespace detail

/// Draws `count` parents with repetition; returns the members' refs in draw order.
///
/// Tournaments sample with replacement, so a member may meet itself. The
/// stochastic tournament has arity 2. Sequential cycles through the pool from
/// best to worst, restarting at the best on every call.
[[nodiscard]] inline std::vector<std::size_t> select_parents(const SelectionPool& pool, const SelectorSpec& selector,
                                                             std::size_t count, Rng& rng) {
    if (pool.empty()) {
        throw Error(errc::empty_pool, "selection pool is empty");
    }
    const std::size_t n = pool.size();
    std::vector<std::size_t> out;
    out.reserve(count);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, selectors::DeterministicTournament>) {
                for (std::size_t k = 0; k < count; ++k) {
                    std::size_t winner = pick(rng);
                    for (std::size_t t = 1; t < s.tournament_size; ++t) {
                        winner = detail::better_of(pool, winner, pick(rng));
                    }
                    out.push_back(pool[winner].ref);
                }
            } else if constexpr (std::is_same_v<S, selectors::StochasticTournament>) {
                std::uniform_real_distribution<double> coin(0.0, 1.0);
                for (std::size_t k = 0; k < count; ++k) {
                    const std::size_t a = pick(rng);
                    const std::size_t b = pick(rng);
                    const std::size_t better = detail::better_of(pool, a, b);
                    const std::size_t worse = better == a ? b : a;
                    out.push_back(pool[coin(rng) < s.probability ? better : worse].ref);
                }
            } else if constexpr (std::is_same_v<S, selectors::Sequential>) {
                const std::vector<std::size_t> order = ranked_positions(pool);
                for (std::size_t k = 0; k < count; ++k) {
                    out.push_back(pool[order[k % n]].ref);
                }
            } else if constexpr (std::is_same_v<S, selectors::Random>) {
                for (std::size_t k = 0; k < count; ++k) {
                    out.push_back(pool[pick(rng)].ref);
                }
            } else {
                const std::vector<double> weights = selection_weights(pool, selector);
                std::discrete_distribution<std::size_t> wheel(weights.begin(), weights.end());
                for (std::size_t k = 0; k < count; ++k) {
                    out.push_back(pool[wheel(rng)].ref);
                }
            }
        },
        selector);
    return out;
}

} // namespace evoengine
