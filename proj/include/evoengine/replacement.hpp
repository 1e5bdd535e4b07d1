#pragma once

/// @file replacement.hpp
/// @brief Reducers (survivor choice without repetition) and the merge of the
/// two reduced populations into the intermediate population.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <random>
#include <vector>

#include <evoengine/config.hpp>
#include <evoengine/error.hpp>
#include <evoengine/selection.hpp>

namespace evoengine {

namespace detail {

/// k distinct values from [0, m), Floyd's algorithm. Requires k <= m.
[[nodiscard]] inline std::vector<std::size_t> sample_distinct(std::size_t m, std::size_t k, Rng& rng) {
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = m - k; j < m; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
            chosen.push_back(t);
        } else {
            chosen.push_back(j);
        }
    }
    return chosen;
}

[[nodiscard]] inline SelectionPool subset(const SelectionPool& pool, std::vector<std::size_t> positions) {
    std::sort(positions.begin(), positions.end());
    SelectionPool out;
    out.sense = pool.sense;
    out.members.reserve(positions.size());
    for (std::size_t pos : positions) {
        out.members.push_back(pool[pos]);
    }
    return out;
}

} // namespace detail

/// EP tournament scores: each member meets T opponents drawn uniformly, with
/// replacement, from the other members, and scores one point per encounter it
/// does not lose.
[[nodiscard]] inline std::vector<std::size_t> ep_scores(const SelectionPool& pool, std::size_t opponents, Rng& rng) {
    if (pool.size() < 2) {
        throw Error(errc::pool_too_small, "EP tournament needs at least 2 members, got " + std::to_string(pool.size()));
    }
    if (opponents < 1) {
        throw Error(errc::invalid_argument, "EP tournament size must be >= 1");
    }
    const std::size_t n = pool.size();
    std::uniform_int_distribution<std::size_t> pick_other(0, n - 2);
    std::vector<std::size_t> scores(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < opponents; ++t) {
            std::size_t j = pick_other(rng);
            if (j >= i) {
                ++j;
            }
            if (!is_worse(pool[i].fitness, pool[j].fitness, pool.sense)) {
                ++scores[i];
            }
        }
    }
    return scores;
}

/// Shrinks `pool` to exactly `target` distinct members, kept in pool order.
/// A reducer asked for the whole pool is inactive and draws no random numbers.
[[nodiscard]] inline SelectionPool reduce(const SelectionPool& pool, const ReducerSpec& reducer, std::size_t target,
                                          Rng& rng) {
    if (target > pool.size()) {
        throw Error(errc::target_exceeds_pool, "cannot reduce " + std::to_string(pool.size()) + " members to " +
                                                   std::to_string(target));
    }
    if (target == pool.size()) {
        return pool;
    }
    if (target == 0) {
        return detail::subset(pool, {});
    }

    return std::visit(
        [&](const auto& r) -> SelectionPool {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, reducers::Sequential>) {
                std::vector<std::size_t> keep = ranked_positions(pool);
                keep.resize(target);
                return detail::subset(pool, std::move(keep));
            } else if constexpr (std::is_same_v<R, reducers::Random>) {
                std::vector<std::size_t> all(pool.size());
                std::iota(all.begin(), all.end(), std::size_t{0});
                std::vector<std::size_t> keep;
                keep.reserve(target);
                std::sample(all.begin(), all.end(), std::back_inserter(keep), target, rng);
                return detail::subset(pool, std::move(keep));
            } else if constexpr (std::is_same_v<R, reducers::DeterministicTournament>) {
                // Repeatedly eliminate the worst of min(T, alive) distinct members.
                std::vector<std::size_t> alive(pool.size());
                std::iota(alive.begin(), alive.end(), std::size_t{0});
                while (alive.size() > target) {
                    const std::size_t k = std::min(r.tournament_size, alive.size());
                    const auto picks = detail::sample_distinct(alive.size(), k, rng);
                    std::size_t loser = picks.front();
                    for (std::size_t slot : picks) {
                        if (detail::better_of(pool, alive[loser], alive[slot]) == alive[loser]) {
                            loser = slot;
                        }
                    }
                    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(loser));
                }
                return detail::subset(pool, std::move(alive));
            } else if constexpr (std::is_same_v<R, reducers::StochasticTournament>) {
                std::vector<std::size_t> alive(pool.size());
                std::iota(alive.begin(), alive.end(), std::size_t{0});
                std::uniform_real_distribution<double> coin(0.0, 1.0);
                while (alive.size() > target) {
                    if (alive.size() == 1) {
                        alive.clear();
                        break;
                    }
                    const auto picks = detail::sample_distinct(alive.size(), 2, rng);
                    const std::size_t a = picks[0];
                    const std::size_t b = picks[1];
                    const std::size_t better = detail::better_of(pool, alive[a], alive[b]) == alive[a] ? a : b;
                    const std::size_t worse = better == a ? b : a;
                    const std::size_t loser = coin(rng) < r.probability ? worse : better;
                    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(loser));
                }
                return detail::subset(pool, std::move(alive));
            } else {
                static_assert(std::is_same_v<R, reducers::EpTournament>);
                if (pool.size() < 2) {
                    return detail::subset(pool, {});
                }
                const std::vector<std::size_t> scores = ep_scores(pool, r.tournament_size, rng);
                std::vector<std::size_t> order(pool.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    if (scores[a] != scores[b]) {
                        return scores[a] > scores[b];
                    }
                    return is_better(pool[a].fitness, pool[b].fitness, pool.sense);
                });
                order.resize(target);
                return detail::subset(pool, std::move(order));
            }
        },
        reducer);
}

/// Intermediate population: reduced parents first, then reduced offspring.
/// Members keep their origin tags.
[[nodiscard]] inline SelectionPool merge(const SelectionPool& parents, const SelectionPool& offspring) {
    if (parents.sense != offspring.sense) {
        throw Error(errc::invalid_argument, "cannot merge pools with different objective senses");
    }
    SelectionPool out;
    out.sense = parents.sense;
    out.members.reserve(parents.size() + offspring.size());
    out.members.insert(out.members.end(), parents.members.begin(), parents.members.end());
    out.members.insert(out.members.end(), offspring.members.begin(), offspring.members.end());
    return out;
}

} // namespace evoengine
