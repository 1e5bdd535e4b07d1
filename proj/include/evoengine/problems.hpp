#pragma once

/// @file problems.hpp
/// @brief Benchmark problems: genomes, initialization, variation operators,
/// and fitness functions. The engine itself never looks inside a genome.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include <evoengine/config.hpp>
#include <evoengine/error.hpp>
#include <evoengine/selection.hpp>

namespace evoengine {

enum class ProblemKind { onemax, sphere, rastrigin };

[[nodiscard]] constexpr std::string_view to_token(ProblemKind k) noexcept {
    switch (k) {
    case ProblemKind::onemax:
        return "onemax";
    case ProblemKind::sphere:
        return "sphere";
    case ProblemKind::rastrigin:
        return "rastrigin";
    }
    return "onemax";
}

/// Bitstring kinds use `bit_flip_rate`; real-vector kinds use the bounds and
/// `mutation_sigma`. Fields of the other family are ignored.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::onemax;
    std::size_t dimension = 1;
    double low = -5.12;
    double high = 5.12;
    double mutation_sigma = 0.1;
    double bit_flip_rate = 0.01;

    [[nodiscard]] constexpr bool is_bitstring() const noexcept { return kind == ProblemKind::onemax; }

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) noexcept {
        if (a.kind != b.kind || a.dimension != b.dimension) {
            return false;
        }
        if (a.is_bitstring()) {
            return a.bit_flip_rate == b.bit_flip_rate;
        }
        return a.low == b.low && a.high == b.high && a.mutation_sigma == b.mutation_sigma;
    }
};

/// Throws INVALID_ARGUMENT when a parameter is out of its domain.
inline void check_problem(const ProblemSpec& spec) {
    if (spec.dimension < 1) {
        throw Error(errc::invalid_argument, "problem dimension must be >= 1");
    }
    if (spec.is_bitstring()) {
        if (!(spec.bit_flip_rate > 0.0 && spec.bit_flip_rate <= 1.0)) {
            throw Error(errc::invalid_argument, "bitFlipRate must be in (0, 1]");
        }
        return;
    }
    if (!(std::isfinite(spec.low) && std::isfinite(spec.high) && spec.low < spec.high)) {
        throw Error(errc::invalid_argument, "bounds must satisfy low < high");
    }
    if (!(std::isfinite(spec.mutation_sigma) && spec.mutation_sigma > 0.0)) {
        throw Error(errc::invalid_argument, "mutationSigma must be > 0");
    }
}

/// The sense in which the benchmark is meant to be optimized.
[[nodiscard]] constexpr ObjectiveSense natural_sense(ProblemKind kind) noexcept {
    return kind == ProblemKind::onemax ? ObjectiveSense::maximize : ObjectiveSense::minimize;
}

/// OneMax over bitstrings (one byte per bit).
class OneMax {
public:
    using genome_type = std::vector<std::uint8_t>;

    explicit OneMax(const ProblemSpec& spec) : dimension_(spec.dimension), flip_rate_(spec.bit_flip_rate) {
        check_problem(spec);
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

    [[nodiscard]] genome_type init_genome(Rng& rng) const {
        std::bernoulli_distribution bit(0.5);
        genome_type g(dimension_);
        for (auto& b : g) {
            b = bit(rng) ? 1 : 0;
        }
        return g;
    }

    [[nodiscard]] genome_type mutate(const genome_type& parent, Rng& rng) const {
        std::bernoulli_distribution flip(flip_rate_);
        genome_type g = parent;
        for (auto& b : g) {
            if (flip(rng)) {
                b ^= 1;
            }
        }
        return g;
    }

    /// One-point: prefix of `a` up to a uniform cut in [0, d], suffix of `b`.
    [[nodiscard]] genome_type crossover(const genome_type& a, const genome_type& b, Rng& rng) const {
        const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, a.size())(rng);
        genome_type g(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
        g.insert(g.end(), b.begin() + static_cast<std::ptrdiff_t>(cut), b.end());
        return g;
    }

    [[nodiscard]] double evaluate(const genome_type& g) const noexcept {
        return static_cast<double>(std::count(g.begin(), g.end(), std::uint8_t{1}));
    }

private:
    std::size_t dimension_;
    double flip_rate_;
};

/// Sphere and Rastrigin over a box.
class RealFunction {
public:
    using genome_type = std::vector<double>;

    explicit RealFunction(const ProblemSpec& spec)
        : kind_(spec.kind), dimension_(spec.dimension), low_(spec.low), high_(spec.high),
          sigma_(spec.mutation_sigma) {
        if (spec.is_bitstring()) {
            throw Error(errc::invalid_argument, "RealFunction needs a real-vector problem kind");
        }
        check_problem(spec);
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

    [[nodiscard]] genome_type init_genome(Rng& rng) const {
        std::uniform_real_distribution<double> coord(low_, high_);
        genome_type g(dimension_);
        for (double& x : g) {
            x = coord(rng);
        }
        return g;
    }

    /// Each coordinate is perturbed with probability 1/d (at least one always
    /// is) by N(0, sigma), then clamped to the bounds.
    [[nodiscard]] genome_type mutate(const genome_type& parent, Rng& rng) const {
        genome_type g = parent;
        std::bernoulli_distribution pick(1.0 / static_cast<double>(g.size()));
        std::normal_distribution<double> noise(0.0, sigma_);
        bool touched = false;
        for (double& x : g) {
            if (pick(rng)) {
                x = std::clamp(x + noise(rng), low_, high_);
                touched = true;
            }
        }
        if (!touched) {
            double& x = g[std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng)];
            x = std::clamp(x + noise(rng), low_, high_);
        }
        return g;
    }

    /// Uniform: each coordinate from either parent with probability 1/2.
    [[nodiscard]] genome_type crossover(const genome_type& a, const genome_type& b, Rng& rng) const {
        std::bernoulli_distribution from_a(0.5);
        genome_type g(a.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] = from_a(rng) ? a[i] : b[i];
        }
        return g;
    }

    [[nodiscard]] double evaluate(const genome_type& x) const noexcept {
        double sum = 0.0;
        if (kind_ == ProblemKind::sphere) {
            for (double v : x) {
                sum += v * v;
            }
            return sum;
        }
        for (double v : x) {
            sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
        }
        return 10.0 * static_cast<double>(x.size()) + sum;
    }

private:
    ProblemKind kind_;
    std::size_t dimension_;
    double low_;
    double high_;
    double sigma_;
};

} // namespace evoengine
