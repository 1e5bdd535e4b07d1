// Plugging a user-defined problem into the engine: any type with a genome_type
// and the four operations below satisfies evoengine::Problem.
//
// The problem here is a small permutation puzzle: order 0..n-1 so that as many
// positions as possible hold their own index.

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>
#include <vector>

#include <evoengine/engine.hpp>
#include <evoengine/presets.hpp>

namespace {

class FixedPoints {
public:
    using genome_type = std::vector<int>;

    explicit FixedPoints(int n) : n_(n) {}

    genome_type init_genome(evoengine::Rng& rng) const {
        genome_type g(static_cast<std::size_t>(n_));
        std::iota(g.begin(), g.end(), 0);
        std::shuffle(g.begin(), g.end(), rng);
        return g;
    }

    // swap two positions
    genome_type mutate(const genome_type& parent, evoengine::Rng& rng) const {
        genome_type g = parent;
        std::uniform_int_distribution<std::size_t> pos(0, g.size() - 1);
        std::swap(g[pos(rng)], g[pos(rng)]);
        return g;
    }

    // permutations do not mix by cut-and-splice; keep the first parent
    genome_type crossover(const genome_type& a, const genome_type&, evoengine::Rng&) const { return a; }

    double evaluate(const genome_type& g) const {
        double hits = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            hits += g[i] == static_cast<int>(i) ? 1 : 0;
        }
        return hits;
    }

private:
    int n_;
};

static_assert(evoengine::Problem<FixedPoints>);

} // namespace

int main() {
    using namespace evoengine;

    PresetParams params;
    params.pop_size = 10;
    params.lambda = 40;
    const EngineConfig engine = apply_preset(Paradigm::es_plus, params);

    RunConfig run_config;
    run_config.seed = 3;
    run_config.max_generations = 500;
    run_config.target_fitness = 30;

    const auto record = run(engine, run_config, FixedPoints(30));
    std::cout << "engine: " << to_token(classify(engine)) << '\n'
              << "stop: " << to_token(record.stop_reason) << " after " << record.history.back().generation
              << " generations, best " << record.best_individual.fitness << '\n';
    return 0;
}
