#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nmland/analysis.hpp"
#include "nmland/builders.hpp"
#include "nmland/enumerate.hpp"
#include "nmland/search.hpp"
#include "nmland/stats.hpp"
#include "support/test_util.hpp"

using namespace nmland;
using test::random_nm_model;

TEST_CASE("hill climbing") {
    SUBCASE("the maximum is a fixed point") {
        const InteractionModel m = build_type1_complete(8, 2, 5.0, 4);
        const HillClimbResult r = hill_climb(m, max_location(m));
        CHECK(r.steps == 0);
        CHECK(r.point == max_location(m));
        CHECK(r.fitness == max_value(m));
    }
    SUBCASE("unimodal landscapes climb to the top from anywhere") {
        const InteractionModel m = build_type1_complete(9, 1, 10.0, 5);
        Rng rng(1);
        const std::vector<double> levels = m.alphabet.levels();
        for (int s = 0; s < 20; ++s) {
            Point start(9);
            for (double& v : start) v = levels[rng.uniform_int(0, 1)];
            const HillClimbResult r = hill_climb(m, start);
            CHECK(r.point == max_location(m));
            CHECK(r.fitness == doctest::Approx(max_value(m)).epsilon(1e-12));
        }
    }
    SUBCASE("results satisfy the local-peak predicate") {
        Rng rng(2);
        for (int trial = 0; trial < 10; ++trial) {
            const int arity = trial % 2 == 0 ? 2 : 3;
            const InteractionModel m =
                random_nm_model(rng, 5, {.alphabet = Alphabet{1, 1, arity}});
            const EvaluatedLandscape el = enumerate(m);
            const auto flags = local_peak_flags(el);
            Point start(5);
            const std::vector<double> levels = m.alphabet.levels();
            for (double& v : start) v = levels[rng.uniform_int(0, arity - 1)];
            const HillClimbResult r = hill_climb(m, start);
            std::uint64_t index = 0;
            for (int f = 0; f < 5; ++f) {
                int digit = 0;
                while (levels[digit] != r.point[f]) ++digit;
                index += static_cast<std::uint64_t>(digit) * el.radix[f];
            }
            CHECK(flags[index] == 1);
        }
    }
    SUBCASE("invalid starts are rejected") {
        const InteractionModel m = build_type1_complete(4, 2, 1.0, 1);
        CHECK_THROWS_AS(hill_climb(m, Point{0.5, 1, 1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(hill_climb(m, Point{1, 1}), std::invalid_argument);
    }
}

TEST_CASE("config files") {
    GaConfig config;
    config.population_size = 64;
    config.mutation_rate = 0.05;
    config.selection = Selection::Rank;
    config.elitism = false;
    const GaConfig parsed = ga_config_from_text(ga_config_to_text(config));
    CHECK(parsed.population_size == 64);
    CHECK(parsed.mutation_rate == 0.05);
    CHECK(parsed.selection == Selection::Rank);
    CHECK_FALSE(parsed.elitism);

    CHECK_THROWS_AS(ga_config_from_text("nonsense = 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(ga_config_from_text("population_size = 7\n"), std::invalid_argument);
    CHECK_THROWS_AS(ga_config_from_text("crossover_rate = 1.5\n"), std::invalid_argument);
    const GaConfig commented = ga_config_from_text("# comment\nruns = 4\n\ngenerations 10\n");
    CHECK(commented.runs == 4);
    CHECK(commented.generations == 10);
}

TEST_CASE("ga runs") {
    GaConfig config;
    config.population_size = 64;
    config.generations = 20;

    SUBCASE("identical inputs give identical traces") {
        const InteractionModel m = build_type3(16, 3, 4.0, 2);
        const SearchTrace a = ga_run(m, config, 99);
        const SearchTrace b = ga_run(m, config, 99);
        REQUIRE(a.by_generation.size() == b.by_generation.size());
        for (std::size_t g = 0; g < a.by_generation.size(); ++g)
            CHECK(a.by_generation[g].best_raw == b.by_generation[g].best_raw);
        CHECK(a.best_genome == b.best_genome);
    }
    SUBCASE("elitism keeps the best fitness nondecreasing") {
        const InteractionModel m = build_type3(16, 5, 8.0, 3);
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const SearchTrace t = ga_run(m, config, seed);
            for (std::size_t g = 1; g < t.by_generation.size(); ++g)
                CHECK(t.by_generation[g].best_raw >= t.by_generation[g - 1].best_raw);
        }
    }
    SUBCASE("easy unimodal landscapes are solved, and solved exactly") {
        // sigma 1 keeps every coefficient far above the success tolerance,
        // so a fitness match pins the genome itself
        const InteractionModel m = build_type3(16, 1, 1.0, 7);
        for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
            const SearchTrace t = ga_run(m, config, seed);
            CHECK(t.found_global);
            CHECK(t.best_genome == 0xffffull);
            CHECK(t.distance_to_optimum == 0);
        }
    }
    SUBCASE("normalized trace columns are consistent") {
        const InteractionModel m = build_type3(12, 3, 4.0, 9);
        const double fmax = max_value(m), fmin = min_value(m);
        const SearchTrace t = ga_run(m, config, 5);
        for (const GenerationStat& stat : t.by_generation) {
            CHECK(stat.best_by_max == doctest::Approx(stat.best_raw / fmax).epsilon(1e-12));
            CHECK(stat.best_minmax ==
                  doctest::Approx((stat.best_raw - fmin) / (fmax - fmin)).epsilon(1e-12));
            CHECK(stat.best_minmax >= 0.0);
            CHECK(stat.best_minmax <= 1.0);
        }
    }
    SUBCASE("minmax column is absent when the minimum is unknown") {
        const InteractionModel m = build_type1_proportion(12, 0.5, 4.0, 3);
        const SearchTrace t = ga_run(m, config, 5);
        CHECK(std::isnan(t.by_generation.back().best_minmax));
        CHECK(t.by_generation.back().best_by_max <= 1.0);
    }
    SUBCASE("non-binary alphabets are refused") {
        Rng rng(1);
        const InteractionModel m = random_nm_model(rng, 6, {.alphabet = Alphabet{1, 1, 3}});
        CHECK_THROWS_AS(ga_run(m, config, 1), UnsupportedError);
    }
    SUBCASE("early stop on the optimum") {
        GaConfig stopper = config;
        stopper.stop_on_optimum = true;
        const InteractionModel m = build_type3(10, 1, 1.0, 4);
        const SearchTrace t = ga_run(m, stopper, 8);
        CHECK(t.found_global);
        CHECK(t.by_generation.size() <= static_cast<std::size_t>(config.generations) + 1);
    }
}

TEST_CASE("ga sweeps") {
    GaConfig config;
    config.population_size = 64;
    config.generations = 15;
    config.runs = 6;

    std::vector<InteractionModel> models;
    for (std::uint64_t seed = 0; seed < 3; ++seed)
        models.push_back(build_type3(14, 1, 1.0, 40 + seed));

    const GaSweepResult result = ga_sweep(models, config, 123);
    REQUIRE(result.traces.size() == 3);
    REQUIRE(result.summaries.size() == 3);
    for (const GaModelSummary& s : result.summaries) {
        CHECK(s.runs == 6);
        CHECK(s.success_proportion == 1.0);  // unimodal with crisp coefficients
        CHECK(std::isnan(s.mean_fail_distance));
        REQUIRE(s.mean_best_raw.size() == 16);
        for (std::size_t g = 1; g < s.mean_best_raw.size(); ++g)
            CHECK(s.mean_best_raw[g] >= s.mean_best_raw[g - 1] - 1e-12);
    }

    SUBCASE("sweeps are deterministic and independent of worker count") {
        const GaSweepResult again = ga_sweep(models, config, 123, 1);
        for (std::size_t m = 0; m < 3; ++m)
            for (int r = 0; r < config.runs; ++r)
                CHECK(again.traces[m][r].best_fitness == result.traces[m][r].best_fitness);
    }
}

TEST_CASE("pairwise interactions make the search harder") {
    GaConfig config;
    config.runs = 1;
    auto mean_final_by_max = [&](double proportion, std::uint64_t seed_base) {
        std::vector<InteractionModel> models;
        for (int rep = 0; rep < 8; ++rep)
            models.push_back(build_type1_proportion(16, proportion, 16.0,
                                                    Rng::substream(seed_base, rep).next()));
        const GaSweepResult result = ga_sweep(models, config, 7);
        std::vector<double> finals;
        for (const auto& s : result.summaries) finals.push_back(s.mean_best_by_max.back());
        return mean(finals);
    };
    const double none = mean_final_by_max(0.0, 901);
    const double all = mean_final_by_max(1.0, 902);
    // unimodal landscapes are solved outright; the fully paired ones fall
    // measurably short of their maximum
    CHECK(none == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(all < none - 1e-4);
}
