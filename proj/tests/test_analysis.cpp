#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "nmland/analysis.hpp"
#include "nmland/builders.hpp"
#include "nmland/enumerate.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace nmland;
using test::random_nm_model;

namespace {

// two features, arity three, fitness equals the point index
EvaluatedLandscape index_ramp_table() {
    EvaluatedLandscape el;
    el.n = 2;
    el.arity = 3;
    el.radix = {1, 3};
    el.fitness.resize(9);
    for (std::size_t i = 0; i < 9; ++i) el.fitness[i] = static_cast<double>(i);
    el.optimum_index = 8;
    return el;
}

}  // namespace

TEST_CASE("enumeration") {
    SUBCASE("table sizes") {
        CHECK(enumerate(build_type1_complete(10, 2, 10.0, 1)).size() == 1024);
        Rng rng(1);
        const InteractionModel m = random_nm_model(rng, 3, {.alphabet = Alphabet{1, 1, 3}});
        CHECK(enumerate(m).size() == 27);
    }
    SUBCASE("spot checks agree with evaluate exactly") {
        Rng rng(2);
        for (const Alphabet alphabet :
             {Alphabet::binary(), Alphabet{0.5, 1.5, 2}, Alphabet{1, 1, 3}, Alphabet{0.5, 1.0, 4}}) {
            const InteractionModel m = random_nm_model(rng, 6, {.alphabet = alphabet});
            const EvaluatedLandscape el = enumerate(m);
            for (int s = 0; s < 100; ++s) {
                const std::uint64_t g = rng.next() % el.size();
                CHECK(el.fitness[g] == evaluate(m, point_at(el, g)));
            }
        }
    }
    SUBCASE("budget refusal names the required size") {
        const InteractionModel m = build_type1_complete(12, 2, 1.0, 1);
        try {
            enumerate(m, 1000);
            FAIL("expected a budget error");
        } catch (const BudgetError& e) {
            CHECK(e.required() == 4096);
            CHECK(e.budget() == 1000);
        }
    }
    SUBCASE("real alphabets cannot be enumerated") {
        InteractionModel m;
        m.n = 2;
        m.kind = Kind::TypeI;
        m.alphabet = Alphabet{1.0, 1.0, Alphabet::kRealArity};
        m.terms = {Term{{1}, 0.5}};
        CHECK_THROWS_AS(enumerate(m), UnsupportedError);
    }
    SUBCASE("incremental accumulation matches a fresh enumeration") {
        const InteractionModel full = build_type1_complete(8, 3, 5.0, 11);
        InteractionModel mains = full;
        mains.terms.resize(8);  // canonical order puts the mains first
        EvaluatedLandscape el = enumerate(mains);
        accumulate_terms(el, full.alphabet,
                         std::span<const Term>(full.terms).subspan(8));
        const EvaluatedLandscape fresh = enumerate(full);
        for (std::uint64_t g = 0; g < el.size(); ++g)
            CHECK(el.fitness[g] == doctest::Approx(fresh.fitness[g]).epsilon(1e-12));
    }
}

TEST_CASE("local peaks") {
    SUBCASE("main-effects-only models are unimodal") {
        for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
            const EvaluatedLandscape el = enumerate(build_type1_complete(9, 1, 10.0, seed));
            CHECK(count_local_peaks(el) == 1);
        }
    }
    SUBCASE("a lone pair term gives the two product peaks") {
        InteractionModel m;
        m.n = 2;
        m.alphabet = Alphabet::binary();
        m.kind = Kind::TypeI;
        m.terms = {Term{{1, 2}, 1.0}};
        const EvaluatedLandscape el = enumerate(m);
        CHECK(count_local_peaks(el) == 2);
        const auto flags = local_peak_flags(el);
        CHECK(flags[0] == 1);  // (-1,-1)
        CHECK(flags[3] == 1);  // (+1,+1)
    }
    SUBCASE("agrees with the quadratic neighbor scan") {
        Rng rng(5);
        for (int trial = 0; trial < 15; ++trial) {
            const int arity = trial % 2 == 0 ? 2 : 3;
            const int n = rng.uniform_int(3, arity == 2 ? 6 : 5);
            const InteractionModel m =
                random_nm_model(rng, n, {.alphabet = Alphabet{1, 1, arity}});
            const EvaluatedLandscape el = enumerate(m);
            CHECK(count_local_peaks(el) == test::naive_peak_count(el));
        }
    }
    SUBCASE("plateaus disqualify strictly") {
        EvaluatedLandscape el = index_ramp_table();
        el.fitness = {1, 1, 1, 1, 1, 1, 1, 1, 1};
        CHECK(count_local_peaks(el) == 0);
    }
}

TEST_CASE("random walks") {
    SUBCASE("constant landscapes walk flat") {
        InteractionModel m;
        m.n = 3;
        m.alphabet = Alphabet::binary();
        m.kind = Kind::TypeI;
        m.terms = {Term{{}, 2.0}};
        Rng rng(1);
        for (double f : random_walk(m, 50, rng)) CHECK(f == 2.0);
    }
    SUBCASE("steps move exactly one feature by one level") {
        const EvaluatedLandscape el = index_ramp_table();
        Rng rng(2);
        const std::vector<double> trace = random_walk(el, 500, rng);
        CHECK(trace.size() == 501);
        for (std::size_t t = 1; t < trace.size(); ++t) {
            const auto u = static_cast<std::uint64_t>(trace[t - 1]);
            const auto v = static_cast<std::uint64_t>(trace[t]);
            CHECK(test::naive_adjacent(el, u, v));
        }
    }
    SUBCASE("direct and table walks stay in range") {
        const InteractionModel m = build_type2(6, 3, 5.0, 3);
        Rng rng(3);
        const double lo = min_value(m), hi = max_value(m);
        for (double f : random_walk(m, 300, rng)) {
            CHECK(f >= lo - 1e-12);
            CHECK(f <= hi + 1e-12);
        }
    }
}

TEST_CASE("lag-1 autocorrelation") {
    SUBCASE("linear ramp") {
        std::vector<double> ramp;
        for (int i = 0; i < 100; ++i) ramp.push_back(0.5 * i + 3.0);
        CHECK(lag1_autocorrelation(ramp) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("alternating sequence") {
        std::vector<double> alt;
        for (int i = 0; i < 100; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
        CHECK(lag1_autocorrelation(alt) == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("degenerate inputs") {
        const std::vector<double> flat(10, 4.0);
        CHECK_THROWS_AS(lag1_autocorrelation(flat), std::domain_error);
        const std::vector<double> two{1.0, 2.0};
        CHECK_THROWS_AS(lag1_autocorrelation(two), std::invalid_argument);
    }
}

TEST_CASE("basin of attraction") {
    SUBCASE("unimodal landscapes have the full basin") {
        // sigma stays small here: a coefficient below the fitness scale's
        // machine epsilon would create an exact plateau and a tied maximum
        for (std::uint64_t seed : {4ull, 8ull}) {
            const EvaluatedLandscape el = enumerate(build_type1_complete(8, 1, 5.0, seed));
            CHECK(basin_fraction(el) == 1.0);
            CHECK(basin_fraction_membership(el) == 1.0);
        }
    }
    SUBCASE("a strong interaction walls off part of the landscape") {
        // the 4-way product dominates, so every even-parity point is a local
        // peak; the weak mains single out all-ones as the global maximum
        InteractionModel m;
        m.n = 4;
        m.alphabet = Alphabet::binary();
        m.kind = Kind::TypeI;
        m.terms = {Term{{1}, 0.1}, Term{{2}, 0.1}, Term{{3}, 0.1}, Term{{4}, 0.1},
                   Term{{1, 2, 3, 4}, 3.0}};
        const EvaluatedLandscape el = enumerate(m);
        CHECK(count_local_peaks(el) == 8);
        const double frac = basin_fraction(el);
        CHECK(frac < 1.0);
        CHECK(frac > 0.0);
        CHECK(frac == doctest::Approx(test::improving_path_basin(el)).epsilon(1e-12));
    }
    SUBCASE("recursive weighting equals the improving-path probability") {
        Rng rng(6);
        for (int trial = 0; trial < 12; ++trial) {
            const int arity = trial % 3 == 0 ? 3 : 2;
            const int n = rng.uniform_int(3, arity == 2 ? 6 : 4);
            const InteractionModel m = random_nm_model(
                rng, n, {.alphabet = Alphabet{1, 1, arity}, .ensure_mains = true});
            const EvaluatedLandscape el = enumerate(m);
            const double frac = basin_fraction(el);
            CHECK(frac == doctest::Approx(test::improving_path_basin(el)).epsilon(1e-9));
            CHECK(basin_fraction_membership(el) >= frac - 1e-12);
        }
    }
    SUBCASE("tied maxima are refused") {
        InteractionModel m;
        m.n = 3;
        m.alphabet = Alphabet::binary();
        m.kind = Kind::TypeI;
        m.terms = {Term{{1, 2}, 1.0}};  // feature 3 inert
        const EvaluatedLandscape el = enumerate(m);
        CHECK_THROWS_AS(basin_fraction(el), UnsupportedError);
    }
}

TEST_CASE("histogram") {
    const InteractionModel m = build_type1_complete(10, 2, 10.0, 5);
    const EvaluatedLandscape el = enumerate(m);
    const Histogram h = fitness_histogram(el, 30);
    std::uint64_t total = 0;
    for (auto c : h.counts) total += c;
    CHECK(total == 1024);
    CHECK(h.lo < h.hi);

    SUBCASE("hypercube mean is the constant term") {
        double s = 0.0;
        for (double f : el.fitness) s += f;
        CHECK(s / el.size() == doctest::Approx(0.0).epsilon(1e-9));

        const InteractionModel with_const =
            build_type1_complete(8, 2, 5.0, 6, {.include_constant = true});
        const EvaluatedLandscape el2 = enumerate(with_const);
        double s2 = 0.0;
        for (double f : el2.fitness) s2 += f;
        CHECK(std::abs(s2 / el2.size() - with_const.constant_term()) <= 1e-9);
    }
}

TEST_CASE("distance profile") {
    const InteractionModel m = build_type1_complete(6, 3, 5.0, 9);
    const EvaluatedLandscape el = enumerate(m);
    const auto profile = distance_profile(el);
    REQUIRE(profile.size() == el.size());
    int zero_distance = 0;
    for (const ProfileEntry& e : profile) {
        if (e.distance == 0) {
            ++zero_distance;
            CHECK(e.index == el.optimum_index);
            CHECK(e.is_peak);
            CHECK(e.fitness == el.fitness[el.optimum_index]);
        }
        CHECK(e.distance >= 0);
        CHECK(e.distance <= 6);
    }
    CHECK(zero_distance == 1);
}

TEST_CASE("arity refinement, reported not asserted") {
    // exploratory: do the peaks of the two-level landscape survive when the
    // same range is sampled with three levels?
    Rng rng(12);
    int preserved = 0, total = 0;
    for (int trial = 0; trial < 5; ++trial) {
        InteractionModel coarse = random_nm_model(rng, 6, {.ensure_mains = true});
        InteractionModel fine = coarse;
        fine.alphabet.arity = 3;
        const EvaluatedLandscape el2 = enumerate(coarse);
        const EvaluatedLandscape el3 = enumerate(fine);
        const auto flags2 = local_peak_flags(el2);
        const auto flags3 = local_peak_flags(el3);
        for (std::uint64_t g = 0; g < el2.size(); ++g) {
            if (!flags2[g]) continue;
            ++total;
            // the matching three-level index uses digits {0, 2}
            std::uint64_t g3 = 0;
            for (int f = 0; f < 6; ++f)
                if ((g >> f) & 1) g3 += 2 * el3.radix[f];
            preserved += flags3[g3] ? 1 : 0;
        }
    }
    MESSAGE("two-level peaks preserved at three levels: ", preserved, "/", total);
    CHECK(total > 0);
}

TEST_CASE("stats bundle") {
    const InteractionModel m = build_type1_complete(8, 2, 10.0, 3);
    const EvaluatedLandscape el = enumerate(m);
    Rng rng(1);
    const LandscapeStats stats = compute_stats(el, rng, {.walk = {4, 2000}});
    CHECK(stats.peak_count >= 1);
    CHECK(stats.lag1_autocorr > -1.0);
    CHECK(stats.lag1_autocorr < 1.0);
    CHECK(stats.basin_frac > 0.0);
    CHECK(stats.basin_frac <= 1.0);
    CHECK(stats.profile.size() == el.size());
}
