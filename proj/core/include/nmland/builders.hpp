#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nmland/model.hpp"
#include "nmland/rng.hpp"

namespace nmland {

// One random coefficient: exp(-|z|) with z ~ N(0, sigma). Always in (0, 1];
// larger sigma pushes the mass toward 0.
double sample_coefficient(double sigma, Rng& rng);

struct BuildOptions {
    Alphabet alphabet = Alphabet::binary();
    bool include_constant = false;  // adds a constant term drawn like any coefficient
};

// Complete TypeI model: every index subset of order 1..max_order.
InteractionModel build_type1_complete(int n, int max_order, double sigma,
                                      std::uint64_t seed, const BuildOptions& opts = {});

// Master model: complete TypeI model up to order n (all 2^n - 1 subsets).
InteractionModel build_type1_master(int n, double sigma, std::uint64_t seed,
                                    const BuildOptions& opts = {});

// All n main effects plus round(proportion * C(n,2)) distinct random
// second-order interactions (round half up).
InteractionModel build_type1_proportion(int n, double proportion, double sigma,
                                        std::uint64_t seed, const BuildOptions& opts = {});

// TypeII: every index subset of order <= max_order whose count of odd
// indices is odd. Range fixed to [-1, 1]; arity selects the discretization.
InteractionModel build_type2(int n, int max_order, double sigma, std::uint64_t seed,
                             int arity = 2, bool include_constant = false);

// TypeIII: every index subset of odd order <= max_order; max_order must be
// odd. No constant term.
InteractionModel build_type3(int n, int max_order, double sigma, std::uint64_t seed,
                             Alphabet alphabet = Alphabet::binary());

// Nested schedule of submodels of `master`: first all its main effects, then
// the remaining terms lowest order first, added in randomly chosen groups of
// `group_size` (or fewer when an order runs out). The last entry is the
// master itself; every entry's term set contains the previous one's.
std::vector<InteractionModel> subset_schedule(const InteractionModel& master, Rng& rng,
                                              int group_size = 10);

// Streaming form of subset_schedule for large masters: visits each step with
// the current submodel and the terms added since the previous step (for the
// first step, all of its terms). The callback must not retain the reference.
void visit_subset_schedule(const InteractionModel& master, Rng& rng, int group_size,
                           const std::function<void(const InteractionModel& current,
                                                    std::span<const Term> added)>& visit);

// Same term structure, coefficients redrawn uniformly from (0, 1].
InteractionModel resample_coefficients_uniform(const InteractionModel& m, std::uint64_t seed);

// Number of index subsets of {1..n} with order in [1, max_order]; throws
// std::invalid_argument when it would exceed the term-count cap.
std::uint64_t complete_term_count(int n, int max_order);

}  // namespace nmland
