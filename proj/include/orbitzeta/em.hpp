#pragma once

#include "orbitzeta/curve.hpp"
#include "orbitzeta/subdivision.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oz {

// E_m(p_n, ..., p_1; p_0): the points of f|_C^{-n}(p_0) whose i-th forward
// iterate stays in the closed edge pair at p_{n-i}. Itinerary is passed as
// (p_0, p_1, ..., p_n): level-m curve vertices, p_0 the base point.
//
// `recursive` extends step by step through one-step sets (the inductive
// identity); `direct` filters backward preimage sets against the edge pairs.
std::vector<CurveVertex> enumerate_Em(const CurveRefinement& cr, int m,
                                      const std::vector<CurveVertex>& itinerary);
std::vector<CurveVertex> enumerate_Em_direct(const CurveRefinement& cr, int m,
                                             const std::vector<CurveVertex>& itinerary);
// Forward brute force over all candidate level-(m+n) vertices in the edge
// pair at p_n; only feasible for small n.
std::vector<CurveVertex> enumerate_Em_bruteforce(const CurveRefinement& cr, int m,
                                                 const std::vector<CurveVertex>& itinerary);

struct EmTrial {
  int n = 0;
  std::int64_t cardinality = 0;
  double bound = 0.0;  // m * 2^(n/m)
  double ratio = 0.0;  // cardinality / bound
  bool within_bound = true;
  bool recursion_matches_direct = true;
};

struct EmReport {
  int m = 0;
  std::vector<EmTrial> trials;
  double max_ratio = 0.0;
  bool all_within_bound = true;
  bool all_match = true;
};

// Samples `trials` random itineraries with lengths n <= n_max and checks the
// cardinality bound card E_m <= m 2^{n/m} plus recursive-vs-direct agreement.
EmReport check_Em_bound(const SubdivisionRule& rule, int m, int trials, int n_max,
                        std::uint64_t seed = 12345);

// Random itinerary (p_0, ..., p_n) of level-m vertices that keeps E_m
// nonempty with high probability.
std::vector<CurveVertex> random_em_itinerary(const CurveRefinement& cr, int m, int n,
                                             std::mt19937_64& rng);

}  // namespace oz
