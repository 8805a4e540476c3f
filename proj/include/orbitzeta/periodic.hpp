#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/shifts.hpp"
#include "orbitzeta/subdivision.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace oz {

// All length-n words with admissible wrap-around, i.e. Fix(sigma^n).
// Refuses (throws Error carrying the estimate) when count_fixed exceeds cap.
std::vector<std::vector<int>> fixed_words(const TransitionSystem& ts, int n,
                                          std::uint64_t cap = 10'000'000);

// Streaming form: calls fn for every fixed word.
void for_each_fixed_word(const TransitionSystem& ts, int n,
                         const std::function<void(const std::vector<int>&)>& fn,
                         std::uint64_t cap = 10'000'000);
// Closed walks from one start state, no budget check.
void for_each_fixed_word_from(const TransitionSystem& ts, int n, int start,
                              const std::function<void(const std::vector<int>&)>& fn);

struct MCounts {
  BigInt m_tile;
  BigInt m_edge_color;
  BigInt m_edge;
  BigInt m_vertex;
  int local_degree = 1;  // deg_{f^n}(v)
};

// Restricted-trace counts of fixed symbolic words over a periodic
// postcritical vertex, plus deg_{f^n}(v). Requires f^n(v) = v.
MCounts vertex_M_counts(const SubdivisionRule& rule, int vertex, int n);

struct AggregateIdentity {
  BigInt lhs;  // tr(A_tile^n) - tr(A_par^n) + tr(A_edge^n) + N_vertex(n)
  BigInt rhs;  // 1 + degree^n
  bool equal = false;
};

AggregateIdentity aggregate_identity(const SubdivisionRule& rule, int n);

struct PeriodicClass {
  enum class Kind { interior, curve_nonvertex, postcritical };
  Kind kind = Kind::interior;
  CellWord address;        // tile word (interior) or edge word (curve)
  int vertex = -1;            // postcritical only
  int period = 0;             // exact period of the geometric point
  std::int64_t degree = 1;    // deg_{f^n}(x) at the queried n
};

// All geometric periodic points of period dividing n, each exactly once.
std::vector<PeriodicClass> classify_periodic_points(const SubdivisionRule& rule, int n,
                                                    std::uint64_t cap = 10'000'000);

struct OrbitRecord {
  PeriodicClass::Kind kind = PeriodicClass::Kind::interior;
  int period = 0;
  std::string address;   // canonical: lexicographically minimal rotation
  double weight = 0.0;   // l_phi(tau)
  std::int64_t degree = 1;  // product of local degrees over the orbit
};

class Potential;  // potential.hpp

// Primitive periodic orbits of exact period n <= n_max, one record per orbit,
// canonical representative addresses, weighted lengths from `pot`.
std::vector<OrbitRecord> primitive_orbits(const SubdivisionRule& rule, int n_max,
                                          const Potential& pot,
                                          std::uint64_t cap = 100'000'000);
void for_each_primitive_orbit(const SubdivisionRule& rule, int n_max, const Potential& pot,
                              const std::function<void(const OrbitRecord&)>& fn,
                              std::uint64_t cap = 100'000'000);

// True iff the word is its own lexicographically minimal rotation (letters
// ranked by state id strings).
bool is_canonical_rotation(const std::vector<int>& word, const std::vector<int>& rank);
// True iff no proper divisor d of n is a rotation period of the word.
bool is_primitive_word(const std::vector<int>& word);

}  // namespace oz
