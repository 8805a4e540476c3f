#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/periodic.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/shifts.hpp"

#include <optional>
#include <vector>

namespace oz {

struct SeriesValue {
  Complex s;
  Complex value;
  int truncation = 0;
  // Majorant for |true value - value| from the geometric-series estimate;
  // unavailable when the spectral radius at Re(s) is not < 1.
  std::optional<double> tail_bound;
};

// A system together with per-state additive weights (an induced potential).
struct WeightedSystem {
  TransitionSystem system;
  std::vector<double> weights;
};

// The four factor systems at the potential's block level with their induced
// potentials: tile (phi), edge_color (phi of the h-image), edge (black-side
// lift), vertex (canonical chain values).
struct FactorSystems {
  WeightedSystem tile;
  WeightedSystem edge_color;
  WeightedSystem edge;
  WeightedSystem vertex;
};

FactorSystems build_factor_systems(const SubdivisionRule& rule, const Potential& pot);

// exp(sum_{n<=N} Z^(n)(s)/n) with Z^(n)(s) = trace(B(s)^n).
SeriesValue zeta_truncated(const WeightedSystem& ws, Complex s, int N);

// 1/det(I - B(s)); throws a pole-signal Error when |det| < 1e-13 * ||I - B||.
Complex zeta_determinant(const WeightedSystem& ws, Complex s);
// Raw determinant, for pole detection without the throw.
Complex zeta_determinant_det(const WeightedSystem& ws, Complex s);

// Dynamical Dirichlet series with local-degree coefficients over geometric
// periodic points, enumerated via the periodic-point classification. Vertex
// contributions follow the counting identity's bookkeeping (see README).
SeriesValue dirichlet_truncated(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                int N, std::uint64_t cap = 100'000'000);
// The per-n inner sums of the series above, n = 1..N.
std::vector<Complex> dirichlet_terms(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                     int N, std::uint64_t cap = 100'000'000);

enum class OrbitCoefficient { one, degree };

// prod over primitive orbits (1 - w(tau) e^{-s l_phi(tau)})^{-1}; throws a
// divergence-signal Error when a factor's base has modulus >= 1.
Complex euler_product(const std::vector<OrbitRecord>& records, OrbitCoefficient coeff, Complex s,
                      int period_max);

// | D(s) - zeta_tile * zeta_edge * zeta_vertex / zeta_edge_color | with all
// five series truncated at N.
double product_identity_residual(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                 int N);

}  // namespace oz
