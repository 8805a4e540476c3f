#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/periodic.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/shifts.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oz {

enum class PressureMethod { spectral, periodic_sum, preimage_sum };

struct PressureReport {
  double value = 0.0;
  PressureMethod method = PressureMethod::spectral;
  int n = 0;              // truncation level / iteration count
  double residual = 0.0;  // >= 0
};

// Pressure of the weighted shift with weights exp(-t * phi).
//   spectral:     log of the Perron root of B(t), power iteration
//   periodic_sum: (1/n) log trace(B(t)^n)
//   preimage_sum: (1/n) log sum of weights over n-step symbolic preimages of
//                 the base state (index 0)
PressureReport pressure(const TransitionSystem& ts, const std::vector<double>& weights, double t,
                        PressureMethod method, int n = 12);

// Convenience: pressure of the tile shift at the potential's block level.
PressureReport pressure(const SubdivisionRule& rule, const Potential& pot, double t,
                        PressureMethod method, int n = 12);

// log spectral radius of A .* exp(psi) for a raw additive weight vector psi.
double pressure_of_weights(const TransitionSystem& ts, const std::vector<double>& psi);

// The unique t with P(tile shift, -t*phi) = 0 for eventually positive phi.
double solve_s0(const SubdivisionRule& rule, const Potential& pot, double tol = 1e-12);

struct CycleWitness {
  std::vector<int> states;  // block states of the minimizing cycle
  double mean = 0.0;
};

struct EventuallyPositiveResult {
  bool positive = false;
  double min_cycle_mean = 0.0;
  std::optional<CycleWitness> witness;  // set when not positive
};

// Karp minimum cycle mean of the potential over the (block) tile shift.
EventuallyPositiveResult eventually_positive(const SubdivisionRule& rule, const Potential& pot);

struct MarkovMeasure {
  Eigen::VectorXd stationary;   // probability per block state
  Eigen::MatrixXd kernel;       // row-stochastic, supported on the relation
  double rho = 0.0;             // Perron root of B(t)
  double entropy = 0.0;         // h_mu of the Markov chain
  double pressure = 0.0;        // log rho
};

// Exact Markov equilibrium measure of B(t) on the potential's block system.
MarkovMeasure equilibrium_measure(const SubdivisionRule& rule, const Potential& pot, double t);
MarkovMeasure equilibrium_measure_weights(const TransitionSystem& ts,
                                          const std::vector<double>& psi);

struct DerivativeCheck {
  double finite_difference = 0.0;
  double integral = 0.0;  // int gamma d mu_{phi + t0 gamma}
  double discrepancy = 0.0;
};

DerivativeCheck pressure_derivative_check(const SubdivisionRule& rule, const Potential& gamma,
                                          const Potential& base, double t0, double h);

struct BoundaryPressures {
  double tile = 0.0;
  double edge_black = 0.0;   // edge shift, black-side induced potential
  double edge_white = 0.0;   // edge shift, white-side induced potential
  double edge_color = 0.0;   // edge_color shift, h-induced potential
  double vertex = 0.0;
  // | P(edge_color, pullback of edge potential) - P(edge, edge potential) |,
  // the bounded-to-one factor invariance, evaluated for the black side.
  double factor_invariance_gap = 0.0;
};

BoundaryPressures boundary_pressures(const SubdivisionRule& rule, const Potential& pot, double t);

// Temporal distance Delta_{phi,xi}(x,y) - Delta_{phi,eta}(x,y), truncated at
// `depth`; exact for level-k potentials once depth >= k - 1. Backward words
// are listed most-recent first: xi = (xi_0, xi_{-1}, ...).
double temporal_distance(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& xi, const std::vector<int>& eta,
                         const std::vector<int>& x_word, const std::vector<int>& y_word,
                         int depth);

// One-sided sum Delta_{phi,xi}(x,y) truncated at depth (for property tests).
double delta_sum(const SubdivisionRule& rule, const Potential& pot, const std::vector<int>& xi,
                 const std::vector<int>& x_word, const std::vector<int>& y_word, int depth);

struct CohomologyVerdict {
  bool constant = false;
  double k_value = 0.0;                    // candidate constant when constant
  std::optional<OrbitRecord> witness_low;  // orbits with distinct means otherwise
  std::optional<OrbitRecord> witness_high;
};

// Screens phi for cohomology to a constant by comparing orbit means
// l_phi(tau)/period over all primitive orbits up to n_max.
CohomologyVerdict cohomology_test(const SubdivisionRule& rule, const Potential& pot, int n_max,
                                  double tol = 1e-12);

}  // namespace oz
