#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/shifts.hpp"

#include <Eigen/Dense>

#include <vector>

namespace oz {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Boolean transition matrix as a dense 0/1 matrix over Scalar.
template <typename Scalar>
DenseMatrix<Scalar> adjacency_matrix(const TransitionSystem& ts) {
  const int n = ts.size();
  DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j : ts.succ[i]) a(i, j) = Scalar(1);
  return a;
}

// Weighted transition matrix B with B(w, w') = A(w, w') * exp(-t * phi(w));
// t may be real or complex.
template <typename Scalar>
DenseMatrix<Scalar> transfer_matrix(const TransitionSystem& ts, const std::vector<double>& weights,
                                    Scalar t) {
  const int n = ts.size();
  DenseMatrix<Scalar> b = DenseMatrix<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Scalar w = std::exp(-t * weights[i]);
    for (int j : ts.succ[i]) b(i, j) = w;
  }
  return b;
}

// trace(B^n) for n = 1..n_max in one sweep of dense products.
template <typename Scalar>
std::vector<Scalar> trace_powers(const DenseMatrix<Scalar>& b, int n_max) {
  std::vector<Scalar> out;
  out.reserve(n_max);
  DenseMatrix<Scalar> p = b;
  out.push_back(p.trace());
  for (int n = 2; n <= n_max; ++n) {
    p = (p * b).eval();
    out.push_back(p.trace());
  }
  return out;
}

struct PerronResult {
  double rho = 0.0;            // spectral radius
  Eigen::VectorXd right;       // right Perron vector, positive, 1-normalized
  double residual = 0.0;       // Rayleigh residual of the last iterate
  int iterations = 0;
  bool converged = false;
};

// Power iteration with the deterministic all-ones start vector; converges for
// primitive nonnegative matrices. tolerance on ||Bv - rho v||_inf / rho.
PerronResult power_iteration(const Eigen::MatrixXd& b, double tol = 1e-12, int max_iter = 200000);

// Spectral radius via the dense eigensolver; valid for any matrix, used where
// the shift need not be mixing.
double spectral_radius(const Eigen::MatrixXd& b);

}  // namespace oz
