#include "orbitzeta/transfer.hpp"

#include <Eigen/Eigenvalues>

namespace oz {

PerronResult power_iteration(const Eigen::MatrixXd& b, double tol, int max_iter) {
  PerronResult out;
  const int n = static_cast<int>(b.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v /= v.sum();
  double rho = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w = b * v;
    double norm = w.sum();
    if (!(norm > 0)) throw Error("power iteration collapsed: matrix has a zero row reachable set");
    rho = v.dot(w) / v.dot(v);
    double residual = (w - rho * v).lpNorm<Eigen::Infinity>() / std::max(rho, 1e-300);
    v = w / norm;
    if (residual < tol) {
      out.rho = rho;
      out.right = v;
      out.residual = residual;
      out.iterations = it;
      out.converged = true;
      return out;
    }
  }
  out.rho = rho;
  out.right = v;
  out.residual = tol;
  out.iterations = max_iter;
  out.converged = false;
  throw Error("power iteration did not converge within the iteration cap");
}

double spectral_radius(const Eigen::MatrixXd& b) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(b, /*computeEigenvectors=*/false);
  double rho = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
  return rho;
}

}  // namespace oz
