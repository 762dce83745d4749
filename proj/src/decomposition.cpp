#include "ctqw/decomposition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctqw {

double JacobiSequences::omega_at(int k) const {
  if (k < 1) throw std::invalid_argument("omega_at: index is 1-based");
  if (k <= omega.size()) return omega(k - 1);
  if (unit_tail) return 1.0;
  throw std::out_of_range("omega_" + std::to_string(k) +
                          " beyond stored depth and no tail");
}

double JacobiSequences::alpha_at(int k) const {
  if (k < 1) throw std::invalid_argument("alpha_at: index is 1-based");
  if (k <= alpha.size()) return alpha(k - 1);
  if (unit_tail) return 0.0;
  throw std::out_of_range("alpha_" + std::to_string(k) +
                          " beyond stored depth and no tail");
}

JacobiSequences make_jacobi_sequences(Eigen::VectorXd omega,
                                      Eigen::VectorXd alpha, bool unit_tail) {
  if (alpha.size() != omega.size() + 1)
    throw std::invalid_argument(
        "JacobiSequences: alpha must have exactly one more entry than omega");
  for (int i = 0; i < omega.size(); ++i)
    if (!(omega(i) > 0.0))
      throw std::invalid_argument("JacobiSequences: omega_" +
                                  std::to_string(i + 1) +
                                  " must be strictly positive");
  return JacobiSequences{std::move(omega), std::move(alpha), unit_tail};
}

Decomposition quantum_decompose(const RootedGraph& g, const Stratification& s,
                                double tolerance) {
  if (tolerance <= 0.0)
    throw std::invalid_argument("quantum_decompose: tolerance must be > 0");
  const int depth = s.depth();
  const int n = g.vertex_count();

  Eigen::MatrixXd phi(n, depth);
  for (int k = 0; k < depth; ++k) phi.col(k) = stratum_unit_vector(s, k, n);

  Eigen::VectorXd omega(depth - 1), alpha(depth);
  Eigen::VectorXd residuals(depth);
  for (int k = 0; k < depth; ++k) {
    Eigen::VectorXd w = apply_adjacency(g, phi.col(k));
    alpha(k) = phi.col(k).dot(w);  // alpha_{k+1}
    Eigen::VectorXd rem = w - alpha(k) * phi.col(k);
    if (k + 1 < depth) {
      const double raise = phi.col(k + 1).dot(w);  // sqrt(omega_{k+1})
      const double wk = raise * raise;
      if (wk <= 0.0)
        throw std::domain_error(
            "quantum_decompose: omega_" + std::to_string(k + 1) +
            " is not positive; stratification is inconsistent");
      omega(k) = wk;
      rem -= raise * phi.col(k + 1);
    }
    if (k > 0) rem -= phi.col(k - 1).dot(w) * phi.col(k - 1);
    residuals(k) = rem.norm();
  }

  InvarianceReport report;
  report.per_stratum_residuals = residuals;
  report.max_residual = residuals.maxCoeff();
  report.tolerance = tolerance;
  report.invariant = report.max_residual < tolerance;

  return Decomposition{
      make_jacobi_sequences(std::move(omega), std::move(alpha)), report};
}

JacobiSequences k2_sequences() {
  return make_jacobi_sequences(Eigen::VectorXd::Ones(1),
                               Eigen::VectorXd::Zero(2));
}

JacobiSequences star_lattice_sequences(int rays) {
  if (rays < 1)
    throw std::invalid_argument("star_lattice_sequences: rays must be >= 1");
  Eigen::VectorXd omega(1);
  omega << static_cast<double>(rays);
  return make_jacobi_sequences(omega, Eigen::VectorXd::Zero(2), true);
}

}  // namespace ctqw
