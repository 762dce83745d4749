#pragma once

#include <Eigen/Core>

#include "ctqw/graph.hpp"

namespace ctqw {

// Adjacency entries are integers, so residuals of invariant graphs are pure
// rounding noise; anything above this is a genuine invariance failure.
inline constexpr double kDefaultInvarianceTol = 1e-10;

// Szego-Jacobi coefficient pair of the adjacency action on the stratum
// basis. Indexing convention (kept deliberately explicit because the two
// sequences are off by one):
//   alpha(k)  stores alpha_{k+1} = <phi_k|A|phi_k>,      k = 0..depth-1
//   omega(k)  stores omega_{k+1} = <phi_{k+1}|A|phi_k>^2, k = 0..depth-2
// so alpha has one more entry than omega. unit_tail marks sequences that
// continue with omega = 1, alpha = 0 forever (the star-lattice tail).
struct JacobiSequences {
  Eigen::VectorXd omega;
  Eigen::VectorXd alpha;
  bool unit_tail = false;

  /// Number of strata represented by the stored coefficients.
  int depth() const { return static_cast<int>(alpha.size()); }

  double omega_at(int k) const;  // omega_k, 1-based, tail-aware
  double alpha_at(int k) const;  // alpha_k, 1-based, tail-aware
};

/// Validates positivity of omega and the length convention.
JacobiSequences make_jacobi_sequences(Eigen::VectorXd omega,
                                      Eigen::VectorXd alpha,
                                      bool unit_tail = false);

// Residuals of A|phi_k> against span{phi_{k-1}, phi_k, phi_{k+1}}. The
// stratum subspace is invariant under the quantum components exactly when
// every residual vanishes; max_residual < tolerance is the numerical proxy.
struct InvarianceReport {
  double max_residual = 0.0;
  Eigen::VectorXd per_stratum_residuals;
  double tolerance = kDefaultInvarianceTol;
  bool invariant = false;
};

struct Decomposition {
  JacobiSequences sequences;
  InvarianceReport report;
};

// Split A = A+ + A- + A0 along the stratification and read off the
// sequences: alpha_{k+1} = <phi_k|A|phi_k>, sqrt(omega_{k+1}) =
// <phi_{k+1}|A|phi_k>. A non-invariant graph is reported, not thrown;
// callers must not feed non-invariant sequences to spectral routines.
// omega_k <= 0 signals a broken stratification and is a hard error.
Decomposition quantum_decompose(const RootedGraph& g, const Stratification& s,
                                double tolerance = kDefaultInvarianceTol);

/// K2 walk coefficients: omega = [1], alpha = [0, 0].
JacobiSequences k2_sequences();

/// Infinite star lattice with the given ray count: omega = [N], unit tail.
JacobiSequences star_lattice_sequences(int rays);

}  // namespace ctqw
