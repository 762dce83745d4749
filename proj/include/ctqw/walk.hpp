#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ctqw/decomposition.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"

namespace ctqw {

// Tolerance for the orthogonality pre-check that guards the spectral
// amplitude route against a (sequences, measure) mismatch.
inline constexpr double kConsistencyTol = 1e-8;
inline constexpr int kOracleSizeCap = 5000;

enum class Method { spectral, oracle, closed_form, qclt };

// Walk amplitudes q_k(t) = <phi_k| exp(-itA) |phi_0> on a time grid, one
// column per stratum k = 0..k_max.
struct AmplitudeSeries {
  std::vector<double> times;
  Eigen::MatrixXcd amplitudes;  // row per time, column per stratum
  Method method = Method::spectral;

  int k_max() const { return static_cast<int>(amplitudes.cols()) - 1; }
};

/// steps equally spaced times covering [0, t_max] inclusive.
std::vector<double> time_grid(double t_max, int steps);

// q_k(t) = (omega_1...omega_k)^{-1/2} * integral of exp(-itx) P_k(x) dmu.
// Atoms are summed exactly; a continuous part goes through the measure
// quadrature. The pair (j, m) must pass the orthogonality check, otherwise
// the call is rejected. For finite sequences q_k = 0 for k >= depth.
AmplitudeSeries amplitudes_spectral(const JacobiSequences& j,
                                    const SpectralMeasure& m, int k_max,
                                    const std::vector<double>& times,
                                    double consistency_tol = kConsistencyTol);

// Independent route: full eigendecomposition of the adjacency matrix and
// direct assembly of <phi_k| exp(-itA) |phi_0> from the eigenpairs.
AmplitudeSeries amplitudes_oracle(const RootedGraph& g,
                                  const Stratification& s,
                                  const std::vector<double>& times,
                                  int size_cap = kOracleSizeCap);

/// Full vertex-space evolution exp(-itA)|root>, one row per time, one
/// column per vertex; same eigendecomposition route as amplitudes_oracle.
Eigen::MatrixXcd vertex_amplitudes_oracle(const RootedGraph& g,
                                          const std::vector<double>& times,
                                          int size_cap = kOracleSizeCap);

struct ProbabilityTable {
  std::vector<double> times;
  Eigen::MatrixXd probabilities;  // row per time, column per vertex
};

/// Spread the stratum probabilities uniformly over each stratum:
/// |q_{ik}(t)|^2 = |q_k(t)|^2 / |V_k| for every vertex i in stratum k.
ProbabilityTable per_vertex_probability(const AmplitudeSeries& series,
                                        const Stratification& s);

/// N-indexed family of sequence pairs, e.g. N-fold star powers of one base
/// graph.
using SequencesFamily = std::function<JacobiSequences(int)>;

// Amplitudes of the time-rescaled walk <phi_k| exp(-itA/sqrt(N)) |phi_0>
// for one family member. The reported times are the unscaled t.
AmplitudeSeries qclt_amplitudes(const SequencesFamily& family, int n_copies,
                                int k_max, const std::vector<double>& times);

/// The K2 limit walk: q_0 = cos t, q_1 = -i sin t, all higher strata 0.
AmplitudeSeries qclt_limit(int k_max, const std::vector<double>& times);

struct ConvergenceReport {
  std::vector<int> n_values;
  std::vector<double> sup_errors;  // per N, sup over times of max_k |.|
};

/// Sup-norm distance between the rescaled walk and the K2 limit, per N.
ConvergenceReport convergence_study(const SequencesFamily& family,
                                    const std::vector<int>& n_list, int k_max,
                                    const std::vector<double>& times);

SequencesFamily star_p3_family();       // omega = [N, 1]
SequencesFamily star_c4_family();       // omega = [2N, 2]
SequencesFamily star_lattice_family();  // omega = [N], unit tail

// Closed-form amplitude evaluations for the worked families. The star
// power forms are trigonometric in sqrt(N+1) resp. sqrt(2(N+1)); the
// lattice forms (rays = 1, 2) are Bessel series.
AmplitudeSeries closed_form_star_p3(int copies,
                                    const std::vector<double>& times);
AmplitudeSeries closed_form_star_c4(int copies,
                                    const std::vector<double>& times);
AmplitudeSeries closed_form_lattice(int rays, int k_max,
                                    const std::vector<double>& times);

}  // namespace ctqw
