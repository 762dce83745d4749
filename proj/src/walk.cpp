#include "ctqw/walk.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ctqw/bessel.hpp"

namespace ctqw {
namespace {

const Complex kI{0.0, 1.0};

void check_times(const std::vector<double>& times) {
  if (times.empty())
    throw std::invalid_argument("amplitude series: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument(
          "amplitude series: times must be strictly increasing");
}

/// sqrt(omega_1 ... omega_k) for k = 0..k_max.
Eigen::VectorXd stratum_norms(const JacobiSequences& j, int k_max) {
  Eigen::VectorXd norms(k_max + 1);
  norms(0) = 1.0;
  for (int k = 1; k <= k_max; ++k)
    norms(k) = norms(k - 1) * std::sqrt(j.omega_at(k));
  return norms;
}

Complex phase_of(double x, double t) { return std::exp(-kI * (x * t)); }

}  // namespace

std::vector<double> time_grid(double t_max, int steps) {
  if (steps < 1) throw std::invalid_argument("time_grid: steps must be >= 1");
  if (t_max <= 0.0) throw std::invalid_argument("time_grid: t_max must be > 0");
  std::vector<double> times(steps);
  if (steps == 1) return {0.0};
  for (int i = 0; i < steps; ++i) times[i] = t_max * i / (steps - 1);
  return times;
}

AmplitudeSeries amplitudes_spectral(const JacobiSequences& j,
                                    const SpectralMeasure& m, int k_max,
                                    const std::vector<double>& times,
                                    double consistency_tol) {
  check_times(times);
  if (k_max < 0)
    throw std::invalid_argument("amplitudes_spectral: k_max must be >= 0");

  const bool finite = !j.unit_tail;
  // Columns actually computed; for finite graphs everything at or beyond
  // the stratification depth vanishes identically.
  const int k_eff = finite ? std::min(k_max, j.depth() - 1) : k_max;

  // Reject a mismatched (sequences, measure) pair before integrating. The
  // moment form of the orthogonality check stays within the reliability
  // bound and is stable however far out the atoms sit.
  const int check_deg =
      std::max(2, std::min(2 * k_eff, kMaxMomentDegree));
  const double defect = moment_defect(j, m, check_deg);
  if (defect > consistency_tol)
    throw std::domain_error(
        "amplitudes_spectral: sequences and measure are inconsistent "
        "(relative moment defect " +
        std::to_string(defect) + ")");

  const Eigen::VectorXd norms = stratum_norms(j, k_eff);
  const int n_atoms = static_cast<int>(m.atoms.size());
  Eigen::MatrixXd poly_at_atoms(n_atoms, k_eff + 1);
  Eigen::VectorXd atom_weights(n_atoms);
  for (int l = 0; l < n_atoms; ++l) {
    poly_at_atoms.row(l) = eval_poly_all(j, k_eff, m.atoms[l].position);
    atom_weights(l) = m.atoms[l].weight;
  }

  SpectralMeasure continuous = m;
  continuous.atoms.clear();
  const bool has_continuous =
      continuous.density.has_value() || continuous.tabulated.has_value();

  AmplitudeSeries series;
  series.times = times;
  series.method = Method::spectral;
  series.amplitudes = Eigen::MatrixXcd::Zero(times.size(), k_max + 1);
  for (std::size_t row = 0; row < times.size(); ++row) {
    const double t = times[row];
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(k_eff + 1);
    if (n_atoms > 0) {
      Eigen::VectorXcd weighted(n_atoms);
      for (int l = 0; l < n_atoms; ++l)
        weighted(l) = atom_weights(l) * phase_of(m.atoms[l].position, t);
      q = poly_at_atoms.transpose() * weighted;
    }
    if (has_continuous) {
      q += integrate(
          continuous,
          [&](double x) -> Eigen::VectorXcd {
            return phase_of(x, t) * eval_poly_all(j, k_eff, x);
          });
    }
    series.amplitudes.row(row).head(k_eff + 1) =
        (q.array() / norms.array().cast<Complex>()).matrix();
  }
  return series;
}

AmplitudeSeries amplitudes_oracle(const RootedGraph& g,
                                  const Stratification& s,
                                  const std::vector<double>& times,
                                  int size_cap) {
  check_times(times);
  const int n = g.vertex_count();
  if (n > size_cap)
    throw std::invalid_argument(
        "amplitudes_oracle: graph exceeds the size cap of " +
        std::to_string(size_cap) + " vertices");
  int covered = 0;
  for (const auto& shell : s.strata) covered += static_cast<int>(shell.size());
  if (covered != n || s.strata.at(0) != std::vector<int>{g.root()})
    throw std::invalid_argument(
        "amplitudes_oracle: stratification does not match the graph");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g));
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  const int depth = s.depth();
  // overlaps(e, k) = <u_e|phi_k>; root overlaps are column 0 of strata.
  Eigen::MatrixXd overlaps(n, depth);
  for (int k = 0; k < depth; ++k)
    overlaps.col(k) = vectors.transpose() * stratum_unit_vector(s, k, n);
  const Eigen::VectorXd root_overlap = vectors.row(g.root());

  AmplitudeSeries series;
  series.times = times;
  series.method = Method::oracle;
  series.amplitudes.resize(times.size(), depth);
  for (std::size_t row = 0; row < times.size(); ++row) {
    Eigen::VectorXcd weighted(n);
    for (int e = 0; e < n; ++e)
      weighted(e) = root_overlap(e) * phase_of(values(e), times[row]);
    series.amplitudes.row(row) = overlaps.transpose() * weighted;
  }
  return series;
}

Eigen::MatrixXcd vertex_amplitudes_oracle(const RootedGraph& g,
                                          const std::vector<double>& times,
                                          int size_cap) {
  check_times(times);
  const int n = g.vertex_count();
  if (n > size_cap)
    throw std::invalid_argument(
        "vertex_amplitudes_oracle: graph exceeds the size cap of " +
        std::to_string(size_cap) + " vertices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g));
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const Eigen::VectorXd root_overlap = vectors.row(g.root());

  Eigen::MatrixXcd psi(times.size(), n);
  for (std::size_t row = 0; row < times.size(); ++row) {
    Eigen::VectorXcd weighted(n);
    for (int e = 0; e < n; ++e)
      weighted(e) = root_overlap(e) * phase_of(values(e), times[row]);
    psi.row(row) = vectors * weighted;
  }
  return psi;
}

ProbabilityTable per_vertex_probability(const AmplitudeSeries& series,
                                        const Stratification& s) {
  if (series.k_max() + 1 != s.depth())
    throw std::invalid_argument(
        "per_vertex_probability: series covers " +
        std::to_string(series.k_max() + 1) + " strata but the graph has " +
        std::to_string(s.depth()));
  int n = 0;
  for (const auto& shell : s.strata) n += static_cast<int>(shell.size());

  ProbabilityTable table;
  table.times = series.times;
  table.probabilities.resize(series.times.size(), n);
  for (int k = 0; k < s.depth(); ++k) {
    const double size = static_cast<double>(s.strata[k].size());
    for (std::size_t row = 0; row < series.times.size(); ++row) {
      const double p = std::norm(series.amplitudes(row, k)) / size;
      for (int v : s.strata[k]) table.probabilities(row, v) = p;
    }
  }
  return table;
}

AmplitudeSeries qclt_amplitudes(const SequencesFamily& family, int n_copies,
                                int k_max, const std::vector<double>& times) {
  if (n_copies < 1)
    throw std::invalid_argument("qclt_amplitudes: N must be >= 1");
  const JacobiSequences j = family(n_copies);
  const SpectralMeasure m = measure_for(j);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_copies));
  std::vector<double> scaled(times.size());
  std::transform(times.begin(), times.end(), scaled.begin(),
                 [scale](double t) { return t * scale; });
  AmplitudeSeries series = amplitudes_spectral(j, m, k_max, scaled);
  series.times = times;
  series.method = Method::qclt;
  return series;
}

AmplitudeSeries qclt_limit(int k_max, const std::vector<double>& times) {
  check_times(times);
  if (k_max < 0) throw std::invalid_argument("qclt_limit: k_max must be >= 0");
  AmplitudeSeries series;
  series.times = times;
  series.method = Method::qclt;
  series.amplitudes = Eigen::MatrixXcd::Zero(times.size(), k_max + 1);
  for (std::size_t row = 0; row < times.size(); ++row) {
    series.amplitudes(row, 0) = std::cos(times[row]);
    if (k_max >= 1) series.amplitudes(row, 1) = -kI * std::sin(times[row]);
  }
  return series;
}

ConvergenceReport convergence_study(const SequencesFamily& family,
                                    const std::vector<int>& n_list, int k_max,
                                    const std::vector<double>& times) {
  if (n_list.empty())
    throw std::invalid_argument("convergence_study: empty N list");
  const AmplitudeSeries limit = qclt_limit(k_max, times);
  ConvergenceReport report;
  report.n_values = n_list;
  report.sup_errors.reserve(n_list.size());
  for (int n : n_list) {
    const AmplitudeSeries series = qclt_amplitudes(family, n, k_max, times);
    report.sup_errors.push_back(
        (series.amplitudes - limit.amplitudes).cwiseAbs().maxCoeff());
  }
  return report;
}

SequencesFamily star_p3_family() {
  return [](int n) {
    if (n < 1) throw std::invalid_argument("star_p3_family: N must be >= 1");
    Eigen::VectorXd omega(2);
    omega << static_cast<double>(n), 1.0;
    return make_jacobi_sequences(omega, Eigen::VectorXd::Zero(3));
  };
}

SequencesFamily star_c4_family() {
  return [](int n) {
    if (n < 1) throw std::invalid_argument("star_c4_family: N must be >= 1");
    Eigen::VectorXd omega(2);
    omega << 2.0 * n, 2.0;
    return make_jacobi_sequences(omega, Eigen::VectorXd::Zero(3));
  };
}

SequencesFamily star_lattice_family() {
  return [](int n) { return star_lattice_sequences(n); };
}

namespace {

// Both star power families share the amplitude shape; only the frequency
// sqrt(N+1) vs sqrt(2(N+1)) differs.
AmplitudeSeries closed_form_star_power(int copies, double frequency,
                                       const std::vector<double>& times) {
  check_times(times);
  const double n = static_cast<double>(copies);
  AmplitudeSeries series;
  series.times = times;
  series.method = Method::closed_form;
  series.amplitudes.resize(times.size(), 3);
  for (std::size_t row = 0; row < times.size(); ++row) {
    const double c = std::cos(frequency * times[row]);
    const double s = std::sin(frequency * times[row]);
    series.amplitudes(row, 0) = (1.0 + n * c) / (n + 1.0);
    series.amplitudes(row, 1) = -kI * (std::sqrt(n / (n + 1.0)) * s);
    series.amplitudes(row, 2) = std::sqrt(n) / (n + 1.0) * (c - 1.0);
  }
  return series;
}

}  // namespace

AmplitudeSeries closed_form_star_p3(int copies,
                                    const std::vector<double>& times) {
  if (copies < 1)
    throw std::invalid_argument("closed_form_star_p3: N must be >= 1");
  return closed_form_star_power(copies, std::sqrt(copies + 1.0), times);
}

AmplitudeSeries closed_form_star_c4(int copies,
                                    const std::vector<double>& times) {
  if (copies < 1)
    throw std::invalid_argument("closed_form_star_c4: N must be >= 1");
  return closed_form_star_power(copies, std::sqrt(2.0 * (copies + 1.0)),
                                times);
}

AmplitudeSeries closed_form_lattice(int rays, int k_max,
                                    const std::vector<double>& times) {
  if (rays != 1 && rays != 2)
    throw std::invalid_argument(
        "closed_form_lattice: Bessel closed forms exist for 1 or 2 rays");
  check_times(times);
  if (k_max < 0)
    throw std::invalid_argument("closed_form_lattice: k_max must be >= 0");

  AmplitudeSeries series;
  series.times = times;
  series.method = Method::closed_form;
  series.amplitudes.resize(times.size(), k_max + 1);
  for (std::size_t row = 0; row < times.size(); ++row) {
    const double t = times[row];
    const Eigen::VectorXd j = bessel_j_array(k_max + 2, 2.0 * t);
    for (int k = 0; k <= k_max; ++k) {
      const Complex front = std::pow(-kI, k);
      if (rays == 1) {
        // (J_k + J_{k+2})(2t) = (k+1) J_{k+1}(2t) / t, with limit
        // delta_{k0} at t = 0.
        series.amplitudes(row, k) =
            t == 0.0 ? Complex(k == 0 ? 1.0 : 0.0)
                     : front * ((k + 1.0) * j(k + 1) / t);
      } else {
        series.amplitudes(row, k) =
            k == 0 ? Complex(j(0)) : front * (std::sqrt(2.0) * j(k));
      }
    }
  }
  return series;
}

}  // namespace ctqw
