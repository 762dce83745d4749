#include "ctqw/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "ctqw/decomposition.hpp"
#include "ctqw/families.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {
namespace {

constexpr int kFamilyRange = 8;  // N = 1..8 for the worked families

void update_worst(CheckResult& result, double deviation,
                  const std::string& context) {
  if (deviation > result.observed) {
    result.observed = deviation;
    result.note = context;
  }
}

void finish(CheckResult& result) {
  result.pass = result.observed <= result.threshold;
}

std::vector<double> oracle_time_grid() { return time_grid(10.0, 21); }

struct FiniteInstance {
  std::string id;
  RootedGraph graph;
};

// The finite worked examples: star powers of path(3) and cycle(4) plus
// truncated lattices.
std::vector<FiniteInstance> finite_instances(int max_copies,
                                             const std::vector<int>& lengths) {
  std::vector<FiniteInstance> out;
  for (int n = 1; n <= max_copies; ++n) {
    out.push_back({"star-p3 N=" + std::to_string(n),
                   family_graph("star-p3", n, 0)});
    out.push_back({"star-c4 N=" + std::to_string(n),
                   family_graph("star-c4", n, 0)});
    for (int len : lengths)
      out.push_back({"star-lattice N=" + std::to_string(n) +
                         " L=" + std::to_string(len),
                     family_graph("star-lattice", n, len)});
  }
  return out;
}

}  // namespace

long long count_closed_walks(const RootedGraph& g, int length) {
  if (length < 0)
    throw std::invalid_argument("count_closed_walks: length must be >= 0");
  std::function<long long(int, int)> walk = [&](int v,
                                                int remaining) -> long long {
    if (remaining == 0) return v == g.root() ? 1 : 0;
    long long total = 0;
    for (int w : g.neighbors(v)) total += walk(w, remaining - 1);
    return total;
  };
  return walk(g.root(), length);
}

CheckResult check_jacobi_extraction() {
  CheckResult result{"1 jacobi extraction", 0.0, 1e-10, false, {}};
  auto check = [&](const RootedGraph& g, const Eigen::VectorXd& omega,
                   const std::string& id) {
    const Decomposition d = quantum_decompose(g, stratify(g));
    if (!d.report.invariant) {
      update_worst(result, 1.0, id + " not invariant");
      return;
    }
    update_worst(result, (d.sequences.omega - omega).cwiseAbs().maxCoeff(),
                 id + " omega");
    update_worst(result, d.sequences.alpha.cwiseAbs().maxCoeff(),
                 id + " alpha");
  };
  for (int n = 1; n <= kFamilyRange; ++n) {
    Eigen::VectorXd p3(2), c4(2);
    p3 << n, 1.0;
    c4 << 2.0 * n, 2.0;
    check(family_graph("star-p3", n, 0), p3, "star-p3 N=" + std::to_string(n));
    check(family_graph("star-c4", n, 0), c4, "star-c4 N=" + std::to_string(n));
    Eigen::VectorXd lattice = Eigen::VectorXd::Ones(6);
    lattice(0) = n;
    check(family_graph("star-lattice", n, 6), lattice,
          "star-lattice N=" + std::to_string(n) + " L=6");
  }
  finish(result);
  return result;
}

CheckResult check_quadrature_atoms() {
  CheckResult result{"2 quadrature measure atoms", 0.0, 1e-10, false, {}};
  auto check = [&](int n, double edge, const std::string& id) {
    const JacobiSequences j = family_sequences(id.substr(0, 7), n);
    const SpectralMeasure m = quadrature_measure(j);
    if (m.atoms.size() != 3) {
      update_worst(result, 1.0, id + " wrong atom count");
      return;
    }
    const double side = n / (2.0 * (n + 1.0));
    const double center = 1.0 / (n + 1.0);
    update_worst(result, std::abs(m.atoms[0].position + edge), id + " x0");
    update_worst(result, std::abs(m.atoms[1].position), id + " x1");
    update_worst(result, std::abs(m.atoms[2].position - edge), id + " x2");
    update_worst(result, std::abs(m.atoms[0].weight - side), id + " w0");
    update_worst(result, std::abs(m.atoms[1].weight - center), id + " w1");
    update_worst(result, std::abs(m.atoms[2].weight - side), id + " w2");
  };
  for (int n = 1; n <= kFamilyRange; ++n) {
    check(n, std::sqrt(n + 1.0), "star-p3 N=" + std::to_string(n));
    check(n, std::sqrt(2.0 * (n + 1.0)), "star-c4 N=" + std::to_string(n));
  }
  finish(result);
  return result;
}

std::vector<CheckResult> check_closed_form_amplitudes() {
  CheckResult trig{"3 closed forms (trigonometric)", 0.0, 1e-10, false, {}};
  const std::vector<double> grid = time_grid(4.0 * M_PI, 256);
  for (int n = 1; n <= kFamilyRange; ++n) {
    const JacobiSequences j = family_sequences("star-p3", n);
    const AmplitudeSeries spectral =
        amplitudes_spectral(j, quadrature_measure(j), 2, grid);
    const AmplitudeSeries closed = closed_form_star_p3(n, grid);
    const double dev = (spectral.amplitudes.leftCols(2) -
                        closed.amplitudes.leftCols(2))
                           .cwiseAbs()
                           .maxCoeff();
    update_worst(trig, dev, "star-p3 N=" + std::to_string(n));
  }
  finish(trig);

  CheckResult bessel{"3 closed forms (Bessel)", 0.0, 1e-8, false, {}};
  const std::vector<double> long_grid = time_grid(20.0, 41);
  for (int rays : {1, 2}) {
    const JacobiSequences j = star_lattice_sequences(rays);
    const AmplitudeSeries spectral =
        amplitudes_spectral(j, star_lattice_measure(rays), 6, long_grid);
    const AmplitudeSeries closed = closed_form_lattice(rays, 6, long_grid);
    update_worst(bessel,
                 (spectral.amplitudes - closed.amplitudes)
                     .cwiseAbs()
                     .maxCoeff(),
                 "lattice N=" + std::to_string(rays));
  }
  finish(bessel);
  return {trig, bessel};
}

CheckResult check_oracle_equivalence() {
  CheckResult result{"4 spectral vs oracle", 0.0, 1e-8, false, {}};
  const std::vector<double> grid = oracle_time_grid();
  for (const auto& [id, graph] :
       finite_instances(kFamilyRange, {4, 5, 6, 7, 8, 9, 10, 11, 12})) {
    const Stratification s = stratify(graph);
    const Decomposition d = quantum_decompose(graph, s);
    const AmplitudeSeries spectral = amplitudes_spectral(
        d.sequences, quadrature_measure(d.sequences), s.depth() - 1, grid);
    const AmplitudeSeries oracle = amplitudes_oracle(graph, s, grid);
    update_worst(result,
                 (spectral.amplitudes - oracle.amplitudes)
                     .cwiseAbs()
                     .maxCoeff(),
                 id);
  }
  finish(result);
  return result;
}

std::vector<CheckResult> check_conservation_uniformity() {
  CheckResult conservation{"5 probability conservation", 0.0, 1e-8, false, {}};
  CheckResult uniformity{"5 per-vertex uniformity", 0.0, 1e-12, false, {}};
  const std::vector<double> grid = oracle_time_grid();
  for (const auto& [id, graph] : finite_instances(kFamilyRange, {5, 9})) {
    const Stratification s = stratify(graph);
    const Decomposition d = quantum_decompose(graph, s);
    const AmplitudeSeries spectral = amplitudes_spectral(
        d.sequences, quadrature_measure(d.sequences), s.depth() - 1, grid);
    for (std::size_t row = 0; row < grid.size(); ++row)
      update_worst(conservation,
                   std::abs(spectral.amplitudes.row(row).squaredNorm() - 1.0),
                   id);

    const Eigen::MatrixXcd psi = vertex_amplitudes_oracle(graph, grid);
    for (std::size_t row = 0; row < grid.size(); ++row) {
      for (const auto& shell : s.strata) {
        double lo = 1.0, hi = 0.0;
        for (int v : shell) {
          const double p = std::norm(psi(row, v));
          lo = std::min(lo, p);
          hi = std::max(hi, p);
        }
        update_worst(uniformity, hi - lo, id);
      }
    }
  }
  finish(conservation);
  finish(uniformity);
  return {conservation, uniformity};
}

std::vector<CheckResult> check_qclt_convergence() {
  std::vector<CheckResult> results;
  const std::vector<double> grid = time_grid(2.0 * M_PI, 256);
  const std::vector<int> n_values{10, 100, 1000, 10000};
  struct FamilySpec {
    std::string id;
    SequencesFamily family;
    int k_max;
  };
  for (const auto& spec :
       {FamilySpec{"star-p3", star_p3_family(), 2},
        FamilySpec{"star-lattice", star_lattice_family(), 6}}) {
    const AmplitudeSeries limit = qclt_limit(1, grid);
    CheckResult distance{"6 qclt limit distance (" + spec.id + ")", 0.0, 1e-2,
                         false, {}};
    CheckResult tail{"6 qclt strata k>=2 (" + spec.id + ")", 0.0, 1e-2, false,
                     {}};
    std::vector<double> distances;
    for (int n : n_values) {
      const AmplitudeSeries series =
          qclt_amplitudes(spec.family, n, spec.k_max, grid);
      distances.push_back((series.amplitudes.leftCols(2) - limit.amplitudes)
                              .cwiseAbs()
                              .maxCoeff());
      if (n == n_values.back()) {
        distance.observed = distances.back();
        tail.observed = series.amplitudes.rightCols(spec.k_max - 1)
                            .cwiseAbs2()
                            .maxCoeff();
      }
    }
    bool monotone = true;
    std::string trail;
    for (std::size_t i = 0; i < distances.size(); ++i) {
      if (i > 0 && distances[i] >= distances[i - 1]) monotone = false;
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.3g", distances[i]);
      trail += (i ? " > " : "sup by N: ") + std::string(buffer);
    }
    distance.note = trail;
    distance.pass = monotone && distance.observed <= distance.threshold;
    tail.note = "max stratum probability beyond k=1 at N=10000";
    finish(tail);
    results.push_back(distance);
    results.push_back(tail);
  }
  return results;
}

std::vector<CheckResult> check_lattice_measure_mass() {
  CheckResult mass{"7 lattice measure mass", 0.0, 1e-8, false, {}};
  CheckResult atom_mass{"7 lattice atom mass", 0.0, 0.0, false, {}};
  for (int n = 1; n <= 10; ++n) {
    const SpectralMeasure m = star_lattice_measure(n);
    update_worst(mass, std::abs(total_mass(m) - 1.0),
                 "N=" + std::to_string(n));
    double atoms = 0.0;
    for (const auto& atom : m.atoms) atoms += atom.weight;
    const double expected = n >= 3 ? (n - 2.0) / (n - 1.0) : 0.0;
    update_worst(atom_mass, std::abs(atoms - expected),
                 "N=" + std::to_string(n));
  }
  finish(mass);
  finish(atom_mass);
  return {mass, atom_mass};
}

CheckResult check_stieltjes_inversion() {
  CheckResult result{"8 stieltjes inversion", 0.0, 1e-4, false, {}};
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(191, -1.9, 1.9);
  for (int n : {1, 2, 3, 5}) {
    const SpectralMeasure m = star_lattice_measure(n);
    const TabulatedDensity recovered = stieltjes_invert(
        [n](Complex z) { return stieltjes_star_lattice(n, z); }, grid,
        default_v_sequence());
    for (int i = 0; i < grid.size(); ++i)
      update_worst(result,
                   std::abs(recovered.value(i) - density_value(m, grid(i))),
                   "N=" + std::to_string(n));
  }
  finish(result);
  return result;
}

CheckResult check_moment_walk_counts() {
  CheckResult result{"9 moments vs walk counts", 0.0, 1e-8, false, {}};
  std::vector<FiniteInstance> instances;
  for (int n = 1; n <= kFamilyRange; ++n) {
    instances.push_back({"star-p3 N=" + std::to_string(n),
                         family_graph("star-p3", n, 0)});
    instances.push_back({"star-c4 N=" + std::to_string(n),
                         family_graph("star-c4", n, 0)});
    const int len = std::max(1, std::min(12, (30 - 1) / n));
    instances.push_back({"star-lattice N=" + std::to_string(n) +
                             " L=" + std::to_string(len),
                         family_graph("star-lattice", n, len)});
  }
  for (int n : {1, 2, 5, 9})
    instances.push_back({"path n=" + std::to_string(n), build_path(n)});
  for (int n : {3, 4, 5, 8})
    instances.push_back({"cycle n=" + std::to_string(n), build_cycle(n)});

  for (const auto& [id, graph] : instances) {
    if (graph.vertex_count() > 30) continue;
    const Decomposition d = quantum_decompose(graph, stratify(graph));
    if (!d.report.invariant) {
      update_worst(result, 1.0, id + " not invariant");
      continue;
    }
    const SpectralMeasure m = quadrature_measure(d.sequences);
    for (int degree = 0; degree <= 6; ++degree) {
      const double moment = measure_moment(m, degree);
      const double count =
          static_cast<double>(count_closed_walks(graph, degree));
      update_worst(result, std::abs(moment - count),
                   id + " m=" + std::to_string(degree));
    }
  }
  finish(result);
  return result;
}

std::vector<CheckResult> run_acceptance_checks() {
  std::vector<CheckResult> results;
  auto add = [&](CheckResult r) { results.push_back(std::move(r)); };
  auto add_all = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) results.push_back(std::move(r));
  };
  add(check_jacobi_extraction());
  add(check_quadrature_atoms());
  add_all(check_closed_form_amplitudes());
  add(check_oracle_equivalence());
  add_all(check_conservation_uniformity());
  add_all(check_qclt_convergence());
  add_all(check_lattice_measure_mass());
  add(check_stieltjes_inversion());
  add(check_moment_walk_counts());
  return results;
}

CheckResult verify_family_instance(const std::string& family, int n,
                                   int ray_length) {
  CheckResult result{"spectral vs oracle (" + family + ")", 0.0, 1e-8, false,
                     {}};
  const RootedGraph graph = family_graph(family, n, ray_length);
  const Stratification s = stratify(graph);
  const Decomposition d = quantum_decompose(graph, s);
  if (!d.report.invariant)
    throw std::domain_error("verify: " + graph.label() +
                            " is not invariant under the quantum components");
  const std::vector<double> grid = oracle_time_grid();
  const AmplitudeSeries spectral = amplitudes_spectral(
      d.sequences, quadrature_measure(d.sequences), s.depth() - 1, grid);
  const AmplitudeSeries oracle = amplitudes_oracle(graph, s, grid);
  result.observed =
      (spectral.amplitudes - oracle.amplitudes).cwiseAbs().maxCoeff();
  result.note = graph.label();
  finish(result);
  return result;
}

std::string format_check_line(const CheckResult& result) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "[%s] %-38s observed %.3e  bound %.1e%s%s",
                result.pass ? "PASS" : "FAIL", result.name.c_str(),
                result.observed, result.threshold,
                result.note.empty() ? "" : "  ", result.note.c_str());
  return buffer;
}

}  // namespace ctqw
