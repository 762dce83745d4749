// Command-line front end: build graphs, extract Szego-Jacobi sequences,
// compute spectral measures and walk amplitudes, run the QCLT regime, and
// verify the spectral route against the eigendecomposition oracle.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ctqw/decomposition.hpp"
#include "ctqw/errors.hpp"
#include "ctqw/families.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/io.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/verify.hpp"
#include "ctqw/walk.hpp"

namespace {

// sysexits-style codes: bad arguments, bad data (non-invariant graph),
// numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;
constexpr int kExitComputation = 70;

struct Options {
  std::string family;
  int n = 1;
  int ray_length = 12;
  double t_max = 4.0 * M_PI;
  int steps = 256;
  int k_max = -1;  // -1: pick a family-appropriate default
  std::string format = "json";
  std::string method = "spectral";
  std::string out = "-";
  bool per_vertex = false;
  bool all = false;
  std::vector<int> n_list;
  double tol_invariance = ctqw::kDefaultInvarianceTol;
  double tol_consistency = ctqw::kConsistencyTol;
};

void emit(const std::string& content, const std::string& out) {
  if (out == "-") {
    std::cout << content;
    return;
  }
  std::filesystem::path path(out);
  if (path.is_relative())
    if (const char* dir = std::getenv("CTQW_OUTPUT_DIR"))
      path = std::filesystem::path(dir) / path;
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open output file " + path.string());
  file << content;
}

std::string json_text(const nlohmann::json& value) {
  return value.dump(2) + "\n";
}

void require_family(const Options& opt) {
  if (!ctqw::known_family(opt.family))
    throw CLI::ValidationError("--graph", "unknown family '" + opt.family +
                                              "'");
}

ctqw::RootedGraph graph_for(const Options& opt) {
  return ctqw::family_graph(opt.family, opt.n, opt.ray_length);
}

// Sequences as the CLI reports them: decomposition output, with the unit
// tail declared on star-lattice truncations (the stored prefix is exact).
ctqw::JacobiSequences sequences_for(const Options& opt) {
  const ctqw::RootedGraph g = graph_for(opt);
  const ctqw::Decomposition d =
      ctqw::quantum_decompose(g, ctqw::stratify(g), opt.tol_invariance);
  if (!d.report.invariant)
    throw std::domain_error(
        g.label() + " is not invariant under the quantum components "
                    "(max residual " +
        std::to_string(d.report.max_residual) + ")");
  ctqw::JacobiSequences j = d.sequences;
  if (ctqw::family_is_infinite(opt.family)) j.unit_tail = true;
  return j;
}

int run_graph(const Options& opt) {
  emit(json_text(graph_for(opt)), opt.out);
  return kExitOk;
}

int run_jacobi(const Options& opt) {
  emit(json_text(sequences_for(opt)), opt.out);
  return kExitOk;
}

int run_measure(const Options& opt) {
  const ctqw::SpectralMeasure m =
      ctqw::family_is_infinite(opt.family)
          ? ctqw::star_lattice_measure(opt.n)
          : ctqw::quadrature_measure(sequences_for(opt));
  emit(json_text(m), opt.out);
  return kExitOk;
}

ctqw::AmplitudeSeries walk_series(const Options& opt,
                                  const std::vector<double>& times) {
  const bool infinite = ctqw::family_is_infinite(opt.family);
  if (opt.method == "spectral") {
    if (infinite) {
      const int k_max = opt.k_max < 0 ? 6 : opt.k_max;
      return ctqw::amplitudes_spectral(ctqw::star_lattice_sequences(opt.n),
                                       ctqw::star_lattice_measure(opt.n),
                                       k_max, times, opt.tol_consistency);
    }
    const ctqw::JacobiSequences j = sequences_for(opt);
    const int k_max = opt.k_max < 0 ? j.depth() - 1 : opt.k_max;
    return ctqw::amplitudes_spectral(j, ctqw::quadrature_measure(j), k_max,
                                     times, opt.tol_consistency);
  }
  if (opt.method == "oracle") {
    const ctqw::RootedGraph g = graph_for(opt);
    ctqw::AmplitudeSeries series =
        ctqw::amplitudes_oracle(g, ctqw::stratify(g), times);
    if (opt.k_max >= 0 && opt.k_max < series.k_max())
      series.amplitudes =
          series.amplitudes.leftCols(opt.k_max + 1).eval();
    return series;
  }
  if (opt.method == "closed-form") {
    if (opt.family == "star-p3") return ctqw::closed_form_star_p3(opt.n, times);
    if (opt.family == "star-c4") return ctqw::closed_form_star_c4(opt.n, times);
    if (opt.family == "star-lattice")
      return ctqw::closed_form_lattice(opt.n, opt.k_max < 0 ? 6 : opt.k_max,
                                       times);
    if (opt.family == "k2") {
      ctqw::AmplitudeSeries series = ctqw::qclt_limit(1, times);
      series.method = ctqw::Method::closed_form;
      return series;
    }
    throw CLI::ValidationError(
        "--method", "no closed form for family '" + opt.family + "'");
  }
  throw CLI::ValidationError("--method", "unknown method '" + opt.method + "'");
}

int run_walk(const Options& opt) {
  const std::vector<double> times = ctqw::time_grid(opt.t_max, opt.steps);
  if (opt.per_vertex) {
    // The probability table needs a stratification covering every series
    // column; the lattice view is truncated at the stratum cutoff.
    Options table_opt = opt;
    if (ctqw::family_is_infinite(opt.family))
      table_opt.ray_length = opt.k_max < 0 ? 6 : opt.k_max;
    const ctqw::RootedGraph g = graph_for(table_opt);
    const ctqw::Stratification s = ctqw::stratify(g);
    Options series_opt = opt;
    series_opt.k_max = s.depth() - 1;
    const ctqw::AmplitudeSeries series = walk_series(series_opt, times);
    emit(ctqw::probability_csv(ctqw::per_vertex_probability(series, s)),
         opt.out);
    return kExitOk;
  }
  const ctqw::AmplitudeSeries series = walk_series(opt, times);
  emit(opt.format == "csv" ? ctqw::amplitude_csv(series)
                           : json_text(nlohmann::json(series)),
       opt.out);
  return kExitOk;
}

ctqw::SequencesFamily qclt_family(const Options& opt) {
  if (opt.family == "star-p3") return ctqw::star_p3_family();
  if (opt.family == "star-c4") return ctqw::star_c4_family();
  if (opt.family == "star-lattice") return ctqw::star_lattice_family();
  throw CLI::ValidationError(
      "--graph", "qclt needs an N-indexed family (star-p3, star-c4, "
                 "star-lattice)");
}

int run_qclt(const Options& opt) {
  const std::vector<double> times = ctqw::time_grid(opt.t_max, opt.steps);
  const int k_max =
      opt.k_max >= 0 ? opt.k_max : (opt.family == "star-lattice" ? 6 : 2);
  if (!opt.n_list.empty()) {
    const ctqw::ConvergenceReport report =
        ctqw::convergence_study(qclt_family(opt), opt.n_list, k_max, times);
    emit(json_text(report), opt.out);
    return kExitOk;
  }
  const ctqw::AmplitudeSeries series =
      ctqw::qclt_amplitudes(qclt_family(opt), opt.n, k_max, times);
  emit(opt.format == "csv" ? ctqw::amplitude_csv(series)
                           : json_text(nlohmann::json(series)),
       opt.out);
  return kExitOk;
}

int run_verify(const Options& opt) {
  if (opt.all) {
    int failures = 0;
    for (const auto& result : ctqw::run_acceptance_checks()) {
      std::cout << ctqw::format_check_line(result) << "\n";
      if (!result.pass) ++failures;
    }
    return failures == 0 ? kExitOk : 1;
  }
  if (opt.family.empty())
    throw CLI::ValidationError("verify",
                               "give --graph FAMILY --n N, or --all");
  require_family(opt);
  const ctqw::CheckResult result =
      ctqw::verify_family_instance(opt.family, opt.n, opt.ray_length);
  std::cout << ctqw::format_check_line(result) << "\n";
  return result.pass ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Continuous-time quantum walks on star graphs by the "
      "spectral-distribution method"};
  app.require_subcommand(1);

  Options opt;
  auto add_family = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--graph", opt.family,
                              "graph family: star-p3, star-c4, star-lattice, "
                              "path, cycle, k2");
    if (required) o->required();
    cmd->add_option("--n", opt.n, "family size parameter N");
    cmd->add_option("--ray-length", opt.ray_length,
                    "truncation depth for star-lattice graphs");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out,
                    "output path ('-' for stdout; relative paths resolve "
                    "under $CTQW_OUTPUT_DIR)");
  };
  auto add_times = [&](CLI::App* cmd) {
    cmd->add_option("--t-max", opt.t_max, "end of the time grid");
    cmd->add_option("--steps", opt.steps, "number of grid points");
    cmd->add_option("--k-max", opt.k_max, "stratum cutoff");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* graph_cmd = app.add_subcommand("graph", "emit a graph as JSON");
  add_family(graph_cmd, true);
  add_output(graph_cmd);

  CLI::App* jacobi_cmd = app.add_subcommand(
      "jacobi", "extract Szego-Jacobi sequences by quantum decomposition");
  add_family(jacobi_cmd, true);
  add_output(jacobi_cmd);
  jacobi_cmd->add_option("--tol-invariance", opt.tol_invariance,
                         "invariance residual tolerance");

  CLI::App* measure_cmd =
      app.add_subcommand("measure", "emit the spectral measure as JSON");
  add_family(measure_cmd, true);
  add_output(measure_cmd);
  measure_cmd->add_option("--tol-invariance", opt.tol_invariance,
                          "invariance residual tolerance");

  CLI::App* walk_cmd =
      app.add_subcommand("walk", "compute walk amplitudes on a time grid");
  add_family(walk_cmd, true);
  add_output(walk_cmd);
  add_times(walk_cmd);
  walk_cmd->add_option("--method", opt.method,
                       "spectral, oracle, or closed-form")
      ->check(CLI::IsMember({"spectral", "oracle", "closed-form"}));
  walk_cmd->add_flag("--per-vertex", opt.per_vertex,
                     "emit the per-vertex probability table (CSV)");
  walk_cmd->add_option("--tol-invariance", opt.tol_invariance,
                       "invariance residual tolerance");
  walk_cmd->add_option("--tol-consistency", opt.tol_consistency,
                       "sequences/measure orthogonality tolerance");

  CLI::App* qclt_cmd = app.add_subcommand(
      "qclt", "time-rescaled walk amplitudes or a convergence report");
  add_family(qclt_cmd, true);
  add_output(qclt_cmd);
  add_times(qclt_cmd);
  qclt_cmd
      ->add_option("--n-list", opt.n_list,
                   "emit a convergence report over these N instead")
      ->delimiter(',');

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check the spectral route against the oracle");
  add_family(verify_cmd, false);
  verify_cmd->add_flag("--all", opt.all, "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    // Reject unknown families before any computation.
    if (!opt.family.empty() && !verify_cmd->parsed()) require_family(opt);
    if (graph_cmd->parsed()) return run_graph(opt);
    if (jacobi_cmd->parsed()) return run_jacobi(opt);
    if (measure_cmd->parsed()) return run_measure(opt);
    if (walk_cmd->parsed()) return run_walk(opt);
    if (qclt_cmd->parsed()) return run_qclt(opt);
    if (verify_cmd->parsed()) return run_verify(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ctqw::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
