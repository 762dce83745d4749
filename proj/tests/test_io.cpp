#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "ctqw/decomposition.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/io.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

using namespace ctqw;

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 1e-17, 12345.6789, 0.0, -2.5e220}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("graph JSON round-trip with sorted edges") {
  const RootedGraph g = star_power(build_cycle(4), 2);
  const nlohmann::json encoded = g;
  const RootedGraph back = encoded.get<RootedGraph>();
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.root() == g.root());
  CHECK(back.edges() == g.edges());
  CHECK(back.label() == g.label());

  const auto& edges = encoded.at("edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const auto a = edges[i - 1], b = edges[i];
    CHECK((a[0] < b[0] || (a[0] == b[0] && a[1] < b[1])));
  }
}

TEST_CASE("sequences JSON round-trip") {
  for (const JacobiSequences& j :
       {k2_sequences(), star_lattice_sequences(3)}) {
    const nlohmann::json encoded = j;
    const JacobiSequences back = encoded.get<JacobiSequences>();
    CHECK(back.omega == j.omega);
    CHECK(back.alpha == j.alpha);
    CHECK(back.unit_tail == j.unit_tail);
  }
  const nlohmann::json tail_field = nlohmann::json(star_lattice_sequences(3))
                                        .at("tail");
  CHECK(tail_field.get<std::string>() == "unit");
  CHECK(nlohmann::json(k2_sequences()).at("tail").is_null());
}

TEST_CASE("measure JSON round-trip") {
  SpectralMeasure m = star_lattice_measure(5);
  m.tabulated = TabulatedDensity{Eigen::Vector3d(-1.0, 0.0, 1.0),
                                 Eigen::Vector3d(0.1, 0.2, 0.1)};
  const nlohmann::json encoded = m;
  const SpectralMeasure back = encoded.get<SpectralMeasure>();
  REQUIRE(back.atoms.size() == m.atoms.size());
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    CHECK(back.atoms[i].position == m.atoms[i].position);
    CHECK(back.atoms[i].weight == m.atoms[i].weight);
  }
  REQUIRE(back.density.has_value());
  CHECK(back.density->kind == m.density->kind);
  CHECK(back.density->lattice_order == m.density->lattice_order);
  REQUIRE(back.tabulated.has_value());
  CHECK(back.tabulated->x == m.tabulated->x);
  CHECK(back.tabulated->value == m.tabulated->value);

  const SpectralMeasure atoms_only = quadrature_measure(k2_sequences());
  const nlohmann::json plain = atoms_only;
  CHECK(plain.at("density").is_null());
  CHECK(plain.at("tabulated").is_null());
  const SpectralMeasure back2 = plain.get<SpectralMeasure>();
  CHECK_FALSE(back2.density.has_value());
}

TEST_CASE("amplitude series JSON round-trip and CSV shape") {
  const std::vector<double> times = time_grid(2.0, 5);
  const AmplitudeSeries series = closed_form_star_p3(2, times);
  const nlohmann::json encoded = series;
  const AmplitudeSeries back = encoded.get<AmplitudeSeries>();
  CHECK(back.method == series.method);
  CHECK(back.times == series.times);
  CHECK(back.amplitudes == series.amplitudes);

  const std::string csv = amplitude_csv(series);
  CHECK(csv.rfind("t, re_q0, im_q0, re_q1, im_q1, re_q2, im_q2\n", 0) == 0);
  const std::string again = amplitude_csv(series);
  CHECK(csv == again);  // byte determinism
  // one header plus one line per time
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) ==
        1 + times.size());
}

TEST_CASE("probability CSV shape") {
  const RootedGraph g = build_path(2);
  const Stratification s = stratify(g);
  const std::vector<double> times{0.0, 1.0};
  const AmplitudeSeries series = amplitudes_oracle(g, s, times);
  const ProbabilityTable table = per_vertex_probability(series, s);
  const std::string csv = probability_csv(table);
  CHECK(csv.rfind("t, vertex, probability\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);
}

TEST_CASE("convergence report JSON round-trip") {
  ConvergenceReport report;
  report.n_values = {10, 100};
  report.sup_errors = {0.25, 0.03125};
  const nlohmann::json encoded = report;
  const ConvergenceReport back = encoded.get<ConvergenceReport>();
  CHECK(back.n_values == report.n_values);
  CHECK(back.sup_errors == report.sup_errors);
}
