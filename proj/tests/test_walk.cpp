#include <doctest.h>

#include <cmath>

#include "ctqw/bessel.hpp"
#include "ctqw/decomposition.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

using namespace ctqw;

namespace {

AmplitudeSeries spectral_for(const RootedGraph& g,
                             const std::vector<double>& times) {
  const Stratification s = stratify(g);
  const Decomposition d = quantum_decompose(g, s);
  REQUIRE(d.report.invariant);
  return amplitudes_spectral(d.sequences, quadrature_measure(d.sequences),
                             s.depth() - 1, times);
}

}  // namespace

TEST_CASE("time_grid") {
  const std::vector<double> grid = time_grid(4.0 * M_PI, 256);
  CHECK(grid.size() == 256);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(time_grid(1.0, 1) == std::vector<double>{0.0});
  CHECK_THROWS_AS(time_grid(0.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(time_grid(1.0, 0), std::invalid_argument);
}

TEST_CASE("K2 walk is (cos t, -i sin t) on both routes") {
  const std::vector<double> times = time_grid(2.0 * M_PI, 33);
  const RootedGraph k2 = build_path(2);
  const AmplitudeSeries oracle = amplitudes_oracle(k2, stratify(k2), times);
  const AmplitudeSeries spectral = amplitudes_spectral(
      k2_sequences(), quadrature_measure(k2_sequences()), 1, times);
  for (std::size_t row = 0; row < times.size(); ++row) {
    const Complex q0(std::cos(times[row]), 0.0);
    const Complex q1(0.0, -std::sin(times[row]));
    CHECK(std::abs(oracle.amplitudes(row, 0) - q0) < 1e-12);
    CHECK(std::abs(oracle.amplitudes(row, 1) - q1) < 1e-12);
    CHECK(std::abs(spectral.amplitudes(row, 0) - q0) < 1e-12);
    CHECK(std::abs(spectral.amplitudes(row, 1) - q1) < 1e-12);
  }
}

TEST_CASE("walk starts at the root") {
  for (const RootedGraph& g :
       {star_power(build_path(3), 3), star_power(build_cycle(4), 2)}) {
    const AmplitudeSeries series = spectral_for(g, {0.0, 0.5});
    CHECK(std::abs(series.amplitudes(0, 0) - 1.0) < 1e-12);
    for (int k = 1; k <= series.k_max(); ++k)
      CHECK(std::abs(series.amplitudes(0, k)) < 1e-12);
  }
}

TEST_CASE("strata beyond the depth carry exactly zero amplitude") {
  const JacobiSequences j = star_p3_family()(4);  // depth 3
  const AmplitudeSeries series = amplitudes_spectral(
      j, quadrature_measure(j), 6, time_grid(5.0, 11));
  CHECK(series.k_max() == 6);
  CHECK(series.amplitudes.rightCols(4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("star-p3 closed form value at t = pi/2, N = 3") {
  const std::vector<double> times{0.0, M_PI / 2.0};
  const RootedGraph g = star_power(build_path(3), 3);
  const AmplitudeSeries oracle = amplitudes_oracle(g, stratify(g), times);
  // q0 = (1 + 3 cos(2t))/4 at t = pi/2 gives -1/2.
  CHECK(oracle.amplitudes(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(oracle.amplitudes(1, 0).imag()) < 1e-12);

  const AmplitudeSeries closed = closed_form_star_p3(3, times);
  CHECK(std::abs(closed.amplitudes(1, 0) - oracle.amplitudes(1, 0)) < 1e-12);
  CHECK(closed.method == Method::closed_form);
}

TEST_CASE("spectral equals oracle on sample instances") {
  const std::vector<double> times = time_grid(10.0, 21);
  for (const RootedGraph& g :
       {star_power(build_path(3), 1), star_power(build_path(3), 4),
        star_power(build_cycle(4), 2), build_star_lattice(3, 5),
        build_cycle(5)}) {
    const AmplitudeSeries spectral = spectral_for(g, times);
    const AmplitudeSeries oracle = amplitudes_oracle(g, stratify(g), times);
    CHECK((spectral.amplitudes - oracle.amplitudes).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("star-c4 closed form agrees with the oracle, including q2") {
  const std::vector<double> times = time_grid(10.0, 41);
  for (int n : {1, 3, 6}) {
    const RootedGraph g = star_power(build_cycle(4), n);
    const AmplitudeSeries oracle = amplitudes_oracle(g, stratify(g), times);
    const AmplitudeSeries closed = closed_form_star_c4(n, times);
    CHECK((oracle.amplitudes - closed.amplitudes).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("infinite lattice spectral amplitudes match a deep truncation") {
  const std::vector<double> times = time_grid(10.0, 21);
  for (int rays : {1, 2, 3}) {
    const AmplitudeSeries spectral =
        amplitudes_spectral(star_lattice_sequences(rays),
                            star_lattice_measure(rays), 6, times);
    const RootedGraph truncation = build_star_lattice(rays, 30);
    const AmplitudeSeries oracle =
        amplitudes_oracle(truncation, stratify(truncation), times);
    CHECK((spectral.amplitudes - oracle.amplitudes.leftCols(7))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
  }
}

TEST_CASE("Bessel closed forms for one and two rays") {
  const std::vector<double> times = time_grid(20.0, 41);
  for (int rays : {1, 2}) {
    const AmplitudeSeries spectral =
        amplitudes_spectral(star_lattice_sequences(rays),
                            star_lattice_measure(rays), 6, times);
    const AmplitudeSeries closed = closed_form_lattice(rays, 6, times);
    CHECK((spectral.amplitudes - closed.amplitudes).cwiseAbs().maxCoeff() <
          1e-8);
  }
  CHECK_THROWS_AS(closed_form_lattice(3, 4, times), std::invalid_argument);
}

TEST_CASE("bessel_j_array against the standard library") {
  for (double x : {0.0, 0.5, 1.0, 5.0, 12.5, 20.0, 40.0}) {
    const Eigen::VectorXd j = bessel_j_array(12, x);
    for (int k = 0; k <= 12; ++k)
      CHECK(j(k) == doctest::Approx(std::cyl_bessel_j(k, x)).epsilon(1e-11));
  }
}

TEST_CASE("Bessel three-term identity behind the one-ray closed form") {
  for (double t = 0.5; t <= 20.0; t += 0.5) {
    const Eigen::VectorXd j = bessel_j_array(12, t);
    for (int k = 0; k <= 10; ++k)
      CHECK(std::abs(j(k) + j(k + 2) - 2.0 * (k + 1) * j(k + 1) / t) < 1e-10);
  }
}

TEST_CASE("probability conservation and per-vertex uniformity") {
  const std::vector<double> times = time_grid(10.0, 21);
  const RootedGraph g = star_power(build_path(3), 3);
  const Stratification s = stratify(g);
  const AmplitudeSeries series = spectral_for(g, times);
  const ProbabilityTable table = per_vertex_probability(series, s);
  const Eigen::MatrixXcd psi = vertex_amplitudes_oracle(g, times);

  for (std::size_t row = 0; row < times.size(); ++row) {
    CHECK(std::abs(series.amplitudes.row(row).squaredNorm() - 1.0) < 1e-8);
    CHECK(table.probabilities.row(row).sum() == doctest::Approx(1.0));
    for (int v = 0; v < g.vertex_count(); ++v)
      CHECK(std::abs(table.probabilities(row, v) - std::norm(psi(row, v))) <
            1e-8);
  }
  CHECK(table.probabilities(0, g.root()) == doctest::Approx(1.0));

  // stratum 1 carries |q1|^2/3 on each of its three vertices
  for (std::size_t row = 0; row < times.size(); ++row) {
    const double expected = std::norm(series.amplitudes(row, 1)) / 3.0;
    for (int v : s.strata[1])
      CHECK(table.probabilities(row, v) ==
            doctest::Approx(expected).epsilon(1e-12));
  }

  AmplitudeSeries short_series = series;
  short_series.amplitudes = series.amplitudes.leftCols(2);
  CHECK_THROWS_AS(per_vertex_probability(short_series, s),
                  std::invalid_argument);
}

TEST_CASE("time reversal conjugates the amplitudes") {
  const RootedGraph g = star_power(build_cycle(4), 2);
  const AmplitudeSeries forward = spectral_for(g, {1.7});
  const AmplitudeSeries backward = spectral_for(g, {-1.7});
  for (int k = 0; k <= forward.k_max(); ++k)
    CHECK(std::abs(backward.amplitudes(0, k) -
                   std::conj(forward.amplitudes(0, k))) < 1e-12);
}

TEST_CASE("truncation stability of the lattice oracle") {
  // The walk spreads at speed 2 but with an Airy tail ahead of the front,
  // so 1e-6 agreement between ray lengths L and L+4 needs L >= 2t + 12,
  // not the naive L >= 2t.
  for (int rays : {2, 3}) {
    for (int len : {16, 20}) {
      const std::vector<double> times = time_grid((len - 12) / 2.0, 9);
      const RootedGraph shallow = build_star_lattice(rays, len);
      const RootedGraph deep = build_star_lattice(rays, len + 4);
      const AmplitudeSeries a =
          amplitudes_oracle(shallow, stratify(shallow), times);
      const AmplitudeSeries b = amplitudes_oracle(deep, stratify(deep), times);
      CHECK((a.amplitudes - b.amplitudes.leftCols(len + 1))
                .cwiseAbs()
                .maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("mismatched sequences and measure are rejected") {
  const std::vector<double> times{0.0, 1.0};
  const JacobiSequences j3 = star_p3_family()(3);
  const SpectralMeasure m4 = quadrature_measure(star_p3_family()(4));
  CHECK_THROWS_AS(amplitudes_spectral(j3, m4, 2, times), std::domain_error);

  // a 1e-3 omega perturbation is far outside the orthogonality tolerance
  JacobiSequences perturbed = j3;
  perturbed.omega(0) += 1e-3;
  CHECK_THROWS_AS(
      amplitudes_spectral(perturbed, quadrature_measure(j3), 2, times),
      std::domain_error);
}

TEST_CASE("oracle size cap") {
  const RootedGraph g = star_power(build_path(3), 4);
  CHECK_THROWS_AS(amplitudes_oracle(g, stratify(g), {0.0, 1.0}, 5),
                  std::invalid_argument);
}

TEST_CASE("qclt amplitudes follow the rescaled closed form") {
  const std::vector<double> times = time_grid(2.0 * M_PI, 17);
  const int n = 25;
  const AmplitudeSeries series =
      qclt_amplitudes(star_p3_family(), n, 2, times);
  CHECK(series.method == Method::qclt);
  for (std::size_t row = 0; row < times.size(); ++row) {
    const double t = times[row];
    const double c = std::sqrt((n + 1.0) / n);
    const Complex q0 = (1.0 + n * std::cos(c * t)) / (n + 1.0);
    const Complex q1 =
        Complex(0.0, -1.0) * std::sqrt(n / (n + 1.0)) * std::sin(c * t);
    CHECK(std::abs(series.amplitudes(row, 0) - q0) < 1e-10);
    CHECK(std::abs(series.amplitudes(row, 1) - q1) < 1e-10);
  }
}

TEST_CASE("qclt limit walk") {
  const std::vector<double> times{0.0, M_PI / 4.0, 1.0};
  const AmplitudeSeries limit = qclt_limit(3, times);
  CHECK(std::abs(limit.amplitudes(1, 0)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(std::norm(limit.amplitudes(1, 0)) == doctest::Approx(0.5));
  CHECK(std::norm(limit.amplitudes(1, 1)) == doctest::Approx(0.5));
  CHECK(limit.amplitudes(0, 1) == Complex(0.0));
  for (std::size_t row = 0; row < times.size(); ++row) {
    CHECK(std::norm(limit.amplitudes(row, 0)) +
              std::norm(limit.amplitudes(row, 1)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(limit.amplitudes(row, 2) == Complex(0.0));
    CHECK(limit.amplitudes(row, 3) == Complex(0.0));
  }
}

TEST_CASE("convergence study decreases along N") {
  const std::vector<double> times = time_grid(2.0 * M_PI, 65);
  const ConvergenceReport report =
      convergence_study(star_p3_family(), {1, 10, 100}, 2, times);
  REQUIRE(report.sup_errors.size() == 3);
  CHECK(report.sup_errors[0] > 0.5);  // N=1 is a fixed macroscopic distance
  CHECK(report.sup_errors[2] < report.sup_errors[1]);
  CHECK(report.sup_errors[1] < report.sup_errors[0]);
  CHECK_THROWS_AS(convergence_study(star_p3_family(), {}, 2, times),
                  std::invalid_argument);
}
