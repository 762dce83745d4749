#include "ctqw/spectral.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ctqw {
namespace detail {

const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_16() {
  static const auto rule = [] {
    constexpr int n = 16;
    // Monic Legendre recurrence: alpha_k = 0, omega_k = k^2 / (4k^2 - 1).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k)
      sub(k - 1) = std::sqrt(k * k / (4.0 * k * k - 1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    Eigen::VectorXd weights =
        2.0 * solver.eigenvectors().row(0).array().square();
    return std::make_pair(solver.eigenvalues().eval(), weights);
  }();
  return rule;
}

double magnitude(double v) { return std::abs(v); }
double magnitude(const Complex& v) { return std::abs(v); }

double theta_weight(int rays, double theta) {
  if (rays == 2) return 1.0 / M_PI;
  const double s = std::sin(theta), c = std::cos(theta);
  const double n = static_cast<double>(rays);
  return (2.0 * n / M_PI) * s * s / (n * n - 4.0 * (n - 1.0) * c * c);
}

// Three-term recurrence shared by P_n (shift = 0) and Q_n^{(1)} (shift = 1).
template <class Scalar>
Scalar recurrence_eval(const JacobiSequences& j, int k, Scalar x, int shift) {
  if (k < 0) throw std::invalid_argument("polynomial degree must be >= 0");
  if (!j.unit_tail && k > j.depth() - shift)
    throw std::invalid_argument(
        "polynomial degree " + std::to_string(k) +
        " exceeds the stored coefficient depth and no tail is declared");
  Scalar prev = Scalar(1.0);  // degree 0
  if (k == 0) return prev;
  Scalar curr = x - Scalar(j.alpha_at(1 + shift));
  for (int n = 1; n < k; ++n) {
    Scalar next = (x - Scalar(j.alpha_at(n + 1 + shift))) * curr -
                  Scalar(j.omega_at(n + shift)) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace detail

int max_poly_degree(const JacobiSequences& j) {
  return j.unit_tail ? std::numeric_limits<int>::max() : j.depth();
}

double eval_poly(const JacobiSequences& j, int k, double x) {
  return detail::recurrence_eval(j, k, x, 0);
}

Eigen::VectorXd eval_poly_all(const JacobiSequences& j, int k, double x) {
  if (k < 0) throw std::invalid_argument("eval_poly_all: k must be >= 0");
  if (!j.unit_tail && k > j.depth())
    throw std::invalid_argument("eval_poly_all: degree beyond stored depth");
  Eigen::VectorXd p(k + 1);
  p(0) = 1.0;
  if (k >= 1) p(1) = x - j.alpha_at(1);
  for (int n = 1; n < k; ++n)
    p(n + 1) = (x - j.alpha_at(n + 1)) * p(n) - j.omega_at(n) * p(n - 1);
  return p;
}

double eval_shifted_poly(const JacobiSequences& j, int k, double x) {
  return detail::recurrence_eval(j, k, x, 1);
}

Complex stieltjes_finite(const JacobiSequences& j, Complex z) {
  if (j.unit_tail)
    throw std::invalid_argument(
        "stieltjes_finite: requires finite sequences; use the lattice tail");
  const int n = j.depth();
  const Complex num = detail::recurrence_eval(j, n - 1, z, 1);
  const Complex den = detail::recurrence_eval(j, n, z, 0);
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(num)))
    throw std::domain_error(
        "stieltjes_finite: z is at (or numerically at) a pole of the "
        "transform");
  return num / den;
}

Complex stieltjes_lattice_tail(Complex z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0)
    throw std::domain_error(
        "stieltjes_lattice_tail: real z inside the branch cut [-2, 2]");
  Complex root = std::sqrt(z * z - 4.0);
  // Decay branch: G ~ 1/z at infinity, equivalently |z - root| <= |z + root|.
  if (std::abs(z - root) > std::abs(z + root)) root = -root;
  return 0.5 * (z - root);
}

Complex stieltjes_star_lattice(int rays, Complex z) {
  if (rays < 1)
    throw std::invalid_argument("stieltjes_star_lattice: rays must be >= 1");
  return 1.0 / (z - static_cast<double>(rays) * stieltjes_lattice_tail(z));
}

SpectralMeasure quadrature_measure(const JacobiSequences& j,
                                   double merge_tol) {
  if (j.unit_tail)
    throw std::invalid_argument(
        "quadrature_measure: requires finite sequences");
  const int n = j.depth();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(j.alpha, j.omega.cwiseSqrt(),
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("quadrature_measure: eigensolver failed");

  SpectralMeasure m;
  for (int l = 0; l < n; ++l) {
    const double pos = solver.eigenvalues()(l);
    const double w = solver.eigenvectors()(0, l) * solver.eigenvectors()(0, l);
    if (!m.atoms.empty() && pos - m.atoms.back().position <= merge_tol) {
      Atom& last = m.atoms.back();
      last.position = (last.position * last.weight + pos * w) /
                      (last.weight + w);
      last.weight += w;
    } else {
      m.atoms.push_back({pos, w});
    }
  }
  return m;
}

SpectralMeasure star_lattice_measure(int rays) {
  if (rays < 1)
    throw std::invalid_argument("star_lattice_measure: rays must be >= 1");
  SpectralMeasure m;
  ClosedFormDensity density;
  density.lattice_order = rays;
  density.kind = rays == 1   ? DensityKind::semicircle
                 : rays == 2 ? DensityKind::arcsine
                             : DensityKind::star_lattice;
  m.density = density;
  if (rays >= 3) {
    const double n = static_cast<double>(rays);
    const double pos = n / std::sqrt(n - 1.0);
    const double w = (n - 2.0) / (2.0 * n - 2.0);
    m.atoms = {{-pos, w}, {pos, w}};
  }
  return m;
}

SpectralMeasure measure_for(const JacobiSequences& j) {
  if (!j.unit_tail) return quadrature_measure(j);
  if (j.alpha.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(
        "measure_for: tails with nonzero alpha are not supported");
  const double head = j.omega(0);
  const int rays = static_cast<int>(std::llround(head));
  if (rays < 1 || std::abs(head - rays) > 1e-12)
    throw std::invalid_argument(
        "measure_for: tail sequences must start with an integer ray count");
  for (int i = 1; i < j.omega.size(); ++i)
    if (std::abs(j.omega(i) - 1.0) > 1e-12)
      throw std::invalid_argument(
          "measure_for: tail sequences must continue with omega = 1");
  return star_lattice_measure(rays);
}

TabulatedDensity stieltjes_invert(
    const std::function<Complex(Complex)>& transform,
    const Eigen::VectorXd& x_grid, const std::vector<double>& v_sequence) {
  if (v_sequence.empty())
    throw std::invalid_argument("stieltjes_invert: empty v sequence");
  for (std::size_t i = 0; i < v_sequence.size(); ++i) {
    if (v_sequence[i] <= 0.0)
      throw std::invalid_argument("stieltjes_invert: v values must be > 0");
    if (i > 0 && v_sequence[i] >= v_sequence[i - 1])
      throw std::invalid_argument(
          "stieltjes_invert: v sequence must be strictly decreasing");
  }

  const std::size_t levels = v_sequence.size();
  TabulatedDensity out;
  out.x = x_grid;
  out.value.resize(x_grid.size());
  std::vector<double> table(levels);
  for (int i = 0; i < x_grid.size(); ++i) {
    for (std::size_t l = 0; l < levels; ++l)
      table[l] =
          -transform(Complex(x_grid(i), v_sequence[l])).imag() / M_PI;
    // Neville extrapolation of the polynomial through (v_l, f_l) to v = 0.
    std::vector<double> f = table;
    for (std::size_t m = 1; m < levels; ++m)
      for (std::size_t l = levels - 1; l >= m; --l)
        f[l] = (v_sequence[l - m] * f[l] - v_sequence[l] * f[l - 1]) /
               (v_sequence[l - m] - v_sequence[l]);
    out.value(i) = f[levels - 1];
  }
  return out;
}

std::vector<double> default_v_sequence() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

double density_value(const SpectralMeasure& m, double x) {
  if (m.density) {
    if (x <= m.density->support_lo || x >= m.density->support_hi) return 0.0;
    const double n = static_cast<double>(m.density->lattice_order);
    if (m.density->lattice_order == 2)
      return 1.0 / (M_PI * std::sqrt(4.0 - x * x));
    return n * std::sqrt(4.0 - x * x) /
           (2.0 * M_PI * (n * n - (n - 1.0) * x * x));
  }
  if (m.tabulated) {
    const auto& xs = m.tabulated->x;
    if (xs.size() == 0 || x < xs(0) || x > xs(xs.size() - 1)) return 0.0;
    int hi = 1;
    while (hi < xs.size() && xs(hi) < x) ++hi;
    if (hi == xs.size()) return m.tabulated->value(xs.size() - 1);
    const double t = (x - xs(hi - 1)) / (xs(hi) - xs(hi - 1));
    return (1.0 - t) * m.tabulated->value(hi - 1) + t * m.tabulated->value(hi);
  }
  return 0.0;
}

double continuous_mass(const SpectralMeasure& m, double tol) {
  SpectralMeasure continuous = m;
  continuous.atoms.clear();
  return integrate(continuous, [](double) { return 1.0; }, tol);
}

double total_mass(const SpectralMeasure& m, double tol) {
  double mass = continuous_mass(m, tol);
  for (const auto& atom : m.atoms) mass += atom.weight;
  return mass;
}

double measure_moment(const SpectralMeasure& m, int degree) {
  if (degree < 0 || degree > kMaxMomentDegree)
    throw std::invalid_argument(
        "measure_moment: degree must lie in [0, " +
        std::to_string(kMaxMomentDegree) + "]");
  return integrate(m, [degree](double x) { return std::pow(x, degree); });
}

Eigen::MatrixXd polynomial_gram(const JacobiSequences& j,
                                const SpectralMeasure& m, int deg,
                                double tol) {
  if (deg < 0) throw std::invalid_argument("polynomial_gram: deg must be >= 0");
  SpectralMeasure continuous = m;
  continuous.atoms.clear();
  Eigen::MatrixXd gram = integrate(
      continuous,
      [&](double x) -> Eigen::MatrixXd {
        const Eigen::VectorXd p = eval_poly_all(j, deg, x);
        return p * p.transpose();
      },
      tol);
  for (const auto& atom : m.atoms) {
    const Eigen::VectorXd p = eval_poly_all(j, deg, atom.position);
    gram.noalias() += atom.weight * p * p.transpose();
  }
  return gram;
}

double orthogonality_defect(const JacobiSequences& j, const SpectralMeasure& m,
                            int deg, double tol) {
  Eigen::MatrixXd gram = polynomial_gram(j, m, deg, tol);
  Eigen::VectorXd norm(deg + 1);  // ||P_k||^2 = omega_1 ... omega_k
  norm(0) = 1.0;
  for (int k = 1; k <= deg; ++k) norm(k) = norm(k - 1) * j.omega_at(k);
  double defect = 0.0;
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; b <= deg; ++b) {
      const double expected = a == b ? norm(a) : 0.0;
      defect = std::max(defect, std::abs(gram(a, b) - expected) /
                                    std::sqrt(norm(a) * norm(b)));
    }
  return defect;
}

double moment_defect(const JacobiSequences& j, const SpectralMeasure& m,
                     int max_degree, double tol) {
  if (max_degree < 0 || max_degree > kMaxMomentDegree)
    throw std::invalid_argument("moment_defect: degree must lie in [0, " +
                                std::to_string(kMaxMomentDegree) + "]");
  // Moments of the measure, all degrees in one quadrature pass.
  const Eigen::VectorXd measured = integrate(
      m,
      [max_degree](double x) -> Eigen::VectorXd {
        Eigen::VectorXd powers(max_degree + 1);
        powers(0) = 1.0;
        for (int k = 1; k <= max_degree; ++k) powers(k) = powers(k - 1) * x;
        return powers;
      },
      tol);

  // (J^k)_00 of the tridiagonal matrix; a truncation of dimension
  // max_degree/2 + 2 sees every walk of length <= max_degree.
  const int dim =
      j.unit_tail ? max_degree / 2 + 2
                  : std::min(j.depth(), max_degree / 2 + 2);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    t(i, i) = j.alpha_at(i + 1);
    if (i + 1 < dim) t(i, i + 1) = t(i + 1, i) = std::sqrt(j.omega_at(i + 1));
  }
  Eigen::VectorXd generated(max_degree + 1);
  Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, 0);
  generated(0) = 1.0;
  for (int k = 1; k <= max_degree; ++k) {
    v = t * v;
    generated(k) = v(0);
  }

  // Odd moments of symmetric measures sit near zero; scale them by the
  // neighboring even moments instead of themselves.
  double defect = 0.0;
  for (int k = 0; k <= max_degree; ++k) {
    double scale = 1.0;
    if (k % 2 == 0) {
      scale = std::max(1.0, std::abs(generated(k)));
    } else {
      const double above =
          k + 1 <= max_degree ? std::abs(generated(k + 1)) : 1.0;
      scale = std::max(1.0, std::sqrt(std::abs(generated(k - 1)) * above));
    }
    defect = std::max(defect, std::abs(measured(k) - generated(k)) / scale);
  }
  return defect;
}

}  // namespace ctqw
