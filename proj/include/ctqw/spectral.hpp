#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ctqw/decomposition.hpp"
#include "ctqw/errors.hpp"

namespace ctqw {

inline constexpr double kQuadratureTol = 1e-10;
// Atoms come out of eigendecompositions of integer tridiagonal matrices;
// spurious splitting beyond this is rounding, genuine gaps are O(1).
inline constexpr double kAtomMergeTol = 1e-9;
inline constexpr int kMaxMomentDegree = 12;

struct Atom {
  double position;
  double weight;
};

enum class DensityKind { semicircle, arcsine, star_lattice };

// Continuous density on [-2, 2]: (1/2pi) N sqrt(4-x^2) / (N^2-(N-1)x^2),
// which degenerates to the semicircle at N = 1 and the arcsine law at N = 2.
struct ClosedFormDensity {
  DensityKind kind = DensityKind::semicircle;
  int lattice_order = 1;  // the ray count N
  double support_lo = -2.0;
  double support_hi = 2.0;
};

struct TabulatedDensity {
  Eigen::VectorXd x;      // strictly increasing grid
  Eigen::VectorXd value;  // density samples on the grid
};

// Probability measure: finite atom list plus an optional continuous part,
// either one of the named closed forms or a numerical tabulation.
struct SpectralMeasure {
  std::vector<Atom> atoms;  // positions strictly increasing, weights > 0
  std::optional<ClosedFormDensity> density;
  std::optional<TabulatedDensity> tabulated;
};

/// Largest k for which P_k is determined by the stored coefficients
/// (unbounded when the sequences carry a unit tail).
int max_poly_degree(const JacobiSequences& j);

/// P_k(x) by the forward three-term recurrence
/// P_{n+1} = (x - alpha_{n+1}) P_n - omega_n P_{n-1}, P_0 = 1.
double eval_poly(const JacobiSequences& j, int k, double x);

/// P_0(x) .. P_k(x) in one recurrence pass.
Eigen::VectorXd eval_poly_all(const JacobiSequences& j, int k, double x);

/// Q_k^{(1)}(x): same recurrence with both sequences shifted by one.
double eval_shifted_poly(const JacobiSequences& j, int k, double x);

// Stieltjes transform of the depth-n truncated continued fraction,
// evaluated as Q^{(1)}_{n-1}(z) / P_n(z). Real z at a root of P_n is a
// pole and is rejected.
Complex stieltjes_finite(const JacobiSequences& j, Complex z);

// Fixed point of G = 1/(z - G): G(z) = (z - sqrt(z^2-4))/2 with the branch
// fixed by decay G ~ 1/z at infinity (equivalently |G| <= 1). Real z inside
// the branch cut [-2, 2] is rejected.
Complex stieltjes_lattice_tail(Complex z);

/// Transform of the N-ray star lattice measure: 1/(z - N * tail(z)).
Complex stieltjes_star_lattice(int rays, Complex z);

// Gauss quadrature measure of a finite sequence pair: atom positions are
// the eigenvalues of the depth x depth symmetric tridiagonal matrix
// (diagonal alpha, off-diagonal sqrt(omega)); weights are squared first
// eigenvector components. Nearly coincident atoms are merged.
SpectralMeasure quadrature_measure(const JacobiSequences& j,
                                   double merge_tol = kAtomMergeTol);

// Spectral measure of the infinite N-ray star lattice: the closed-form
// density on [-2, 2]; for N >= 3 also atoms at +-N/sqrt(N-1) carrying
// weight (N-2)/(2N-2) each.
SpectralMeasure star_lattice_measure(int rays);

/// Measure matching a sequence pair: Gauss quadrature when finite, the
/// star-lattice closed form when the pair carries a unit tail.
SpectralMeasure measure_for(const JacobiSequences& j);

// Boundary values of the transform: density(x) = -(1/pi) Im G(x + iv),
// polynomially extrapolated to v = 0 over the (strictly decreasing)
// v_sequence. Atoms show up as spikes that do not extrapolate to a finite
// density; detecting them is the caller's business.
TabulatedDensity stieltjes_invert(
    const std::function<Complex(Complex)>& transform,
    const Eigen::VectorXd& x_grid, const std::vector<double>& v_sequence);

/// The default v ladder {1e-2, 1e-3, ..., 1e-6}.
std::vector<double> default_v_sequence();

/// Value of the continuous part at x (0 outside the support; atoms do not
/// contribute).
double density_value(const SpectralMeasure& m, double x);

/// Total mass of the continuous part.
double continuous_mass(const SpectralMeasure& m,
                       double tol = kQuadratureTol);

/// Atom mass + continuous mass.
double total_mass(const SpectralMeasure& m, double tol = kQuadratureTol);

/// Integral of x^degree against the measure; degrees above
/// kMaxMomentDegree exceed the quadrature reliability bound.
double measure_moment(const SpectralMeasure& m, int degree);

// Gram matrix ∫ P_j P_k dmu for j,k = 0..deg and its defect against the
// exact diag(1, w1, w1 w2, ...). The defect is the operative check that a
// (sequences, measure) pair belong together; it is normalized by
// ||P_j|| ||P_k|| so the bound means the same thing whether the omega
// products are O(1) or O(10^4).
Eigen::MatrixXd polynomial_gram(const JacobiSequences& j,
                                const SpectralMeasure& m, int deg,
                                double tol = kQuadratureTol);
double orthogonality_defect(const JacobiSequences& j, const SpectralMeasure& m,
                            int deg, double tol = kQuadratureTol);

// Relative mismatch between the measure's moments and the moments the
// sequences generate ((J^k)_00 of the tridiagonal matrix), degrees
// 0..max_degree. Equivalent to the orthogonality check at half the degree,
// but built from cancellation-free sums, so it stays meaningful when the
// atoms sit far outside [-2, 2] where P_k evaluation is hypersensitive.
double moment_defect(const JacobiSequences& j, const SpectralMeasure& m,
                     int max_degree, double tol = kQuadratureTol);

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] (weights sum to 2), via the
/// Golub-Welsch eigenvalue method.
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_16();

double magnitude(double v);
double magnitude(const Complex& v);
template <class D>
double magnitude(const Eigen::MatrixBase<D>& v) {
  return v.norm();
}

// Composite Gauss-Legendre integration of g over [a, b], doubling the panel
// count until two successive estimates agree to tol. The integrand must
// return a plain value type (double, Complex, or an evaluated Eigen object).
template <class G>
auto panel_integrate(G&& g, double a, double b, double tol,
                     int max_panels = 1 << 14) {
  const auto& [nodes, weights] = gauss_legendre_16();
  using R = std::decay_t<std::invoke_result_t<G&, double>>;
  auto pass = [&](int panels) {
    const double h = (b - a) / panels;
    R total = R(0.0 * g(a));
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      for (int q = 0; q < nodes.size(); ++q)
        total += (0.5 * h * weights(q)) * g(lo + 0.5 * h * (nodes(q) + 1.0));
    }
    return total;
  };
  R previous = pass(4);
  for (int panels = 8; panels <= max_panels; panels *= 2) {
    R current = pass(panels);
    if (magnitude(R(current - previous)) <
        tol * std::max(1.0, magnitude(current)))
      return current;
    previous = std::move(current);
  }
  throw ConvergenceError("panel_integrate: tolerance " + std::to_string(tol) +
                         " not reached within panel budget");
}

/// Weight of the closed-form density after x = 2 cos(theta):
/// integral over [-2,2] of f * density == integral over [0,pi] of
/// f(2 cos t) * theta_weight(N, t).
double theta_weight(int rays, double theta);

}  // namespace detail

// Integral of f against the measure: atom sum plus continuous part. The
// closed-form part is integrated through the x = 2 cos(theta) substitution,
// which absorbs the sqrt(4 - x^2) endpoint behavior; tabulated parts use
// the trapezoid rule on their grid. When a measure carries both, the
// closed form is authoritative and the tabulation is treated as a view.
template <class F>
auto integrate(const SpectralMeasure& m, F&& f, double tol = kQuadratureTol) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  R total = R(0.0 * f(0.0));
  for (const auto& atom : m.atoms) total += atom.weight * f(atom.position);
  if (m.density) {
    const int rays = m.density->lattice_order;
    total += detail::panel_integrate(
        [&](double theta) -> R {
          return detail::theta_weight(rays, theta) * f(2.0 * std::cos(theta));
        },
        0.0, M_PI, tol);
  } else if (m.tabulated) {
    const auto& x = m.tabulated->x;
    const auto& rho = m.tabulated->value;
    for (int i = 0; i + 1 < x.size(); ++i)
      total += 0.5 * (x(i + 1) - x(i)) *
               (rho(i) * f(x(i)) + rho(i + 1) * f(x(i + 1)));
  }
  return total;
}

}  // namespace ctqw
