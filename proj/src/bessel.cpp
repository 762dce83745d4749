#include "ctqw/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace ctqw {

Eigen::VectorXd bessel_j_array(int max_order, double x) {
  if (max_order < 0)
    throw std::invalid_argument("bessel_j_array: max_order must be >= 0");
  Eigen::VectorXd j(max_order + 1);
  if (x == 0.0) {
    j.setZero();
    j(0) = 1.0;
    return j;
  }
  const double ax = std::abs(x);
  // Start far enough above both the requested order and the turning point
  // |x| that the seeded tail has decayed to nothing after normalization.
  const int start = max_order + static_cast<int>(std::ceil(ax)) + 20 +
                    static_cast<int>(2.0 * std::sqrt(
                                         static_cast<double>(max_order) + ax));

  double above = 0.0;     // J_{n+1} (unnormalized)
  double current = 1e-30;  // J_n
  double even_sum = 0.0;  // accumulates J_0 + 2*sum J_{2m}
  for (int n = start; n >= 1; --n) {
    double below = (2.0 * n / ax) * current - above;
    above = current;
    current = below;
    if (n - 1 <= max_order) j(n - 1) = current;
    if ((n - 1) % 2 == 0) even_sum += (n - 1 == 0) ? current : 2.0 * current;
    if (std::abs(current) > 1e250) {  // rescale to avoid overflow
      above /= 1e250;
      current /= 1e250;
      even_sum /= 1e250;
      for (int m = n - 1; m <= max_order; ++m) j(m) /= 1e250;
    }
  }
  j /= even_sum;  // J_0 + 2 (J_2 + J_4 + ...) = 1
  if (x < 0.0)
    for (int n = 1; n <= max_order; n += 2) j(n) = -j(n);
  return j;
}

}  // namespace ctqw
