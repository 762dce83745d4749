#pragma once

#include <Eigen/Core>

namespace ctqw {

// J_0(x) .. J_max_order(x) by downward recurrence with normalization
// (Miller's algorithm), which is stable for the orders needed here.
Eigen::VectorXd bessel_j_array(int max_order, double x);

}  // namespace ctqw
