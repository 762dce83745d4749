#pragma once

#include <string>
#include <vector>

#include "ctqw/graph.hpp"

namespace ctqw {

// One verification row: a named bound that must hold. observed is the worst
// deviation actually measured, threshold the bound it must stay under.
struct CheckResult {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

/// Number of length-`length` walks that start and end at the root, by
/// direct enumeration over neighbor lists (independent of any matrix code).
long long count_closed_walks(const RootedGraph& g, int length);

CheckResult check_jacobi_extraction();
CheckResult check_quadrature_atoms();
std::vector<CheckResult> check_closed_form_amplitudes();
CheckResult check_oracle_equivalence();
std::vector<CheckResult> check_conservation_uniformity();
std::vector<CheckResult> check_qclt_convergence();
std::vector<CheckResult> check_lattice_measure_mass();
CheckResult check_stieltjes_inversion();
CheckResult check_moment_walk_counts();

/// Every acceptance check, in criterion order.
std::vector<CheckResult> run_acceptance_checks();

/// Spectral vs eigendecomposition deviation for a single family instance
/// (the star lattice is compared on its truncation).
CheckResult verify_family_instance(const std::string& family, int n,
                                   int ray_length);

std::string format_check_line(const CheckResult& result);

}  // namespace ctqw
