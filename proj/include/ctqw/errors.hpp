#pragma once

#include <stdexcept>
#include <string>

namespace ctqw {

/// A numerical routine exhausted its refinement budget without meeting the
/// requested tolerance.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ctqw
