#include "ctqw/families.hpp"

#include <stdexcept>

namespace ctqw {

bool known_family(const std::string& family) {
  return family == "star-p3" || family == "star-c4" ||
         family == "star-lattice" || family == "path" || family == "cycle" ||
         family == "k2";
}

bool family_is_infinite(const std::string& family) {
  return family == "star-lattice";
}

RootedGraph family_graph(const std::string& family, int n, int ray_length) {
  if (family == "star-p3") return star_power(build_path(3), n);
  if (family == "star-c4") return star_power(build_cycle(4), n);
  if (family == "star-lattice") return build_star_lattice(n, ray_length);
  if (family == "path") return build_path(n);
  if (family == "cycle") return build_cycle(n);
  if (family == "k2") return build_path(2);
  throw std::invalid_argument("unknown graph family: " + family);
}

JacobiSequences family_sequences(const std::string& family, int n) {
  if (family == "star-lattice") return star_lattice_sequences(n);
  if (family == "k2") return k2_sequences();
  const RootedGraph g = family_graph(family, n, 1);
  const Decomposition d = quantum_decompose(g, stratify(g));
  if (!d.report.invariant)
    throw std::domain_error("family_sequences: " + g.label() +
                            " is not invariant under the quantum components");
  return d.sequences;
}

}  // namespace ctqw
