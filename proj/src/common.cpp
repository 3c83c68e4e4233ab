#include "designlab/common.hpp"

namespace designlab {

const char* family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::Unitary: return "unitary";
    case GroupFamily::Symplectic: return "symplectic";
    case GroupFamily::Orthogonal: return "orthogonal";
  }
  return "?";
}

GroupFamily family_from_name(const std::string& name) {
  if (name == "unitary" || name == "u") return GroupFamily::Unitary;
  if (name == "symplectic" || name == "sp") return GroupFamily::Symplectic;
  if (name == "orthogonal" || name == "o" || name == "so") return GroupFamily::Orthogonal;
  throw validation_error("unknown group family: " + name);
}

Budget& budget() {
  static Budget b;
  return b;
}

std::size_t checked_pow_dim(int d, int t) {
  if (d < 1 || t < 0) throw validation_error("dimension parameters must be positive");
  std::size_t dim = 1;
  for (int i = 0; i < t; ++i) {
    if (dim > budget().max_dim / static_cast<std::size_t>(d)) {
      throw budget_error("d^t exceeds the dimension budget (" +
                         std::to_string(budget().max_dim) + ")");
    }
    dim *= static_cast<std::size_t>(d);
  }
  if (dim > budget().max_dim) {
    throw budget_error("d^t exceeds the dimension budget");
  }
  return dim;
}

}  // namespace designlab
