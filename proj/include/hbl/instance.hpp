#pragma once
#include <string>
#include <vector>

#include "hbl/subspace.hpp"

namespace hbl {

// Family of surjective rational maps L_j : Q^d -> Q^{d_j} plus integer scale
// exponents m_j (lambda_j = e^{m_j}).
struct HBLInstance {
  int d = 0;
  std::vector<RatMatrix> maps;
  std::vector<long long> m;            // may be empty until a command needs it
  std::vector<Subspace> explicit_E;    // optional override for the subspace list
  int closure_depth = 2;

  int n() const { return static_cast<int>(maps.size()); }
  int dj(int j) const { return maps[j].rows; }

  void validate() const;  // surjectivity, shape, m_j >= 0
};

}  // namespace hbl
