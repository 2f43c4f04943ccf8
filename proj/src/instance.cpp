#include "hbl/instance.hpp"

namespace hbl {

void HBLInstance::validate() const {
  if (d <= 0) throw input_error("instance: d must be positive");
  if (maps.empty()) throw input_error("instance: no maps");
  for (size_t j = 0; j < maps.size(); ++j) {
    const auto& L = maps[j];
    if (L.cols != d)
      throw input_error("instance: map " + std::to_string(j + 1) + " has " +
                        std::to_string(L.cols) + " columns, expected d=" + std::to_string(d));
    if (L.rows < 1 || L.rows > d)
      throw input_error("instance: map " + std::to_string(j + 1) + " must have 1..d rows");
    if (L.rank() != L.rows)
      throw input_error("instance: map " + std::to_string(j + 1) + " is not surjective");
  }
  if (!m.empty()) {
    if (m.size() != maps.size())
      throw input_error("instance: m has wrong length");
    for (long long v : m)
      if (v < 0) throw input_error("instance: scale exponents must be nonnegative integers");
  }
  for (const auto& s : explicit_E)
    if (s.ambient != d) throw input_error("instance: explicit subspace has wrong ambient dimension");
}

}  // namespace hbl
