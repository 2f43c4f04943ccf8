#pragma once
#include <string>
#include <vector>

#include "hbl/matrix.hpp"

namespace hbl {

// Linear subspace of Q^d stored as a canonical RREF basis, so set equality
// is structural equality. The zero subspace has an empty basis.
struct Subspace {
  int ambient = 0;
  RatMatrix basis;  // dim x ambient, RREF, no zero rows

  Subspace() = default;

  int dim() const { return basis.rows; }
  bool is_zero() const { return basis.rows == 0; }
  bool is_full() const { return basis.rows == ambient; }

  static Subspace zero(int n);
  static Subspace full(int n);
  static Subspace row_space(const RatMatrix& rows);  // canonicalizing constructor
  static Subspace span(const std::vector<std::vector<Rat>>& rows, int ambient);

  bool contains(const Subspace& o) const;  // o subset of this

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // Rows span {phi : v . phi = 0 for all v in this}.
  Subspace annihilator() const;

  std::string str() const;  // "{[1,0],[0,1]}" with exact entries

  bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  // Order: ambient, then dim, then basis entries lexicographically.
  bool operator<(const Subspace& o) const;
};

// canonicalize of the spec: row space with declared ambient dimension.
Subspace canonicalize(const RatMatrix& rows, int ambient);

// dim(L V) where L acts on column vectors; basis rows map through L^T.
int image_dim(const RatMatrix& L, const Subspace& v);

Subspace kernel(const RatMatrix& L);

// Closure of {v} union flag under sum and intersection; finite whenever
// flag is a chain. Throws input_error if flag is not a chain.
std::vector<Subspace> closure_flag_plus_one(const Subspace& v, const std::vector<Subspace>& flag);

bool is_chain(const std::vector<Subspace>& list);  // pairwise comparable

}  // namespace hbl
