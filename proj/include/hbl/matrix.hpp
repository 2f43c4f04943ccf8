#pragma once
#include <vector>

#include "hbl/rational.hpp"

namespace hbl {

// Dense rational matrix, row-major. Rows double as coordinate vectors.
struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<std::vector<Rat>>& r);
  static RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom);

  RatMatrix transpose() const;
  RatMatrix mul(const RatMatrix& o) const;
  std::vector<Rat> row(int i) const;

  // In-place reduced row echelon form: pivots 1, pivot columns cleared,
  // zero rows trimmed. Returns pivot column indices.
  std::vector<int> rref();

  int rank() const;
  // Rows span the solution set of A x = 0 (x as a row vector), in RREF.
  RatMatrix null_space() const;
  Rat det() const;  // square matrices only

  bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }
};

// Lexicographic over (rows, cols, entries); a strict weak order for containers.
bool lex_less(const RatMatrix& x, const RatMatrix& y);

// Unique x with M x = b for square nonsingular M; empty vector if singular.
std::vector<Rat> solve_square(const RatMatrix& M, const std::vector<Rat>& b);

}  // namespace hbl
