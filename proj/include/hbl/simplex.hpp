#pragma once
#include <vector>

#include "hbl/rational.hpp"

namespace hbl {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat value;             // objective at optimum (in the caller's sense)
  std::vector<Rat> x;    // optimal point, original variables
};

// General-form LP. Variables are >= 0 unless marked free.
struct LP {
  enum Rel { LE, GE, EQ };
  struct Row {
    std::vector<Rat> a;
    Rel rel = LE;
    Rat b;
  };
  int nvars = 0;
  bool maximize = false;
  std::vector<Rat> c;
  std::vector<char> is_free;  // size nvars, 1 = unrestricted sign
  std::vector<Row> rows;
};

// Exact two-phase primal simplex with Bland's rule (no cycling).
LPResult solve_lp(const LP& lp);

}  // namespace hbl
