#pragma once
#include <map>
#include <vector>

#include "hbl/instance.hpp"
#include "hbl/simplex.hpp"

namespace hbl {

// Ordered, deduplicated subspace list E; always contains 0, R^d and every
// Ker L_j. Order is canonical (dim, then basis lex) for reproducibility.
struct SubspaceList {
  std::vector<Subspace> entries;
  bool contains(const Subspace& s) const;
};

// Closure of kernels + dim-1/codim-1 coordinate subspaces + {0, R^d} under
// sum and intersection, iterated `depth` times. Throws input_error when the
// closure exceeds `cap` (possibly infinite lattice).
SubspaceList generate_subspace_list(const HBLInstance& inst, int depth, size_t cap = 4096);

// Polytope {s : sum_j s_j d_j = d, sum_j s_j dim(L_j V) >= dim V for V in E, s >= 0}.
struct ConstraintSystem {
  int n = 0;
  std::vector<Rat> eq_coeff;  // d_j
  Rat eq_rhs;                 // d
  struct Ineq {
    std::vector<Rat> coeff;   // dim(L_j V)
    Rat rhs;                  // dim V
    int subspace;             // index into the producing SubspaceList
  };
  std::vector<Ineq> ineqs;
};

ConstraintSystem build_constraints(const HBLInstance& inst, const SubspaceList& E);

// Exact extreme points via brute force over active-constraint subsets.
// Empty result means empty polytope.
std::vector<std::vector<Rat>> enumerate_vertices(const ConstraintSystem& cs);

struct PrimalResult {
  Rat value;
  std::vector<Rat> argmin;  // a vertex attaining the minimum
};

// min m.s over the polytope, computed exactly as the minimum over vertices.
PrimalResult solve_primal(const ConstraintSystem& cs, const std::vector<long long>& m);

// Dual weights y_V; y_{R^d} free in sign, all others >= 0.
struct DualVector {
  std::map<Subspace, Rat> w;

  Rat get(const Subspace& s) const;
  void add(const Subspace& s, const Rat& v);  // erases entries reaching 0
  Rat dim_pairing() const;                       // sum y_V dim V
  Rat image_pairing(const RatMatrix& L) const;   // sum y_V dim(L V)
};

struct DualResult {
  Rat value;
  DualVector y;
};

// max y.dim(E) s.t. per j: sum_V y_V dim(L_j V) <= m_j; exact simplex.
DualResult solve_dual(const HBLInstance& inst, const SubspaceList& E,
                      const std::vector<long long>& m);

struct DualityReport {
  Rat primal, dual;
  PrimalResult primal_cert;
  DualResult dual_cert;
};

// Throws internal_error on primal/dual mismatch (solver bug by strong duality).
DualityReport verify_duality(const HBLInstance& inst, const SubspaceList& E,
                             const std::vector<long long>& m);

}  // namespace hbl
