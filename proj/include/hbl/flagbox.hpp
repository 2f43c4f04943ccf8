#pragma once
#include <vector>

#include "hbl/polytope.hpp"

namespace hbl {

// Strictly nested chain ending at the full space.
struct Flag {
  std::vector<Subspace> chain;
  std::vector<Rat> weights;  // aligned with chain
};

struct BasicStep {
  Subspace V, W;  // y_V >= y_W > 0, incomparable
  Rat moved;      // the weight transferred (= y_W before the step)
};

// One rewrite of the basic algorithm:
//   y_{V+W} += w, y_{V cap W} += w, y_W = 0, y_V -= w   (w = y_W).
// Preserves sum y dim exactly; never increases sum y dim(L .) by
// submodularity of V -> dim(L V).
DualVector basic_step(const DualVector& y, const Subspace& V, const Subspace& W);

struct ReduceResult {
  DualVector y;                 // flag-supported
  std::vector<BasicStep> trace;
  Flag flag;                    // zero subspace dropped, R^d appended if absent
};

// Stage subspaces in E order, fold one at a time, run the basic algorithm to
// termination inside the working set. Deterministic: eligible pairs are
// picked lexicographically by canonical basis.
ReduceResult reduce_to_flag(const DualVector& y, const std::vector<Subspace>& E_order);

// Y_1 = W_1, thereafter Y_i complements W_{i-1} in W_i via greedy extension
// by W_i's canonical basis rows. Direct sum of the Y_i is R^d.
std::vector<Subspace> complement_decomposition(const Flag& flag);

// y'_{Y_i} = y_{W_i} + ... + y_{W_t}  (suffix sums over the flag weights).
std::vector<Rat> lift_weights(const Flag& flag);

struct Parallelepiped {
  // Edge i is `vec` scaled by e^{exponent}.
  struct Edge {
    std::vector<Rat> vec;
    Rat exponent;
  };
  std::vector<Edge> edges;
  std::vector<int> group_size;  // edges per Y_i, in flag order
};

Parallelepiped build_box(const std::vector<Rat>& lifted,
                         const std::vector<Subspace>& decomposition);

// Sum of c * e^q terms; volumes of the box and its images live here because
// comparing sums of exponentials exactly is not possible, but the (c, q)
// data is.
struct VolumeExpr {
  std::vector<std::pair<Rat, Rat>> terms;  // (coeff > 0, exponent), merged
  double value() const;
  void add(const Rat& coeff, const Rat& exponent);
};

VolumeExpr box_volume(const Parallelepiped& S);
VolumeExpr image_volume(const RatMatrix& L, const Parallelepiped& S);

struct BoxCertificate {
  Rat primal_value;
  Rat dual_value;
  DualVector dual;
  Flag flag;
  std::vector<BasicStep> trace;
  std::vector<Subspace> decomposition;
  Parallelepiped box;
  VolumeExpr volume;
  std::vector<VolumeExpr> images;
  double normalization = 1.0;        // uniform scale sigma <= 1
  std::vector<double> margins;       // m_j - log|L_j(sigma S)| >= 0
  double log_volume_minus_primal = 0.0;  // pre-normalization
};

// Full pipeline: solve_dual -> reduce_to_flag -> decomposition -> lift ->
// box; then the minimal uniform scaling bringing every image volume under
// e^{m_j}. Asserts the box-volume exponent equals the dual optimum.
BoxCertificate certify(const HBLInstance& inst);

}  // namespace hbl
