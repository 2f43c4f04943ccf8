#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hbl/rational.hpp"

namespace hbl {

// Expression tree for size functions B on the nonnegative orthant.
// Monomial: coeff * prod y_j^{s_j}  (s stored exactly, coeff may be negative
//   only in difference-test fixtures).
// Sum: children added.
// Rho: outer rho(P_1(y),...,P_k(y)) with monomial inner parts.
// IntegralFamily: int_{lo}^{hi} prod y_j^{base_j + slope_j t} dt by composite
//   Simpson quadrature.
struct BFunction {
  enum class Kind { Monomial, Sum, Rho, IntegralFamily };
  enum class RhoKind { WeightedSum, Min, Max, PowerMean };

  Kind kind = Kind::Monomial;

  // Monomial
  std::vector<Rat> s;
  double coeff = 1.0;

  // Sum / Rho children
  std::vector<BFunction> terms;
  RhoKind rho = RhoKind::WeightedSum;
  std::vector<double> rho_weights;
  double rho_p = 1.0;  // power-mean exponent

  // IntegralFamily
  Rat t_lo, t_hi;
  std::vector<Rat> base, slope;
  int quad_nodes = 129;  // composite Simpson, odd

  int arity() const;

  static BFunction monomial(std::vector<Rat> expts, double coefficient = 1.0);
  static BFunction sum(std::vector<BFunction> children);
  static BFunction rho_composed(RhoKind k, std::vector<BFunction> inner,
                                std::vector<double> weights = {}, double p = 1.0);
  static BFunction integral_family(const Rat& lo, const Rat& hi, std::vector<Rat> base_expts,
                                   std::vector<Rat> slope_expts, int nodes = 129);
};

// Scalar-argument evaluation; zero arguments follow 0^0 = 1 inside monomials,
// IntegralFamily returns 0 when any argument is 0 (positive exponents
// throughout the bundled families).
double eval_b(const BFunction& b, const std::vector<double>& y);
double eval_b3(const BFunction& b, double y1, double y2, double y3);

double rho_eval(BFunction::RhoKind k, const std::vector<double>& weights, double p,
                const std::vector<double>& v);

struct Rectangle3 {
  double a, b, c, d, e, f;  // a<=b, c<=d, e<=f, all >= 0
};

// 8-corner alternating sum; nonnegativity for all rectangles is the
// rearrangement hypothesis.
double delta3(const BFunction& F, const Rectangle3& R);

struct SamplerSpec {
  long long n = 10000;
  uint64_t seed = 1;
  double log_lo = -6.0;  // coordinates drawn log-uniform in [e^lo, e^hi]
  double log_hi = 6.0;
};

struct CheckReport {
  std::string condition;
  long long samples = 0;
  double worst = 0.0;  // semantics per condition (min, sup or defect)
  bool pass = false;
  std::vector<double> witness;  // flattened inputs; nonempty iff !pass
  uint64_t seed = 0;
};

CheckReport check_delta3_nonneg(const BFunction& F, const SamplerSpec& sp, double tol = 1e-9);

// Growth bounds against a vertex list:
//   mode max: ratio B(lambda y)/(max over vertices prod lambda^s * B(y)) bounded above;
//   mode min: same with min over vertices, bounded below by 1/threshold.
// Probes lambda = 1 and lambda = e^{+-10} (1,...,1) rays are always included.
enum class PolytopeCheckMode { Max, Min };
CheckReport check_polytope_conditions(const BFunction& B,
                                      const std::vector<std::vector<Rat>>& vertices,
                                      PolytopeCheckMode mode, const SamplerSpec& sp,
                                      double threshold = 1e3);

// B(R^{d_j} y) / (R^d B(y)) should stay in [1/threshold, threshold].
CheckReport check_scaling(const BFunction& B, int d, const std::vector<int>& dj,
                          const SamplerSpec& sp, double threshold = 10.0);

// Scale condition (worst C in rho(lambda y) <= C max_i lambda_i rho(y)) and
// superadditivity defect; probe pair (e1, e2) always included in the second.
std::pair<CheckReport, CheckReport> check_rho_conditions(const BFunction& rho_node,
                                                         const SamplerSpec& sp,
                                                         double tol = 1e-9);

}  // namespace hbl
