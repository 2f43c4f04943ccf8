#pragma once
#include <array>
#include <vector>

#include "hbl/grid.hpp"

namespace hbl {

struct GaussianSearch {
  double L = 16.0;
  int N = 2048;
  std::vector<double> sigmas;  // candidate widths, shared by f, g, h
};

struct GaussianBest {
  double value = 0;
  std::array<double, 3> sigma{1, 1, 1};
  Triple t;
};

// Evaluates I_B on centered Gaussian triples with the given masses over all
// sigma combinations and returns the best (first in lexicographic sigma order
// on ties). Monomial sums factor the search: the quadratic convolution cost
// is paid once per (sigma_f, sigma_g) pair, not per triple.
GaussianBest best_gaussian(const BFunction& B, const std::array<double, 3>& masses,
                           const GaussianSearch& gs);

struct AscendOptions {
  int max_sweeps = 50;
  double eta = 0.1;       // multiplicative step size
  double tol = 1e-9;      // stop when relative improvement per sweep drops below
  int max_halvings = 12;  // eta halvings before an update is abandoned
  bool rearrange_each_sweep = false;
};

struct AscendResult {
  Triple t;
  std::vector<double> values;  // values[0] = starting objective, then one per sweep
  int sweeps = 0;
};

// Cyclic coordinate ascent on I_B under fixed masses. For each function in
// turn: multiplicative step u <- u(1 + eta ghat) along the mass-neutral
// normalized gradient, renormalize mass, accept only if the objective did not
// decrease (else halve eta and retry). Monotone by construction; support
// never grows (zero cells stay zero). B must flatten to monomial terms.
AscendResult ascend(const BFunction& B, const Triple& start, const AscendOptions& opts);

// r(x) = sum_i coeff_i f(x)^{a_i-1} (gtilde^{b_i} * h^{c_i})(x) over the cells
// whose midpoints lie in [x_lo, x_hi], with gtilde(x) = g(-x) and * the grid
// convolution carrying the same half-cell split as eval_functional. r is the
// per-cell stationarity ratio of the discrete objective under mass-preserving
// multiplicative perturbations of f (term weights a_i dropped, as in the
// constancy display). Requires each active term to have exponents in (0,1)
// summing to 2; throws input_error on a zero f-cell inside the window.
GridFunction el_residual(const BFunction& B, const Triple& t, double x_lo, double x_hi);

// Population variance over the window divided by squared mean (scale free);
// 0 iff constant. Zero mean with nonzero values reports +infinity.
double residual_flatness(const GridFunction& r, double x_lo, double x_hi);

struct FlatnessEntry {
  std::array<double, 3> sigma;
  double flatness = 0;
};

struct FlatnessTable {
  std::vector<FlatnessEntry> entries;  // lexicographic sigma order
  double min_flatness = 0;
  std::array<double, 3> argmin{0, 0, 0};
};

// el_residual flatness for every Gaussian triple in sigmas^3.
FlatnessTable flatness_table(const BFunction& B, const std::vector<double>& sigmas, double L,
                             int N, double x_lo, double x_hi,
                             const std::array<double, 3>& masses = {1, 1, 1});

// count log-spaced values from lo to hi inclusive (count 1 -> {lo}).
std::vector<double> geometric_sigmas(double lo, double hi, int count);

}  // namespace hbl
