#pragma once
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hbl/bfunction.hpp"

namespace hbl {

// Piecewise-constant nonnegative function on a uniform lattice. Cell i
// covers [(start+i)dx, (start+i+1)dx); `start` is a global cell index so
// functions with different extents share one coordinate system.
struct GridFunction {
  double dx = 1.0;
  long long start = 0;
  std::vector<double> v;

  long long end() const { return start + static_cast<long long>(v.size()); }
  double mass() const;
  double x_left(long long cell) const { return static_cast<double>(cell) * dx; }
  double value_at_cell(long long global) const;  // 0 outside
  // Same function on the dx/2 lattice (values duplicated; exact).
  GridFunction refine2() const;
  void trim();  // drop zero cells at both ends
};

struct Triple {
  GridFunction f, g, h;
  double alpha = 0, beta = 0, gamma = 0;  // target masses

  void set_targets_from_masses();
  void check_masses(double rel_tol = 1e-12) const;
};

// I_B(f,g,h) = int int B(f(y), g(t), h(y+t)) dy dt for the step functions,
// exact at cell level: a product cell (u,v) splits its h-argument across
// global cells u+v and u+v+1 with equal halves. Terms with any zero
// argument are skipped (B vanishes on the boundary by hypothesis).
double eval_functional(const BFunction& B, const Triple& t);

// Same dx across the triple and no negative cells anywhere.
void require_common_grid(const Triple& t);

// Per-cell power; zero cells stay zero for every exponent (zero-argument
// cells never contribute to the trilinear form), positive cells use x^e.
std::vector<double> power_cells(const std::vector<double>& in, double e);
// c[w] = sum_{u+v=w} a[u] b[v]; length |a|+|b|-1.
std::vector<double> convolve_cells(const std::vector<double>& a, const std::vector<double>& b);

struct MonomialTerm {
  double coeff = 1.0;
  double a = 0, b = 0, c = 0;  // exponents on f, g, h
};

// Flattens B into monomial terms when it is a monomial or a sum of
// monomials. Returns false (and leaves `out` empty) otherwise.
bool monomial_terms(const BFunction& B, std::vector<MonomialTerm>& out);

// Spec'd cell-level rearrangement: values sorted descending and placed
// center-out (cell 0, then +1, -1, +2, ...); ties keep original order.
GridFunction rearrange(const GridFunction& f);

// Symmetric decreasing rearrangement represented exactly on the dx/2
// lattice: the k-th largest half-cell value occupies the pair of half-cells
// at distance k from the origin.
GridFunction rearrange_exact_refined(const GridFunction& f);

// I_B(f*,g*,h*) - I_B(f,g,h) with the continuum rearrangements (computed on
// the refined lattice, exactly).
double rearrangement_gap(const BFunction& B, const Triple& t);

// Step-function triple of the necessity example: f = a1 on [-5/2,5/2) plus
// a2-a1 on [1/2,3/2), g likewise with b's, h = c1 on [-5,5) plus c2-c1 on
// [-1,1); half-integer lattice.
Triple remark_counterexample(double a1, double a2, double b1, double b2, double c1, double c2);

struct LayerProfile {
  // j -> (measure |F_j|, layer mass 2^j |F_j|)
  std::map<int, std::pair<double, double>> layers;
  double mass = 0;
};

LayerProfile dyadic_decompose(const GridFunction& f);

struct ScaleReport {
  int k_f = 0, k_g = 0, k_h = 0;      // argmax layer indices
  double peak_f = 0, peak_g = 0, peak_h = 0;  // max layer masses
  bool peak_ok = false;                // all peaks >= c0
  int spread = 0;                      // |k_f-k_g| + |k_f-k_h|
  std::vector<int> m_list;
  std::vector<double> tail_f, tail_g, tail_h;  // sum of layer masses |j-k| >= m
  std::vector<double> rho_list;
  std::vector<double> above_f, below_f;  // mass above rho / below 1/rho
};

ScaleReport scale_diagnostics(const Triple& t, double c0, const std::vector<int>& m_list);

// u(x) -> lambda u(lambda x). Exact for lambda a power of two (dx scales,
// start is preserved); otherwise midpoint resampling onto the same lattice
// with mass renormalization.
GridFunction dilate(const GridFunction& f, double lambda);
Triple dilate_triple(const Triple& t, double lambda);

// Gaussian with given mass on [-L, L] with N cells; throws numeric_error if
// truncation loses more than 1e-6 of the mass.
GridFunction gaussian_grid(double sigma, double mass, double L, int N);

GridFunction random_step_function(std::mt19937_64& rng, double L, int N, int max_plateaus);

void write_grid_csv(const std::string& path, const GridFunction& f);
GridFunction read_grid_csv(const std::string& path);

}  // namespace hbl
