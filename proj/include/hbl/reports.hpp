#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hbl/bfunction.hpp"
#include "hbl/extremize.hpp"
#include "hbl/instance.hpp"

namespace hbl {

// Report builders shared by the CLI and the python module. Each returns a
// JSON document (pretty-printed, trailing newline); numeric fields are
// deterministic for a fixed config + seed.

// Subspace list, constraint provenance, exact vertices; primal/dual when the
// instance carries m.
std::string report_polytope(const HBLInstance& inst, const std::string& config_hash);

// Full parallelepiped certificate for the instance's m.
std::string report_certify(const HBLInstance& inst, const std::string& config_hash);

// One certificate per sweep point: CSV with m, primal, log-volume, margins.
std::string sweep_certify_csv(const HBLInstance& inst, const std::vector<std::string>& m_exprs,
                              const std::string& var, long long lo, long long hi);

struct CheckBOutcome {
  std::string json;
  bool all_pass = true;
};

// checks: subset of {"c2","c3","scaling","delta3","rho"}.
CheckBOutcome report_check_b(const HBLInstance& inst, const BFunction& B,
                             const std::vector<std::string>& checks, const SamplerSpec& sp,
                             const std::string& config_hash);

struct ExtremizeRun {
  double L = 16.0;
  int N = 2048;
  std::array<double, 3> masses{1, 1, 1};
  double sigma_lo = 0.5, sigma_hi = 2.0;
  int sigma_count = 7;
  double window_lo = -4.0, window_hi = 4.0;
  int max_sweeps = 50;
  double tol = 1e-9;
  bool rearrange_each_sweep = false;
  uint64_t seed = 1;
  bool include_flatness_entries = true;
};

struct ExtremizeOutcome {
  std::string json;
  Triple final_t;       // ascent output, for function-file emission
  double baseline = 0;  // best Gaussian value
  double final_value = 0;
};

ExtremizeOutcome report_extremize(const BFunction& B, const ExtremizeRun& run,
                                  const std::string& config_hash);

}  // namespace hbl
