#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hbl/bfunction.hpp"
#include "hbl/instance.hpp"

namespace hbl {

struct InstanceConfig {
  HBLInstance inst;
  // Optional per-j affine expressions in one sweep variable ("2*k", "k", "0").
  std::vector<std::string> m_sweep;
};

// Instance config: {"d":2,"maps":[[[0,1]],[[1,-1]],[[1,0]]],"m":[2,1,0]}.
// Matrix entries are integers or exact "p/q" strings; optional keys:
// "m_sweep", "subspaces" (explicit E override), "closure_depth".
InstanceConfig parse_instance_json(const std::string& text);
InstanceConfig parse_instance_file(const std::string& path);

// B spec: {"kind":"monomial","s":["1/2","3/4","3/4"],"coeff":1} or kinds
// "sum" (terms), "rho" (rho: weighted_sum|min|max|power_mean, terms,
// weights, p), "integral_family" (t_lo, t_hi, base, slope, nodes).
BFunction parse_bfunction_json(const std::string& text);
BFunction parse_bfunction_file(const std::string& path);

// value of an affine sweep expression at var = k.
long long eval_affine(const std::string& expr, const std::string& var, long long k);

uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(uint64_t h);

std::string read_file(const std::string& path);
// Temp file + rename so readers never observe a partial report.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace hbl
