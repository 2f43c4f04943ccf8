#include "hbl/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hbl/errors.hpp"

namespace hbl {

using nlohmann::json;

namespace {

Rat entry_to_rat(const json& e, const std::string& field) {
  if (e.is_number_integer()) return Rat(e.get<long long>());
  if (e.is_string()) return parse_rat(e.get<std::string>());
  throw input_error(field + ": entries must be integers or \"p/q\" strings");
}

RatMatrix matrix_from_json(const json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty())
    throw input_error(field + ": expected a nonempty array of rows");
  const size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw input_error(field + ": rows must be nonempty arrays");
  RatMatrix M(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw input_error(field + ": ragged matrix");
    for (size_t j = 0; j < cols; ++j)
      M.at(static_cast<int>(i), static_cast<int>(j)) = entry_to_rat(rows[i][j], field);
  }
  return M;
}

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error(std::string(what) + ": invalid JSON");
  return j;
}

}  // namespace

InstanceConfig parse_instance_json(const std::string& text) {
  const json j = parse_text(text, "instance");
  if (!j.is_object()) throw input_error("instance: expected a JSON object");
  InstanceConfig cfg;
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw input_error("instance: missing integer field \"d\"");
  cfg.inst.d = j["d"].get<int>();
  if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
    throw input_error("instance: missing nonempty array field \"maps\"");
  for (size_t k = 0; k < j["maps"].size(); ++k)
    cfg.inst.maps.push_back(matrix_from_json(j["maps"][k], "maps[" + std::to_string(k) + "]"));
  if (j.contains("m")) {
    if (!j["m"].is_array()) throw input_error("instance: \"m\" must be an array");
    for (const auto& e : j["m"]) {
      if (!e.is_number_integer()) throw input_error("instance: \"m\" entries must be integers");
      cfg.inst.m.push_back(e.get<long long>());
    }
  }
  if (j.contains("m_sweep")) {
    if (!j["m_sweep"].is_array()) throw input_error("instance: \"m_sweep\" must be an array");
    for (const auto& e : j["m_sweep"]) {
      if (!e.is_string()) throw input_error("instance: \"m_sweep\" entries must be strings");
      cfg.m_sweep.push_back(e.get<std::string>());
    }
    if (cfg.m_sweep.size() != cfg.inst.maps.size())
      throw input_error("instance: \"m_sweep\" length must match \"maps\"");
  }
  if (j.contains("subspaces")) {
    if (!j["subspaces"].is_array()) throw input_error("instance: \"subspaces\" must be an array");
    for (size_t k = 0; k < j["subspaces"].size(); ++k) {
      const RatMatrix M =
          matrix_from_json(j["subspaces"][k], "subspaces[" + std::to_string(k) + "]");
      if (M.cols != cfg.inst.d) throw input_error("instance: subspace ambient mismatch");
      cfg.inst.explicit_E.push_back(Subspace::row_space(M));
    }
  }
  if (j.contains("closure_depth")) {
    if (!j["closure_depth"].is_number_integer())
      throw input_error("instance: \"closure_depth\" must be an integer");
    cfg.inst.closure_depth = j["closure_depth"].get<int>();
  }
  cfg.inst.validate();
  return cfg;
}

InstanceConfig parse_instance_file(const std::string& path) {
  return parse_instance_json(read_file(path));
}

namespace {

std::vector<Rat> rat_list(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw input_error(field + ": expected an array");
  std::vector<Rat> out;
  for (const auto& e : arr) out.push_back(entry_to_rat(e, field));
  return out;
}

BFunction bfunction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw input_error("b-spec: every node needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "monomial") {
    if (!j.contains("s")) throw input_error("b-spec: monomial needs \"s\"");
    const double coeff = j.value("coeff", 1.0);
    return BFunction::monomial(rat_list(j["s"], "s"), coeff);
  }
  if (kind == "sum") {
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
      throw input_error("b-spec: sum needs a nonempty \"terms\" array");
    std::vector<BFunction> terms;
    for (const auto& t : j["terms"]) terms.push_back(bfunction_from_json(t));
    return BFunction::sum(std::move(terms));
  }
  if (kind == "rho") {
    if (!j.contains("rho") || !j["rho"].is_string())
      throw input_error("b-spec: rho node needs a string \"rho\"");
    const std::string rk = j["rho"].get<std::string>();
    BFunction::RhoKind r;
    if (rk == "weighted_sum")
      r = BFunction::RhoKind::WeightedSum;
    else if (rk == "min")
      r = BFunction::RhoKind::Min;
    else if (rk == "max")
      r = BFunction::RhoKind::Max;
    else if (rk == "power_mean")
      r = BFunction::RhoKind::PowerMean;
    else
      throw input_error("b-spec: unknown rho kind \"" + rk + "\"");
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
      throw input_error("b-spec: rho needs a nonempty \"terms\" array");
    std::vector<BFunction> inner;
    for (const auto& t : j["terms"]) inner.push_back(bfunction_from_json(t));
    std::vector<double> weights;
    if (j.contains("weights"))
      for (const auto& w : j["weights"]) weights.push_back(w.get<double>());
    const double p = j.value("p", 1.0);
    return BFunction::rho_composed(r, std::move(inner), std::move(weights), p);
  }
  if (kind == "integral_family") {
    for (const char* key : {"t_lo", "t_hi", "base", "slope"})
      if (!j.contains(key))
        throw input_error(std::string("b-spec: integral_family needs \"") + key + "\"");
    const int nodes = j.value("nodes", 129);
    return BFunction::integral_family(entry_to_rat(j["t_lo"], "t_lo"),
                                      entry_to_rat(j["t_hi"], "t_hi"),
                                      rat_list(j["base"], "base"),
                                      rat_list(j["slope"], "slope"), nodes);
  }
  throw input_error("b-spec: unknown kind \"" + kind + "\"");
}

}  // namespace

BFunction parse_bfunction_json(const std::string& text) {
  return bfunction_from_json(parse_text(text, "b-spec"));
}

BFunction parse_bfunction_file(const std::string& path) {
  return parse_bfunction_json(read_file(path));
}

long long eval_affine(const std::string& expr, const std::string& var, long long k) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw input_error("empty sweep expression");
  long long acc = 0;
  size_t i = 0;
  long long sign = 1;
  bool expect_term = true;
  while (i < s.size()) {
    if (!expect_term && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      expect_term = true;
      continue;
    }
    if (expect_term && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -sign : sign;
      ++i;
      continue;
    }
    long long coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coef = coef * 10 + (s[i] - '0');
        ++i;
      }
      have_coef = true;
    }
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) throw input_error("sweep expression: '*' without coefficient");
      ++i;
      if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i])))
        throw input_error("sweep expression: expected variable after '*'");
    }
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::string name;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        name.push_back(s[i]);
        ++i;
      }
      if (name != var)
        throw input_error("sweep expression uses \"" + name + "\" but the sweep variable is \"" +
                          var + "\"");
      acc += sign * coef * k;
    } else if (have_coef) {
      acc += sign * coef;
    } else {
      throw input_error("sweep expression: unexpected character '" + std::string(1, s[i]) + "'");
    }
    sign = 1;
    expect_term = false;
  }
  if (expect_term) throw input_error("sweep expression ends with an operator");
  return acc;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write file: " + tmp);
    out << content;
    out.flush();
    if (!out) throw input_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw input_error("cannot rename " + tmp + " to " + path);
}

}  // namespace hbl
