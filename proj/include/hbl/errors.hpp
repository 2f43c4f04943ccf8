#pragma once
#include <stdexcept>
#include <string>

namespace hbl {

// Exit-code mapping lives in the CLI: input 1, infeasible 2, certificate 3,
// failed check 4, numeric 5.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& m) : std::runtime_error(m) {}
};
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& m) : std::runtime_error(m) {}
};
struct certificate_error : std::runtime_error {
  explicit certificate_error(const std::string& m) : std::runtime_error(m) {}
};
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& m) : std::runtime_error(m) {}
};
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

}  // namespace hbl
