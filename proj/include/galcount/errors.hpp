#ifndef GALCOUNT_ERRORS_HPP
#define GALCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace galcount {

// Exit codes shared with the CLI: 2 bad input, 3 resource cap, 4 verification failure.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
  static constexpr int exit_code = 2;
};

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
  static constexpr int exit_code = 2;
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
  static constexpr int exit_code = 3;
};

} // namespace galcount

#endif
