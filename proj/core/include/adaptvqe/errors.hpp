#pragma once

#include <stdexcept>
#include <string>

namespace adaptvqe {

// Error taxonomy mapped to distinct CLI exit codes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OptimizerError : std::runtime_error {
  explicit OptimizerError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace adaptvqe
