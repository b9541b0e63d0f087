#pragma once

#include <stdexcept>
#include <string>

namespace cnot_forge {

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what)
      : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cnot_forge
