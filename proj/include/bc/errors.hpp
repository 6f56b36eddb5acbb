#pragma once

#include <stdexcept>
#include <string>

namespace bc {

struct KindMismatch : std::runtime_error {
  explicit KindMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotInImage : std::runtime_error {
  explicit NotInImage(const std::string& what) : std::runtime_error(what) {}
};

struct LevelTooSmall : std::runtime_error {
  explicit LevelTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct NotDiagonalizable : std::runtime_error {
  explicit NotDiagonalizable(const std::string& what) : std::runtime_error(what) {}
};

struct DivergentParameter : std::runtime_error {
  explicit DivergentParameter(const std::string& what) : std::runtime_error(what) {}
};

struct LatticeMismatch : std::runtime_error {
  explicit LatticeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotAdmissible : std::runtime_error {
  explicit NotAdmissible(const std::string& what) : std::runtime_error(what) {}
};

struct WeightNonzero : std::runtime_error {
  explicit WeightNonzero(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bc
