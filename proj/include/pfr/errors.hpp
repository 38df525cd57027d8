#pragma once

#include <stdexcept>
#include <string>

namespace pfr {

/// Thrown when an operation would exceed one of the documented desk-scale
/// resource caps (dense table size, pair enumeration, candidate-map search).
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by linear_extension when no extension exists, i.e. the target
/// vector already lies in the subspace that must be annihilated.
class NoExtensionError : public std::runtime_error {
 public:
  explicit NoExtensionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfr
