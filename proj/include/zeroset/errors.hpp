#ifndef ZEROSET_ERRORS_HPP
#define ZEROSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zeroset {

/// Invalid parameters: non-lattice spacings, bad signal descriptors, malformed config.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A detector or stencil needs grid samples that are not stored.
struct BoundaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation requested outside the region a field source covers.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid cannot be subsampled by two.
struct SubsampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Missing or corrupt input files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zeroset

#endif  // ZEROSET_ERRORS_HPP
