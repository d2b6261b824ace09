#pragma once

#include <stdexcept>
#include <string>

namespace spcausal {

// A unit with no neighbors was asked for a neighborhood quantity.
struct IsolatedUnitError : std::runtime_error {
  explicit IsolatedUnitError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix that must be positive definite failed its Cholesky factorization.
struct NotPositiveDefiniteError : std::runtime_error {
  explicit NotPositiveDefiniteError(const std::string& what) : std::runtime_error(what) {}
};

// A design matrix is numerically rank deficient.
struct CollinearityError : std::runtime_error {
  explicit CollinearityError(const std::string& what) : std::runtime_error(what) {}
};

// A requested regressor is not present in the dataset.
struct MissingColumnError : std::runtime_error {
  explicit MissingColumnError(const std::string& what) : std::runtime_error(what) {}
};

// Fewer observations than coefficients, or an otherwise unusable sample.
struct InsufficientDataError : std::runtime_error {
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

// A chain with zero within-chain variance cannot feed a convergence diagnostic.
struct DegenerateChainError : std::runtime_error {
  explicit DegenerateChainError(const std::string& what) : std::runtime_error(what) {}
};

// A value object was asked to do something its current contents do not allow.
struct InvalidStateError : std::runtime_error {
  explicit InvalidStateError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input (edge lists, CSVs, config files, queries).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spcausal
