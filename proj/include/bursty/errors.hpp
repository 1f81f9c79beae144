#pragma once

#include <stdexcept>
#include <string>

namespace bursty {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructor or operation received an argument outside its documented range.
class InvalidParam : public Error {
 public:
  using Error::Error;
};

// A Poisson expectation could not certify its truncation tail
// (unknown growth class, or the tail bound never dropped below tolerance).
class NonConvergent : public Error {
 public:
  using Error::Error;
};

// The forward-difference series showed sustained term growth; the caller
// should fall back to the projection route.
class Unstable : public Error {
 public:
  using Error::Error;
};

// Combinatorial weights left the exactly representable integer range.
class Overflow : public Error {
 public:
  using Error::Error;
};

// Rate function has no real-argument extension (tabulated data).
class NotDifferentiable : public Error {
 public:
  using Error::Error;
};

// Drift matrix has an eigenvalue with nonnegative real part.
class NotHurwitz : public Error {
 public:
  using Error::Error;
};

// Truncated state space leaves too much probability mass outside the grid.
class GridTooSmall : public Error {
 public:
  using Error::Error;
};

// Linear solve failed to reach the required residual.
class NonConverged : public Error {
 public:
  using Error::Error;
};

// Variance bound is zero; the correlation bound is undefined.
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

// Operation requires a specific rate-function kind.
class WrongRateKind : public Error {
 public:
  using Error::Error;
};

}  // namespace bursty
