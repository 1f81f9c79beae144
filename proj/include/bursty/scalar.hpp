#pragma once

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace bursty {

// Quadruple-precision scalar. Moment sums over the Poisson weight cancel by
// many orders of magnitude (orthogonality sums have summands ~1e10 that add
// to ~0), so the accumulation scalar is a template parameter throughout the
// numerics layer and the sensitive paths instantiate it with quad.
using quad = __float128;

namespace fp {

inline double exp(double x) { return std::exp(x); }
inline long double exp(long double x) { return std::exp(x); }
inline quad exp(quad x) { return ::expq(x); }

inline double log(double x) { return std::log(x); }
inline long double log(long double x) { return std::log(x); }
inline quad log(quad x) { return ::logq(x); }

inline double abs(double x) { return std::fabs(x); }
inline long double abs(long double x) { return std::fabs(x); }
inline quad abs(quad x) { return ::fabsq(x); }

inline double sqrt(double x) { return std::sqrt(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline quad sqrt(quad x) { return ::sqrtq(x); }

inline double pow(double x, double y) { return std::pow(x, y); }
inline long double pow(long double x, long double y) { return std::pow(x, y); }
inline quad pow(quad x, quad y) { return ::powq(x, y); }

template <class Scalar>
constexpr Scalar epsilon() {
  return std::numeric_limits<Scalar>::epsilon();
}
template <>
constexpr quad epsilon<quad>() {
  return FLT128_EPSILON;
}

}  // namespace fp
}  // namespace bursty
