#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bursty/errors.hpp"
#include "bursty/scalar.hpp"

namespace bursty {

// Declared growth envelope of a function on the nonnegative integers:
// |f(a)| <= scale * (1+a)^degree. Unknown admits no tail bound and makes
// Poisson expectations refuse to run.
struct GrowthClass {
  enum class Kind { Bounded, Polynomial, Unknown };

  Kind kind = Kind::Unknown;
  double scale = 1.0;
  int degree = 0;

  static GrowthClass bounded(double magnitude) {
    return {Kind::Bounded, magnitude, 0};
  }
  static GrowthClass polynomial(int degree, double scale) {
    return {Kind::Polynomial, scale, degree};
  }
  static GrowthClass unknown() { return {Kind::Unknown, 0.0, 0}; }

  bool is_unknown() const { return kind == Kind::Unknown; }

  // Envelope of a pointwise product.
  GrowthClass operator*(const GrowthClass& other) const {
    if (is_unknown() || other.is_unknown()) return unknown();
    GrowthClass out;
    out.kind = (degree + other.degree == 0) ? Kind::Bounded : Kind::Polynomial;
    out.scale = scale * other.scale;
    out.degree = degree + other.degree;
    return out;
  }

  double log_envelope(double a) const {
    return std::log(scale) + degree * std::log1p(a);
  }
};

// Nonnegative rate function R on the nonnegative integers. Four concrete
// families; Constant/Linear/Hill extend to real arguments (used by the
// linear-noise construction), Tabulated does not.
class RateFunction {
 public:
  enum class Kind { Constant, Linear, Hill, Tabulated };

  static RateFunction constant(double value);
  static RateFunction linear(double slope);
  // R(a) = (a/a_half)^steepness / (1 + (a/a_half)^steepness), bounded by 1.
  static RateFunction hill(double steepness, double a_half);
  // Values on 0..values.size()-1, constant tail_value beyond the table.
  static RateFunction tabulated(std::vector<double> values, double tail_value);

  Kind kind() const { return kind_; }
  GrowthClass growth() const { return growth_; }

  double operator()(std::int64_t a) const;

  // Evaluation in an arbitrary scalar (quad for high-precision projections).
  template <class Scalar>
  Scalar value(std::int64_t a) const;

  bool differentiable() const { return kind_ != Kind::Tabulated; }
  // Real-argument extension and its derivative; throws NotDifferentiable
  // for tabulated data.
  double real_value(double x) const;
  double real_derivative(double x) const;

  double constant_value() const;
  double slope() const;
  double hill_steepness() const;
  double hill_threshold() const;

  std::string describe() const;

 private:
  RateFunction() = default;

  Kind kind_ = Kind::Constant;
  GrowthClass growth_;
  double c0_ = 0.0;  // constant value or linear slope
  double hill_n_ = 0.0;
  double hill_a0_ = 0.0;
  std::vector<double> table_;
  double tail_ = 0.0;
};

template <class Scalar>
Scalar RateFunction::value(std::int64_t a) const {
  switch (kind_) {
    case Kind::Constant:
      return static_cast<Scalar>(c0_);
    case Kind::Linear:
      return static_cast<Scalar>(c0_) * static_cast<Scalar>(a);
    case Kind::Hill: {
      if (a == 0) return Scalar(0);
      const Scalar u = fp::pow(static_cast<Scalar>(a) / static_cast<Scalar>(hill_a0_),
                               static_cast<Scalar>(hill_n_));
      return u / (Scalar(1) + u);
    }
    case Kind::Tabulated:
      return static_cast<Scalar>((*this)(a));
  }
  return Scalar(0);
}

}  // namespace bursty
