#include "bursty/rate_function.hpp"

#include <cmath>
#include <sstream>

namespace bursty {

RateFunction RateFunction::constant(double value) {
  if (!(value >= 0.0)) throw InvalidParam("RateFunction::constant: value must be nonnegative");
  RateFunction f;
  f.kind_ = Kind::Constant;
  f.c0_ = value;
  f.growth_ = GrowthClass::bounded(std::max(value, 1e-300));
  return f;
}

RateFunction RateFunction::linear(double slope) {
  if (!(slope >= 0.0)) throw InvalidParam("RateFunction::linear: slope must be nonnegative");
  RateFunction f;
  f.kind_ = Kind::Linear;
  f.c0_ = slope;
  f.growth_ = GrowthClass::polynomial(1, std::max(slope, 1e-300));
  return f;
}

RateFunction RateFunction::hill(double steepness, double a_half) {
  if (!(steepness > 0.0)) throw InvalidParam("RateFunction::hill: steepness must be positive");
  if (!(a_half > 0.0)) throw InvalidParam("RateFunction::hill: threshold must be positive");
  RateFunction f;
  f.kind_ = Kind::Hill;
  f.hill_n_ = steepness;
  f.hill_a0_ = a_half;
  f.growth_ = GrowthClass::bounded(1.0);
  return f;
}

RateFunction RateFunction::tabulated(std::vector<double> values, double tail_value) {
  if (values.empty()) throw InvalidParam("RateFunction::tabulated: empty table");
  double mag = std::fabs(tail_value);
  for (double v : values) {
    if (!(v >= 0.0)) throw InvalidParam("RateFunction::tabulated: negative table entry");
    mag = std::max(mag, std::fabs(v));
  }
  if (!(tail_value >= 0.0)) throw InvalidParam("RateFunction::tabulated: negative tail value");
  RateFunction f;
  f.kind_ = Kind::Tabulated;
  f.table_ = std::move(values);
  f.tail_ = tail_value;
  f.growth_ = GrowthClass::bounded(std::max(mag, 1e-300));
  return f;
}

double RateFunction::operator()(std::int64_t a) const {
  switch (kind_) {
    case Kind::Constant:
      return c0_;
    case Kind::Linear:
      return c0_ * static_cast<double>(a);
    case Kind::Hill:
      return real_value(static_cast<double>(a));
    case Kind::Tabulated:
      return a < static_cast<std::int64_t>(table_.size()) ? table_[static_cast<size_t>(a)]
                                                          : tail_;
  }
  return 0.0;
}

double RateFunction::real_value(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return c0_;
    case Kind::Linear:
      return c0_ * x;
    case Kind::Hill: {
      if (x <= 0.0) return 0.0;
      const double u = std::pow(x / hill_a0_, hill_n_);
      if (std::isinf(u)) return 1.0;
      return u / (1.0 + u);
    }
    case Kind::Tabulated:
      throw NotDifferentiable("RateFunction: tabulated data has no real extension");
  }
  return 0.0;
}

double RateFunction::real_derivative(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Linear:
      return c0_;
    case Kind::Hill: {
      if (x <= 0.0) return 0.0;
      const double u = std::pow(x / hill_a0_, hill_n_);
      if (std::isinf(u)) return 0.0;
      const double denom = (1.0 + u) * (1.0 + u);
      return hill_n_ * u / (x * denom);
    }
    case Kind::Tabulated:
      throw NotDifferentiable("RateFunction: tabulated data has no derivative");
  }
  return 0.0;
}

double RateFunction::constant_value() const {
  if (kind_ != Kind::Constant) throw WrongRateKind("RateFunction: not a constant rate");
  return c0_;
}

double RateFunction::slope() const {
  if (kind_ != Kind::Linear) throw WrongRateKind("RateFunction: not a linear rate");
  return c0_;
}

double RateFunction::hill_steepness() const {
  if (kind_ != Kind::Hill) throw WrongRateKind("RateFunction: not a Hill rate");
  return hill_n_;
}

double RateFunction::hill_threshold() const {
  if (kind_ != Kind::Hill) throw WrongRateKind("RateFunction: not a Hill rate");
  return hill_a0_;
}

std::string RateFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << c0_ << ")";
      break;
    case Kind::Linear:
      os << "linear(" << c0_ << ")";
      break;
    case Kind::Hill:
      os << "hill(n=" << hill_n_ << ", a0=" << hill_a0_ << ")";
      break;
    case Kind::Tabulated:
      os << "tabulated(" << table_.size() << " values, tail=" << tail_ << ")";
      break;
  }
  return os.str();
}

}  // namespace bursty
