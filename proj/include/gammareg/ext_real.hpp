#pragma once

#include <cmath>
#include <limits>

#include "gammareg/errors.hpp"

namespace gammareg {

/// A value in (-inf, +inf]: either a finite real or +infinity.
/// -inf and NaN are rejected at construction. Addition saturates at +inf,
/// comparison is the usual total order with +inf greatest.
class ExtReal {
public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      throw EvalError("value outside (-inf, inf]");
  }

  static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

  bool is_inf() const { return std::isinf(v_); }
  bool finite() const { return !std::isinf(v_); }

  /// Underlying double; +inf when is_inf().
  double value() const { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return infinity();
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) {
    if (a.is_inf() && b.is_inf()) throw EvalError("inf - inf is undefined");
    if (b.is_inf()) throw EvalError("result would be -inf");
    if (a.is_inf()) return infinity();
    return ExtReal(a.v_ - b.v_);
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

private:
  double v_;
};

inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }
inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }

}  // namespace gammareg
