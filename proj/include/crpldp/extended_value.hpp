#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crpldp {

// Real number extended with +/-inf. Total order, guarded arithmetic:
// (+inf) + (-inf) is a program error, never silently produced.
class ExtValue {
 public:
  constexpr ExtValue() : v_(0.0) {}
  ExtValue(double v) : v_(v) {
    if (std::isnan(v)) throw std::logic_error("ExtValue: NaN is not a value");
  }

  static ExtValue pos_inf() { return ExtValue(std::numeric_limits<double>::infinity()); }
  static ExtValue neg_inf() { return ExtValue(-std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0.0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0.0; }

  double finite() const {
    if (!is_finite()) throw std::logic_error("ExtValue: expected a finite value");
    return v_;
  }

  friend ExtValue operator+(ExtValue a, ExtValue b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw std::logic_error("ExtValue: (+inf) + (-inf)");
    return ExtValue(a.v_ + b.v_);
  }
  friend ExtValue operator-(ExtValue a, ExtValue b) { return a + ExtValue(-b.v_); }
  ExtValue operator-() const { return ExtValue(-v_); }

  // Scaling by a positive constant; 0 * inf is rejected.
  friend ExtValue operator*(double c, ExtValue a) {
    if (c == 0.0 && !a.is_finite()) throw std::logic_error("ExtValue: 0 * inf");
    if (c == 0.0) return ExtValue(0.0);
    return ExtValue(c * a.v_);
  }

  friend bool operator==(ExtValue a, ExtValue b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtValue a, ExtValue b) { return a.v_ != b.v_; }
  friend bool operator<(ExtValue a, ExtValue b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtValue a, ExtValue b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtValue a, ExtValue b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtValue a, ExtValue b) { return a.v_ >= b.v_; }

 private:
  double v_;
};

inline ExtValue ext_max(ExtValue a, ExtValue b) { return a >= b ? a : b; }
inline ExtValue ext_min(ExtValue a, ExtValue b) { return a <= b ? a : b; }

}  // namespace crpldp
