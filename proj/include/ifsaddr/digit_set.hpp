#pragma once

#include <initializer_list>
#include <vector>

namespace ifsaddr {

/// Real digits a_1 < ... < a_m (m >= 2) for expansions sum eps_n lambda^n.
class DigitSet {
 public:
  /// Throws UnsortedDigits when not strictly increasing, InvalidArgument
  /// when fewer than two digits are given.
  explicit DigitSet(std::vector<double> digits);
  DigitSet(std::initializer_list<double> digits) : DigitSet(std::vector<double>(digits)) {}

  std::size_t size() const { return digits_.size(); }
  double operator[](std::size_t i) const { return digits_[i]; }
  double front() const { return digits_.front(); }
  double back() const { return digits_.back(); }
  const std::vector<double>& digits() const { return digits_; }
  double max_gap() const;

 private:
  std::vector<double> digits_;
};

}  // namespace ifsaddr
