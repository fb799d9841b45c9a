#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ifsaddr/point.hpp"
#include "ifsaddr/polytope.hpp"
#include "ifsaddr/rational.hpp"

namespace ifsaddr {

using Digit = std::uint32_t;

/// A finite word (i_1, ..., i_n) over the map alphabet {0, ..., m-1}.
class AddressPrefix {
 public:
  AddressPrefix() = default;
  AddressPrefix(std::initializer_list<Digit> digits) : digits_(digits) {}
  explicit AddressPrefix(std::vector<Digit> digits) : digits_(std::move(digits)) {}

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  void push_back(Digit d) { digits_.push_back(d); }
  const std::vector<Digit>& digits() const { return digits_; }
  auto begin() const { return digits_.begin(); }
  auto end() const { return digits_.end(); }

  /// `w` followed by `n` copies of `d`.
  AddressPrefix extended(Digit d, std::size_t n = 1) const;
  /// Digits as a string without separators when m <= 10, else '.'-separated.
  std::string str() const;

  friend bool operator==(const AddressPrefix&, const AddressPrefix&) = default;
  friend auto operator<=>(const AddressPrefix&, const AddressPrefix&) = default;

 private:
  std::vector<Digit> digits_;
};

/// f_j(x) = lambda x + (1 - lambda) p_j, j = 0..m-1, with Omega = conv(p_j).
///
/// Holds an exact rational twin of lambda and the p_j whenever they are
/// rational (given exactly, or short decimals such as 0.7); the exact twin
/// backs every uniqueness certificate.
class IfsSystem {
 public:
  /// Throws LambdaOutOfRange, DuplicatePoints, DegenerateAffineHull,
  /// DimensionMismatch.
  IfsSystem(double lambda, std::vector<Point> points);
  IfsSystem(const Rational& lambda, std::vector<RationalPoint> points);

  double lambda() const { return lambda_; }
  std::size_t num_maps() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const Polytope& omega() const { return *omega_; }
  double diameter() const { return omega_->diameter(); }

  void check_digit(Digit j) const;

  Point apply_map(Digit j, std::span<const double> x) const;
  Point apply_inverse(Digit j, std::span<const double> x) const;
  /// Unchecked inverse into a caller buffer; the hot path of the engine.
  void inverse_into(Digit j, const double* x, double* out) const {
    const double* c = inverse_offsets_.data() + j * dim_;
    for (std::size_t i = 0; i < dim_; ++i) out[i] = x[i] * inv_lambda_ - c[i];
  }

  /// f_{i_1} o ... o f_{i_n}(x0), innermost digit applied first.
  Point project_prefix(const AddressPrefix& w, std::span<const double> x0) const;

  bool has_exact() const { return exact_ != nullptr; }
  const Rational& exact_lambda() const;
  const std::vector<RationalPoint>& exact_points() const;
  RationalPoint apply_map(Digit j, std::span<const Rational> x) const;
  RationalPoint apply_inverse(Digit j, std::span<const Rational> x) const;
  void inverse_into(Digit j, std::span<const Rational> x, std::span<Rational> out) const;
  RationalPoint project_prefix(const AddressPrefix& w, std::span<const Rational> x0) const;

  /// Same maps with another contraction ratio.
  IfsSystem with_lambda(double lambda) const;

 private:
  struct Exact {
    Rational lambda;
    Rational inv_lambda;
    std::vector<RationalPoint> points;
    std::vector<RationalPoint> inverse_offsets;  // (1 - lambda) / lambda * p_j
  };

  void validate_and_build();
  const Exact& exact_data() const;

  double lambda_ = 0.0;
  double inv_lambda_ = 0.0;
  std::size_t dim_ = 0;
  std::vector<Point> points_;
  std::vector<double> inverse_offsets_;  // row-major m x d
  std::shared_ptr<const Polytope> omega_;
  std::shared_ptr<const Exact> exact_;
};

/// Polytope spanned by f_w(p_0), ..., f_w(p_{m-1}); exact when the system is.
Polytope image_polytope(const IfsSystem& sys, const AddressPrefix& w);

}  // namespace ifsaddr
