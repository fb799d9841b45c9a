#include "ifsaddr/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "ifsaddr/error.hpp"

namespace ifsaddr {

AddressPrefix AddressPrefix::extended(Digit d, std::size_t n) const {
  AddressPrefix w = *this;
  w.digits_.insert(w.digits_.end(), n, d);
  return w;
}

std::string AddressPrefix::str() const {
  const bool compact = std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d < 10; });
  std::string s;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (!compact && i > 0) s.push_back('.');
    s += std::to_string(digits_[i]);
  }
  return s;
}

namespace {

// Rank of the rows (p_j - p_0) by Gaussian elimination.
std::size_t affine_rank(const std::vector<Point>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<Point> rows;
  double scale = 0.0;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    Point r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = pts[j][i] - pts[0][i];
    scale = std::max(scale, max_abs(r));
    rows.push_back(std::move(r));
  }
  const double eps = 1e-10 * std::max(scale, 1e-300);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::fabs(rows[r][col]) > std::fabs(rows[pivot][col])) pivot = r;
    if (std::fabs(rows[pivot][col]) <= eps) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < d; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::size_t affine_rank(const std::vector<RationalPoint>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<RationalPoint> rows;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    RationalPoint r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = pts[j][i] - pts[0][i];
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (sgn(rows[r][col]) != 0) { pivot = r; break; }
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < d; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

template <class P>
void check_shape(const std::vector<P>& pts) {
  if (pts.size() < 2) throw Error(ErrorCode::InvalidArgument, "an IFS needs at least two maps");
  const std::size_t d = pts.front().size();
  if (d == 0) throw Error(ErrorCode::DimensionMismatch, "points must have at least one coordinate");
  for (const auto& p : pts)
    if (p.size() != d) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j])
        throw Error(ErrorCode::DuplicatePoints,
                    "p_" + std::to_string(i) + " equals p_" + std::to_string(j));
  if (affine_rank(pts) != d)
    throw Error(ErrorCode::DegenerateAffineHull, "affine hull of the points has dimension below " +
                                                     std::to_string(d));
}

}  // namespace

IfsSystem::IfsSystem(double lambda, std::vector<Point> points)
    : lambda_(lambda), points_(std::move(points)) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0,1), got " + std::to_string(lambda));
  check_shape(points_);

  auto exact = std::make_shared<Exact>();
  bool rational = false;
  if (auto q = decimal_rational(lambda)) {
    exact->lambda = *q;
    rational = true;
    for (const auto& p : points_) {
      RationalPoint rp;
      for (double v : p) {
        auto c = decimal_rational(v);
        if (!c) { rational = false; break; }
        rp.push_back(*c);
      }
      if (!rational) break;
      exact->points.push_back(std::move(rp));
    }
  }
  if (rational) {
    exact->inv_lambda = 1 / exact->lambda;
    exact_ = std::move(exact);
  }
  validate_and_build();
}

IfsSystem::IfsSystem(const Rational& lambda, std::vector<RationalPoint> points) {
  if (!(sgn(lambda) > 0 && lambda < 1))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0,1), got " + lambda.get_str());
  check_shape(points);
  auto exact = std::make_shared<Exact>();
  exact->lambda = lambda;
  exact->inv_lambda = 1 / lambda;
  exact->points = std::move(points);
  lambda_ = lambda.get_d();
  for (const auto& p : exact->points) points_.push_back(to_doubles(p));
  exact_ = std::move(exact);
  validate_and_build();
}

void IfsSystem::validate_and_build() {
  dim_ = points_.front().size();
  if (exact_) {
    if (affine_rank(exact_->points) != dim_)
      throw Error(ErrorCode::DegenerateAffineHull, "exact points are affinely degenerate");
    auto exact = std::make_shared<Exact>(*exact_);
    const Rational factor = (1 - exact->lambda) / exact->lambda;
    for (const auto& p : exact->points) {
      RationalPoint c(dim_);
      for (std::size_t i = 0; i < dim_; ++i) c[i] = factor * p[i];
      exact->inverse_offsets.push_back(std::move(c));
    }
    omega_ = std::make_shared<Polytope>(exact->points);
    exact_ = std::move(exact);
  } else {
    omega_ = std::make_shared<Polytope>(points_);
  }
  inv_lambda_ = 1.0 / lambda_;
  const double factor = (1.0 - lambda_) / lambda_;
  inverse_offsets_.clear();
  for (const auto& p : points_)
    for (double v : p) inverse_offsets_.push_back(factor * v);
}

void IfsSystem::check_digit(Digit j) const {
  if (j >= num_maps())
    throw Error(ErrorCode::DigitOutOfRange,
                "digit " + std::to_string(j) + " outside alphabet of size " + std::to_string(num_maps()));
}

Point IfsSystem::apply_map(Digit j, std::span<const double> x) const {
  check_digit(j);
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  Point y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) y[i] = lambda_ * x[i] + (1.0 - lambda_) * points_[j][i];
  return y;
}

Point IfsSystem::apply_inverse(Digit j, std::span<const double> x) const {
  check_digit(j);
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  Point y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) y[i] = (x[i] - (1.0 - lambda_) * points_[j][i]) / lambda_;
  return y;
}

Point IfsSystem::project_prefix(const AddressPrefix& w, std::span<const double> x0) const {
  if (x0.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (Digit j : w) check_digit(j);
  Point y(x0.begin(), x0.end());
  for (std::size_t k = w.size(); k-- > 0;) y = apply_map(w[k], y);
  return y;
}

const Rational& IfsSystem::exact_lambda() const {
  if (!exact_) throw Error(ErrorCode::IrrationalInput, "system has no exact rational form");
  return exact_->lambda;
}

const std::vector<RationalPoint>& IfsSystem::exact_points() const {
  if (!exact_) throw Error(ErrorCode::IrrationalInput, "system has no exact rational form");
  return exact_->points;
}

const IfsSystem::Exact& IfsSystem::exact_data() const {
  if (!exact_) throw Error(ErrorCode::IrrationalInput, "system has no exact rational form");
  return *exact_;
}

RationalPoint IfsSystem::apply_map(Digit j, std::span<const Rational> x) const {
  check_digit(j);
  const Exact& e = exact_data();
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  RationalPoint y(dim_);
  const Rational one_minus = 1 - e.lambda;
  for (std::size_t i = 0; i < dim_; ++i) y[i] = e.lambda * x[i] + one_minus * e.points[j][i];
  return y;
}

RationalPoint IfsSystem::apply_inverse(Digit j, std::span<const Rational> x) const {
  check_digit(j);
  exact_data();
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  RationalPoint y(dim_);
  inverse_into(j, x, y);
  return y;
}

void IfsSystem::inverse_into(Digit j, std::span<const Rational> x, std::span<Rational> out) const {
  const Exact& e = *exact_;
  const auto& c = e.inverse_offsets[j];
  for (std::size_t i = 0; i < dim_; ++i) out[i] = x[i] * e.inv_lambda - c[i];
}

RationalPoint IfsSystem::project_prefix(const AddressPrefix& w, std::span<const Rational> x0) const {
  exact_data();
  if (x0.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (Digit j : w) check_digit(j);
  RationalPoint y(x0.begin(), x0.end());
  for (std::size_t k = w.size(); k-- > 0;) y = apply_map(w[k], y);
  return y;
}

IfsSystem IfsSystem::with_lambda(double lambda) const {
  if (exact_) {
    if (auto q = decimal_rational(lambda)) return IfsSystem(*q, exact_->points);
  }
  return IfsSystem(lambda, points_);
}

Polytope image_polytope(const IfsSystem& sys, const AddressPrefix& w) {
  for (Digit j : w) sys.check_digit(j);
  if (sys.has_exact()) {
    std::vector<RationalPoint> gens;
    for (const auto& p : sys.exact_points()) gens.push_back(sys.project_prefix(w, p));
    return Polytope(std::move(gens));
  }
  std::vector<Point> gens;
  for (const auto& p : sys.points()) gens.push_back(sys.project_prefix(w, p));
  return Polytope(std::move(gens));
}

}  // namespace ifsaddr
