#include "ifsaddr/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ifsaddr/error.hpp"
#include "ifsaddr/random.hpp"

namespace ifsaddr {

int default_truncation(double lambda) { return static_cast<int>(std::ceil(std::log(1e-9) / std::log(lambda))); }

namespace {

void check_probs(const std::vector<double>& probs, std::size_t m) {
  if (probs.size() != m)
    throw Error(ErrorCode::BadProbabilityVector, "expected " + std::to_string(m) + " probabilities");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(ErrorCode::BadProbabilityVector, "probabilities must be non-negative");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw Error(ErrorCode::BadProbabilityVector, "probabilities must sum to 1");
}

// Inverse-CDF digit draw that never returns a zero-probability digit.
class DigitDraw {
 public:
  explicit DigitDraw(const std::vector<double>& probs) : cum_(probs.size()) {
    std::partial_sum(probs.begin(), probs.end(), cum_.begin());
    for (std::size_t j = 0; j < probs.size(); ++j)
      if (probs[j] > 0.0) last_ = static_cast<Digit>(j);
    for (std::size_t j = 0; j < probs.size(); ++j) positive_.push_back(probs[j] > 0.0);
  }

  Digit operator()(SplitMix64& rng) const {
    const double u = rng.uniform() * cum_.back();
    for (std::size_t j = 0; j < cum_.size(); ++j)
      if (positive_[j] && u < cum_[j]) return static_cast<Digit>(j);
    return last_;
  }

 private:
  std::vector<double> cum_;
  std::vector<bool> positive_;
  Digit last_ = 0;
};

}  // namespace

MeasureSampler MeasureSampler::make(IfsSystem sys, std::vector<double> probs, std::uint64_t seed, int trunc) {
  check_probs(probs, sys.num_maps());
  const int t = trunc > 0 ? trunc : default_truncation(sys.lambda());
  return MeasureSampler{std::move(sys), std::move(probs), seed, t};
}

MeasureSampler MeasureSampler::uniform(IfsSystem sys, std::uint64_t seed, int trunc) {
  const std::size_t m = sys.num_maps();
  return make(std::move(sys), std::vector<double>(m, 1.0 / static_cast<double>(m)), seed, trunc);
}

double MeasureSampler::truncation_error() const { return std::pow(sys.lambda(), trunc) * sys.diameter(); }

std::vector<MeasureSample> sample_natural_measure(const MeasureSampler& s, std::size_t n, Execution exec) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  check_probs(s.probs, s.sys.num_maps());
  const DigitDraw draw(s.probs);
  const Point start = s.sys.omega().centroid();
  std::vector<MeasureSample> out(n);
  for_each_index(n, exec, [&](std::size_t i) {
    auto rng = SplitMix64::stream(s.seed, i);
    std::vector<Digit> digits(static_cast<std::size_t>(s.trunc));
    for (auto& d : digits) d = draw(rng);
    out[i].prefix = AddressPrefix(std::move(digits));
    out[i].point = s.sys.project_prefix(out[i].prefix, start);
  });
  return out;
}

Estimate mu_bifurcation_fraction(const MeasureSampler& s, std::size_t n, int depth, bool no_holes_certified,
                                 Execution exec) {
  if (!no_holes_certified)
    throw Error(ErrorCode::MissingCertificate, "bifurcation fraction needs a no-holes certificate");
  const auto samples = sample_natural_measure(s, n, exec);
  std::vector<unsigned char> hit(n, 0);
  SearchOptions opts;
  opts.mode = FeasibilityMode::ExactNoHoles;
  opts.no_holes_certified = true;
  opts.exec = Execution::Serial;
  for_each_index(n, exec, [&](std::size_t i) {
    const auto r = classify_point(s.sys, samples[i].point, depth, opts);
    hit[i] = r.verdict == Verdict::MultipleCertified ? 1 : 0;
  });
  return make_estimate(static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)), n);
}

MeshGrid mesh_grid(const std::vector<Point>& points, double epsilon, Execution exec) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  std::vector<std::vector<std::int64_t>> cells(points.size());
  for_each_index(points.size(), exec, [&](std::size_t i) {
    cells[i].resize(points[i].size());
    for (std::size_t c = 0; c < points[i].size(); ++c)
      cells[i][c] = static_cast<std::int64_t>(std::floor(points[i][c] / epsilon));
  });
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return MeshGrid{epsilon, std::move(cells)};
}

std::size_t mesh_count(const std::vector<Point>& points, double epsilon, Execution exec) {
  return mesh_grid(points, epsilon, exec).occupied.size();
}

BoxDimResult fit_box_dim(std::vector<BoxDimRow> table) {
  if (table.size() < 3) throw Error(ErrorCode::TooFewScales, "box dimension needs at least three scales");
  for (std::size_t i = 1; i < table.size(); ++i)
    if (!(table[i].epsilon < table[i - 1].epsilon))
      throw Error(ErrorCode::InvalidArgument, "scales must be strictly decreasing");
  const double n = static_cast<double>(table.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (const auto& row : table) {
    const double x = -std::log(row.epsilon);
    const double y = std::log(static_cast<double>(std::max<std::size_t>(row.count, 1)));
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  BoxDimResult r;
  r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - r.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + r.slope * xs[i]);
    ss += e * e;
  }
  r.fit_residual = std::sqrt(ss / n);
  r.table = std::move(table);
  return r;
}

BoxDimResult box_dim_estimate(const std::vector<Point>& points, const std::vector<double>& eps_list, Execution exec) {
  if (eps_list.size() < 3) throw Error(ErrorCode::TooFewScales, "box dimension needs at least three scales");
  std::vector<BoxDimRow> table;
  for (double eps : eps_list) table.push_back({eps, 0});
  fit_box_dim(table);  // validates the scales before counting
  for (auto& row : table) row.count = mesh_count(points, row.epsilon, exec);
  return fit_box_dim(std::move(table));
}

bool single_chain(const IfsSystem& sys, std::span<const double> x, int depth, double tol) {
  const std::size_t d = sys.dim();
  const auto m = static_cast<Digit>(sys.num_maps());
  std::vector<double> cur(x.begin(), x.end()), cand(d), next(d);
  for (int n = 0; n < depth; ++n) {
    int feasible = 0;
    for (Digit j = 0; j < m && feasible < 2; ++j) {
      sys.inverse_into(j, cur.data(), cand.data());
      if (sys.omega().contains(cand, Membership::closed(), tol)) {
        ++feasible;
        next = cand;
      }
    }
    if (feasible != 1) return false;
    std::swap(cur, next);
  }
  return true;
}

namespace {

// Walks the lattice of the bounding box, calling keep(index, x) for every
// lattice point of Omega that is not a vertex.
class OmegaLattice {
 public:
  OmegaLattice(const IfsSystem& sys, int resolution, double tol)
      : sys_(sys), box_(sys.omega().bounds()), resolution_(resolution), tol_(tol) {
    if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
    side_ = static_cast<std::size_t>(resolution) + 1;
    total_ = 1;
    for (std::size_t c = 0; c < sys.dim(); ++c) total_ *= side_;
  }

  std::size_t size() const { return total_; }

  Point point(std::size_t idx) const {
    Point x(sys_.dim());
    for (std::size_t c = 0; c < x.size(); ++c) {
      const auto i = static_cast<double>(idx % side_);
      idx /= side_;
      x[c] = box_.lo[c] + (box_.hi[c] - box_.lo[c]) * i / resolution_;
    }
    return x;
  }

  bool admissible(const Point& x) const {
    if (!sys_.omega().contains(x, Membership::closed(), tol_)) return false;
    for (const auto& p : sys_.points())
      if (distance(x, p) <= 1e-12) return false;
    return true;
  }

  std::vector<Point> collect(const std::vector<unsigned char>& keep) const {
    std::vector<Point> out;
    for (std::size_t idx = 0; idx < total_; ++idx)
      if (keep[idx]) out.push_back(point(idx));
    return out;
  }

 private:
  const IfsSystem& sys_;
  BoundingBox box_;
  int resolution_;
  double tol_;
  std::size_t side_ = 0;
  std::size_t total_ = 0;
};

}  // namespace

std::vector<Point> omega_lattice(const IfsSystem& sys, int resolution, double tol) {
  const OmegaLattice lattice(sys, resolution, tol);
  std::vector<unsigned char> keep(lattice.size(), 0);
  for (std::size_t idx = 0; idx < lattice.size(); ++idx) keep[idx] = lattice.admissible(lattice.point(idx)) ? 1 : 0;
  return lattice.collect(keep);
}

std::vector<Point> uniqueness_grid(const IfsSystem& sys, int resolution, int depth, Execution exec, double tol) {
  if (resolution < 8) throw Error(ErrorCode::InvalidArgument, "resolution must be at least 8");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be non-negative");
  const OmegaLattice lattice(sys, resolution, tol);
  std::vector<unsigned char> marked(lattice.size(), 0);
  for_each_index(lattice.size(), exec, [&](std::size_t idx) {
    const Point x = lattice.point(idx);
    if (lattice.admissible(x) && single_chain(sys, x, depth, tol)) marked[idx] = 1;
  });
  return lattice.collect(marked);
}

BoxDimResult box_dim_uniqueness(const IfsSystem& sys, const std::vector<double>& eps_list, int depth,
                                double oversample, Execution exec) {
  std::vector<BoxDimRow> table;
  for (double eps : eps_list) table.push_back({eps, 0});
  fit_box_dim(table);
  if (!(oversample > 0.0)) throw Error(ErrorCode::InvalidArgument, "oversample must be positive");
  const auto box = sys.omega().bounds();
  double extent = 0.0;
  for (std::size_t c = 0; c < sys.dim(); ++c) extent = std::max(extent, box.hi[c] - box.lo[c]);
  for (auto& row : table) {
    const double scale_depth = std::ceil(std::log(row.epsilon / sys.diameter()) / std::log(sys.lambda())) + 2.0;
    const int chain_depth = std::min(depth, static_cast<int>(std::max(scale_depth, 1.0)));
    const int resolution = std::max(8, static_cast<int>(std::ceil(oversample * extent / row.epsilon)));
    const auto grid = uniqueness_grid(sys, resolution, chain_depth, exec);
    row.count = mesh_count(grid, row.epsilon, exec);
  }
  return fit_box_dim(std::move(table));
}

std::vector<Point> chaos_game(const IfsSystem& sys, std::size_t iters, std::size_t burn_in, std::uint64_t seed,
                              const std::vector<double>& probs) {
  if (burn_in >= iters) throw Error(ErrorCode::InvalidArgument, "iters must exceed burn_in");
  std::vector<double> p = probs;
  if (p.empty()) p.assign(sys.num_maps(), 1.0 / static_cast<double>(sys.num_maps()));
  check_probs(p, sys.num_maps());
  const DigitDraw draw(p);
  SplitMix64 rng(seed);
  Point x = sys.omega().centroid();
  std::vector<Point> out;
  out.reserve(iters - burn_in);
  for (std::size_t t = 0; t < iters; ++t) {
    x = sys.apply_map(draw(rng), x);
    if (t >= burn_in) out.push_back(x);
  }
  return out;
}

}  // namespace ifsaddr
