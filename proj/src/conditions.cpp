#include "ifsaddr/conditions.hpp"

#include <cmath>
#include <functional>

#include "ifsaddr/engine.hpp"
#include "ifsaddr/error.hpp"

namespace ifsaddr {

ThresholdCheck osc_failure_sufficient(const IfsSystem& sys) {
  const double t = std::pow(static_cast<double>(sys.num_maps()), -1.0 / static_cast<double>(sys.dim()));
  return {sys.lambda() > t, t};
}

ThresholdCheck no_holes_sufficient(const IfsSystem& sys) {
  const double d = static_cast<double>(sys.dim());
  const double t = d / (d + 1.0);
  if (sys.has_exact()) {
    const Rational exact_t(static_cast<long>(sys.dim()), static_cast<long>(sys.dim() + 1));
    return {sys.exact_lambda() >= exact_t, t};
  }
  return {sys.lambda() >= t, t};
}

Estimate make_estimate(std::size_t hits, std::size_t samples) {
  Estimate e;
  e.samples = samples;
  if (samples == 0) return e;
  e.fraction = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.fraction * (1.0 - e.fraction) / static_cast<double>(samples));
  return e;
}

Point uniform_in_omega(const IfsSystem& sys, SplitMix64& rng) {
  const auto box = sys.omega().bounds();
  Point x(sys.dim());
  for (;;) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * rng.uniform();
    if (sys.omega().contains(x, Membership::closed(), 0.0)) return x;
  }
}

namespace {

std::size_t count_hits(std::size_t samples, Execution exec, const std::function<bool(std::size_t)>& hit) {
  std::vector<unsigned char> flags(samples, 0);
  for_each_index(samples, exec, [&](std::size_t s) { flags[s] = hit(s) ? 1 : 0; });
  std::size_t hits = 0;
  for (auto f : flags) hits += f;
  return hits;
}

}  // namespace

Estimate covering_deficiency(const IfsSystem& sys, int n, std::size_t samples, std::uint64_t seed, Execution exec,
                             double tol) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "covering depth must be at least 1");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const auto hits = count_hits(samples, exec, [&](std::size_t s) {
    auto rng = SplitMix64::stream(seed, s);
    const Point x = uniform_in_omega(sys, rng);
    return !reaches_depth(sys, x, n, tol);
  });
  return make_estimate(hits, samples);
}

namespace {

bool block_fits(const Polytope& target, const Polytope& block, double tol) {
  if (target.has_exact() && block.has_exact()) {
    for (const auto& v : block.exact_generators())
      if (!target.contains(std::span<const Rational>(v))) return false;
  } else {
    for (const auto& v : block.generators())
      if (!target.contains(v, Membership::closed(), tol)) return false;
  }
  return target.contains(block.centroid(), Membership::interior(tol));
}

}  // namespace

std::optional<OverlapWitness> vertex_overlap_witness(const IfsSystem& sys, double tol, int max_ell) {
  const auto m = static_cast<Digit>(sys.num_maps());
  std::vector<Polytope> images;
  for (Digit i = 0; i < m; ++i) images.push_back(image_polytope(sys, AddressPrefix{i}));

  auto interior_vertex = [&](Digit i, Digit k, Digit j) {
    const Point v = sys.apply_map(k, sys.points()[j]);
    return images[i].contains(v, Membership::interior(tol));
  };

  bool any_interior = false;
  for (Digit i = 0; i < m; ++i)
    for (Digit k = 0; k < m; ++k)
      for (Digit j = 0; j < m; ++j)
        if (i != k && interior_vertex(i, k, j)) any_interior = true;

  for (int ell = 1; ell <= max_ell; ++ell) {
    for (Digit i = 0; i < m; ++i) {
      for (Digit k = 0; k < m; ++k) {
        if (i == k) continue;
        for (Digit j = 0; j < m; ++j) {
          OverlapWitness w{i, k, j, ell, false};
          const Polytope block = image_polytope(sys, w.block());
          // The block already lies in f_k(Omega); only f_i(Omega) needs checking.
          if (!block_fits(images[i], block, tol)) continue;
          if (!images[k].contains(block.centroid(), Membership::interior(tol))) continue;
          w.vertex_interior = interior_vertex(i, k, j);
          return w;
        }
      }
    }
  }
  if (any_interior)
    throw Error(ErrorCode::NoEllFound, "no forcing block found up to ell = " + std::to_string(max_ell));
  return std::nullopt;
}

BlockFamily BlockFamily::from_witness(const IfsSystem& sys, const OverlapWitness& w) {
  BlockFamily fam;
  fam.ell = w.ell;
  fam.block0 = w.block();
  fam.L = 1;
  for (int e = 0; e < w.ell; ++e) fam.L *= sys.num_maps();
  return fam;
}

std::optional<int> wn_first_level(const IfsSystem& sys, const BlockFamily& fam, std::span<const double> x, int max_n,
                                  bool no_holes_certified, double tol, std::size_t node_budget) {
  if (!no_holes_certified) throw Error(ErrorCode::MissingCertificate, "W_n membership needs a no-holes certificate");
  if (x.size() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the IFS");
  if (fam.block0.size() != static_cast<std::size_t>(fam.ell) || fam.ell < 1)
    throw Error(ErrorCode::InvalidArgument, "block0 length must equal ell >= 1");
  for (Digit b : fam.block0) sys.check_digit(b);
  const Polytope& omega = sys.omega();
  if (!omega.contains(x, Membership::closed(), tol)) throw Error(ErrorCode::PointOutsideOmega, "point lies outside Omega");

  const std::size_t d = sys.dim();
  const auto m = static_cast<Digit>(sys.num_maps());
  std::vector<double> frontier(x.begin(), x.end());
  std::vector<double> a(d), b(d);

  auto inside = [&](const double* p) { return omega.contains(std::span<const double>(p, d), Membership::closed(), tol); };

  for (int level = 0; level < max_n; ++level) {
    const std::size_t count = frontier.size() / d;
    for (std::size_t s = 0; s < count; ++s) {
      std::copy_n(frontier.data() + s * d, d, a.data());
      for (Digit digit : fam.block0) {
        sys.inverse_into(digit, a.data(), b.data());
        std::swap(a, b);
      }
      if (inside(a.data())) return level + 1;
    }
    if (level + 1 == max_n) break;
    // Next level: every feasible block, pruned digit by digit.
    for (int step = 0; step < fam.ell; ++step) {
      std::vector<double> next;
      const std::size_t n_nodes = frontier.size() / d;
      for (std::size_t s = 0; s < n_nodes; ++s) {
        for (Digit j = 0; j < m; ++j) {
          sys.inverse_into(j, frontier.data() + s * d, b.data());
          if (!inside(b.data())) continue;
          next.insert(next.end(), b.begin(), b.end());
        }
      }
      if (next.size() / d > node_budget)
        throw Error(ErrorCode::BudgetExceeded, "W_n search exceeded " + std::to_string(node_budget) + " nodes");
      frontier = std::move(next);
    }
  }
  return std::nullopt;
}

bool wn_membership(const IfsSystem& sys, const BlockFamily& fam, std::span<const double> x, int n,
                   bool no_holes_certified, double tol) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  return wn_first_level(sys, fam, x, n, no_holes_certified, tol).has_value();
}

std::vector<Estimate> wn_coverage_curve(const IfsSystem& sys, const BlockFamily& fam, int max_n, std::size_t samples,
                                        std::uint64_t seed, bool no_holes_certified, Execution exec) {
  if (max_n < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  if (!no_holes_certified) throw Error(ErrorCode::MissingCertificate, "W_n coverage needs a no-holes certificate");
  std::vector<int> first(samples, 0);
  for_each_index(samples, exec, [&](std::size_t s) {
    auto rng = SplitMix64::stream(seed, s);
    const Point x = uniform_in_omega(sys, rng);
    const auto level = wn_first_level(sys, fam, x, max_n, true);
    first[s] = level ? *level : max_n + 1;
  });
  std::vector<Estimate> curve;
  for (int n = 0; n <= max_n; ++n) {
    std::size_t outside = 0;
    for (int f : first) outside += f > n ? 1 : 0;
    curve.push_back(make_estimate(outside, samples));
  }
  return curve;
}

Estimate wn_coverage_estimate(const IfsSystem& sys, const BlockFamily& fam, int n, std::size_t samples,
                              std::uint64_t seed, bool no_holes_certified, Execution exec) {
  return wn_coverage_curve(sys, fam, n, samples, seed, no_holes_certified, exec).back();
}

PediciniCheck pedicini_holds(const DigitSet& a, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in (0, 1)");
  PediciniCheck c;
  c.lhs = a.max_gap();
  c.rhs = lambda * (a.back() - a.front()) / (1.0 - lambda);
  c.holds = c.lhs < c.rhs;
  return c;
}

}  // namespace ifsaddr
