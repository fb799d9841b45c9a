#include "ifsaddr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ifsaddr/error.hpp"

namespace ifsaddr {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::UniqueCertified: return "UniqueCertified";
    case Verdict::MultipleCertified: return "MultipleCertified";
    case Verdict::MultipleLikely: return "MultipleLikely";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

double remainder_error_bound(const IfsSystem& sys, int depth) {
  double scale = 1.0;
  for (const auto& p : sys.points()) scale = std::max(scale, max_abs(p));
  const double k = static_cast<double>(std::max(depth, 0));
  return 8.0 * 0x1.0p-53 * scale * (k + 1.0) * std::pow(sys.lambda(), -k);
}

namespace {

// Arithmetic-specific primitives shared by every search below.
template <class Scalar>
struct Kernel;

template <>
struct Kernel<double> {
  const IfsSystem& sys;
  double tol;
  std::size_t d = sys.dim();
  std::size_t m = sys.num_maps();

  void inverse(Digit j, const double* x, double* out) const { sys.inverse_into(j, x, out); }
  bool inside(const double* x) const {
    return sys.omega().contains(std::span<const double>(x, d), Membership::closed(), tol);
  }
  // Inside with enough margin to absorb rounding of a depth-`depth` remainder.
  bool robust(const double* x, int depth) const {
    const double margin = std::max(tol, remainder_error_bound(sys, depth));
    return sys.omega().contains(std::span<const double>(x, d), Membership::interior(margin));
  }
  static constexpr bool exact = false;
};

template <>
struct Kernel<Rational> {
  const IfsSystem& sys;
  double tol;
  std::size_t d = sys.dim();
  std::size_t m = sys.num_maps();

  void inverse(Digit j, const Rational* x, Rational* out) const {
    sys.inverse_into(j, std::span<const Rational>(x, d), std::span<Rational>(out, d));
  }
  bool inside(const Rational* x) const { return sys.omega().contains(std::span<const Rational>(x, d)); }
  bool robust(const Rational* x, int) const { return inside(x); }
  static constexpr bool exact = true;
};

template <class Scalar>
Kernel<Scalar> make_kernel(const IfsSystem& sys, std::size_t xdim, double tol) {
  if (xdim != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the IFS");
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (!sys.has_exact())
      throw Error(ErrorCode::IrrationalInput, "exact arithmetic needs a rational lambda and rational points");
  }
  return Kernel<Scalar>{sys, tol};
}

template <class Scalar>
void check_search_preconditions(const Kernel<Scalar>& k, std::span<const Scalar> x, const SearchOptions& opts) {
  if (opts.mode == FeasibilityMode::ExactNoHoles && !opts.no_holes_certified)
    throw Error(ErrorCode::MissingCertificate, "ExactNoHoles mode needs a no-holes certificate");
  if (!k.inside(x.data())) throw Error(ErrorCode::PointOutsideOmega, "point lies outside Omega");
}

// Feasible digits of x; candidate remainders are written to cand (m x d).
template <class Scalar>
std::vector<Digit> children_of(const Kernel<Scalar>& k, const Scalar* x, std::vector<Scalar>& cand) {
  std::vector<Digit> out;
  cand.resize(k.m * k.d);
  for (Digit j = 0; j < k.m; ++j) {
    Scalar* c = cand.data() + j * k.d;
    k.inverse(j, x, c);
    if (k.inside(c)) out.push_back(j);
  }
  return out;
}

template <class Scalar>
using Level = typename PrefixTree<Scalar>::Level;

template <class Scalar>
void expand_range(const Kernel<Scalar>& k, const Level<Scalar>& parents, std::size_t begin, std::size_t end,
                  Level<Scalar>& out) {
  std::vector<Scalar> tmp(k.d);
  for (std::size_t p = begin; p < end; ++p) {
    const Scalar* x = parents.coords.data() + p * k.d;
    for (Digit j = 0; j < k.m; ++j) {
      k.inverse(j, x, tmp.data());
      if (!k.inside(tmp.data())) continue;
      out.coords.insert(out.coords.end(), tmp.begin(), tmp.end());
      out.parent.push_back(static_cast<std::uint32_t>(p));
      out.digit.push_back(j);
    }
  }
}

// Children of a whole level. Parents are cut into fixed-size blocks whose
// outputs are concatenated in block order, so the result does not depend on
// the worker count.
template <class Scalar>
Level<Scalar> expand_level(const Kernel<Scalar>& k, const Level<Scalar>& parents, Execution exec) {
  constexpr std::size_t kBlock = 256;
  Level<Scalar> out;
  if (exec == Execution::Serial || parents.size() <= kBlock) {
    expand_range(k, parents, 0, parents.size(), out);
    return out;
  }
  const std::size_t blocks = (parents.size() + kBlock - 1) / kBlock;
  std::vector<Level<Scalar>> parts(blocks);
  for_each_index(blocks, exec, [&](std::size_t b) {
    expand_range(k, parents, b * kBlock, std::min(parents.size(), (b + 1) * kBlock), parts[b]);
  });
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  out.coords.reserve(total * k.d);
  out.parent.reserve(total);
  out.digit.reserve(total);
  for (auto& part : parts) {
    std::move(part.coords.begin(), part.coords.end(), std::back_inserter(out.coords));
    out.parent.insert(out.parent.end(), part.parent.begin(), part.parent.end());
    out.digit.insert(out.digit.end(), part.digit.begin(), part.digit.end());
  }
  return out;
}

template <class Scalar>
PrefixTree<Scalar> enumerate_impl(const IfsSystem& sys, std::span<const Scalar> x, int depth,
                                  const SearchOptions& opts) {
  const auto k = make_kernel<Scalar>(sys, x.size(), opts.tol);
  check_search_preconditions(k, x, opts);
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be non-negative");

  std::vector<Level<Scalar>> levels(1);
  levels[0].coords.assign(x.begin(), x.end());
  levels[0].parent.push_back(0);
  levels[0].digit.push_back(0);
  std::size_t total = 1;
  for (int n = 1; n <= depth; ++n) {
    levels.push_back(expand_level(k, levels.back(), opts.exec));
    total += levels.back().size();
    if (total > opts.node_budget)
      throw Error(ErrorCode::BudgetExceeded, "prefix tree exceeds " + std::to_string(opts.node_budget) +
                                                 " nodes at depth " + std::to_string(n));
  }
  return PrefixTree<Scalar>(sys.dim(), std::move(levels));
}

struct Budget {
  std::size_t used = 0;
  std::size_t limit;
  void spend() {
    if (++used > limit) throw Error(ErrorCode::BudgetExceeded, "search exceeded " + std::to_string(limit) + " nodes");
  }
};

// Is there a feasible path from remainder x (at depth `level`) down to `depth`?
template <class Scalar>
bool survives(const Kernel<Scalar>& k, const Scalar* x, int level, int depth, Budget& budget) {
  if (level >= depth) return true;
  std::vector<Scalar> cand(k.d);
  for (Digit j = 0; j < k.m; ++j) {
    k.inverse(j, x, cand.data());
    if (!k.inside(cand.data())) continue;
    budget.spend();
    if (survives(k, cand.data(), level + 1, depth, budget)) return true;
  }
  return false;
}

// Breadth-first search below `root` (at depth `level`) for a node with two
// robustly feasible children. Returns the depth of that node.
template <class Scalar>
std::optional<int> find_robust_split(const Kernel<Scalar>& k, const Scalar* root, int level, int depth,
                                     Budget& budget) {
  std::vector<std::vector<Scalar>> frontier{std::vector<Scalar>(root, root + k.d)};
  std::vector<Scalar> cand;
  for (int n = level; n < depth && !frontier.empty(); ++n) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& node : frontier) {
      const auto kids = children_of(k, node.data(), cand);
      int robust = 0;
      for (Digit j : kids)
        if (k.robust(cand.data() + j * k.d, n + 1)) ++robust;
      if (robust >= 2) return n;
      for (Digit j : kids) {
        budget.spend();
        next.emplace_back(cand.begin() + j * k.d, cand.begin() + (j + 1) * k.d);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

template <class Scalar>
ClassificationReport classify_impl(const IfsSystem& sys, std::span<const Scalar> x, int depth,
                                   const SearchOptions& opts) {
  const auto k = make_kernel<Scalar>(sys, x.size(), opts.tol);
  check_search_preconditions(k, x, opts);
  const bool certified = opts.no_holes_certified;

  ClassificationReport report;
  report.prefix_counts.push_back(1);
  std::vector<Scalar> cur(x.begin(), x.end());
  std::vector<Scalar> cand;
  std::map<std::vector<Scalar>, int> seen;
  if constexpr (Kernel<Scalar>::exact) seen.emplace(cur, 0);
  Budget budget{0, opts.node_budget};

  for (int n = 0; n < depth; ++n) {
    const auto kids = children_of(k, cur.data(), cand);
    if (kids.empty()) {
      // x is not in S_lambda: some shift left Omega for good.
      report.prefix_counts.push_back(0);
      report.explored_depth = n + 1;
      return report;
    }
    if (kids.size() == 1) {
      const Digit j = kids.front();
      std::copy(cand.begin() + j * k.d, cand.begin() + (j + 1) * k.d, cur.begin());
      report.forced_prefix.push_back(j);
      report.prefix_counts.push_back(1);
      if constexpr (Kernel<Scalar>::exact) {
        auto [it, inserted] = seen.emplace(cur, n + 1);
        if (!inserted) {
          CycleCertificate cert;
          cert.start = it->second;
          cert.period = n + 1 - it->second;
          const auto& digits = report.forced_prefix.digits();
          cert.digits.assign(digits.begin() + cert.start, digits.end());
          report.certificate = std::move(cert);
          report.verdict = Verdict::UniqueCertified;
          report.explored_depth = n + 1;
          return report;
        }
      }
      continue;
    }

    report.first_bifurcation = n;
    report.prefix_counts.push_back(kids.size());
    report.explored_depth = n + 1;
    if (certified) {
      int robust = 0;
      for (Digit j : kids)
        if (k.robust(cand.data() + j * k.d, n + 1)) ++robust;
      if (robust >= 2) {
        report.verdict = Verdict::MultipleCertified;
        return report;
      }
      if (auto at = find_robust_split(k, cur.data(), n, depth, budget)) {
        report.verdict = Verdict::MultipleCertified;
        report.explored_depth = *at + 1;
      }
      return report;
    }
    int alive = 0;
    for (Digit j : kids) {
      if (survives(k, cand.data() + j * k.d, n + 1, depth, budget)) ++alive;
      if (alive >= 2) break;
    }
    if (alive >= 2) {
      report.verdict = Verdict::MultipleLikely;
      report.explored_depth = depth;
    }
    return report;
  }
  report.explored_depth = depth;
  return report;
}

template <class Scalar>
std::optional<int> first_bifurcation_impl(const IfsSystem& sys, std::span<const Scalar> x, int depth,
                                          const SearchOptions& opts) {
  const auto k = make_kernel<Scalar>(sys, x.size(), opts.tol);
  check_search_preconditions(k, x, opts);
  std::vector<Scalar> cur(x.begin(), x.end());
  std::vector<Scalar> cand;
  for (int n = 0; n < depth; ++n) {
    const auto kids = children_of(k, cur.data(), cand);
    if (kids.size() >= 2) return n;
    if (kids.empty()) return std::nullopt;
    std::copy(cand.begin() + kids[0] * k.d, cand.begin() + (kids[0] + 1) * k.d, cur.begin());
  }
  return std::nullopt;
}

template <class Scalar>
std::vector<Digit> feasible_impl(const IfsSystem& sys, std::span<const Scalar> x, FeasibilityMode mode, double tol) {
  const auto k = make_kernel<Scalar>(sys, x.size(), tol);
  if (mode == FeasibilityMode::ExactNoHoles && !k.inside(x.data()))
    throw Error(ErrorCode::PointOutsideOmega, "point lies outside Omega");
  std::vector<Scalar> cand;
  return children_of(k, x.data(), cand);
}

bool depth_search(const Kernel<double>& k, const double* x, int remaining) {
  if (remaining == 0) return true;
  double cand[16];
  std::vector<double> heap;
  double* c = cand;
  if (k.d > 16) {
    heap.resize(k.d);
    c = heap.data();
  }
  for (Digit j = 0; j < k.m; ++j) {
    k.inverse(j, x, c);
    if (k.inside(c) && depth_search(k, c, remaining - 1)) return true;
  }
  return false;
}

}  // namespace

std::vector<Digit> feasible_children(const IfsSystem& sys, std::span<const double> x, FeasibilityMode mode,
                                     double tol) {
  return feasible_impl<double>(sys, x, mode, tol);
}

std::vector<Digit> feasible_children(const IfsSystem& sys, std::span<const Rational> x, FeasibilityMode mode) {
  return feasible_impl<Rational>(sys, x, mode, 0.0);
}

PrefixTree<double> enumerate_prefixes(const IfsSystem& sys, std::span<const double> x, int depth,
                                      const SearchOptions& opts) {
  return enumerate_impl<double>(sys, x, depth, opts);
}

PrefixTree<Rational> enumerate_prefixes(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                        const SearchOptions& opts) {
  return enumerate_impl<Rational>(sys, x, depth, opts);
}

namespace {
bool use_exact(const IfsSystem& sys, Arithmetic a) {
  if (a == Arithmetic::Exact) {
    if (!sys.has_exact())
      throw Error(ErrorCode::IrrationalInput, "exact arithmetic needs a rational lambda and rational points");
    return true;
  }
  return a == Arithmetic::Auto && sys.has_exact();
}
}  // namespace

ClassificationReport classify_point(const IfsSystem& sys, std::span<const double> x, int depth,
                                    const SearchOptions& opts) {
  if (use_exact(sys, opts.arithmetic)) {
    const RationalPoint q = exact_point(x);
    return classify_impl<Rational>(sys, q, depth, opts);
  }
  return classify_impl<double>(sys, x, depth, opts);
}

ClassificationReport classify_point(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                    const SearchOptions& opts) {
  return classify_impl<Rational>(sys, x, depth, opts);
}

std::optional<int> first_bifurcation(const IfsSystem& sys, std::span<const double> x, int depth,
                                     const SearchOptions& opts) {
  if (use_exact(sys, opts.arithmetic)) {
    const RationalPoint q = exact_point(x);
    return first_bifurcation_impl<Rational>(sys, q, depth, opts);
  }
  return first_bifurcation_impl<double>(sys, x, depth, opts);
}

std::optional<int> first_bifurcation(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                     const SearchOptions& opts) {
  return first_bifurcation_impl<Rational>(sys, x, depth, opts);
}

bool reaches_depth(const IfsSystem& sys, std::span<const double> x, int n, double tol) {
  const auto k = make_kernel<double>(sys, x.size(), tol);
  if (!k.inside(x.data())) return false;
  return depth_search(k, x.data(), n);
}

}  // namespace ifsaddr
