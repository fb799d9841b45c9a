#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ifsaddr/ifs.hpp"
#include "ifsaddr/parallel.hpp"

namespace ifsaddr {

/// RelaxedOmega: a digit is feasible when the shifted remainder stays in
/// Omega, a superset of the true first digits since S_lambda is inside
/// Omega. ExactNoHoles: the same test, legal only when S_lambda = Omega has
/// been certified, in which case it yields exactly the true first digits.
enum class FeasibilityMode { RelaxedOmega, ExactNoHoles };

/// Float: double remainders with the closed tolerance. Exact: rational
/// remainders (requires IfsSystem::has_exact()). Auto: Exact when possible.
enum class Arithmetic { Float, Exact, Auto };

enum class Verdict { UniqueCertified, MultipleCertified, MultipleLikely, Unknown };

std::string_view to_string(Verdict v) noexcept;

struct SearchOptions {
  FeasibilityMode mode = FeasibilityMode::RelaxedOmega;
  bool no_holes_certified = false;
  Arithmetic arithmetic = Arithmetic::Float;
  double tol = kDefaultTolerance;
  std::size_t node_budget = 1'000'000;
  Execution exec = Execution::Parallel;
};

/// The remainder sequence revisits depth `start` after `period` more forced
/// digits; `digits` is the repeating block.
struct CycleCertificate {
  int start = 0;
  int period = 0;
  std::vector<Digit> digits;
};

struct ClassificationReport {
  Verdict verdict = Verdict::Unknown;
  int explored_depth = 0;
  std::optional<int> first_bifurcation;
  /// prefix_counts[n] = number of feasible prefixes of length n, for
  /// n <= explored_depth (search stops as soon as a verdict is reached).
  std::vector<std::size_t> prefix_counts;
  /// Digits forced before the first bifurcation (or the whole chain).
  AddressPrefix forced_prefix;
  std::optional<CycleCertificate> certificate;
};

template <class Scalar>
struct PrefixNode {
  AddressPrefix prefix;
  std::vector<Scalar> remainder;  ///< f_{i_n}^{-1} o ... o f_{i_1}^{-1}(x)
  int depth = 0;
};

/// Breadth-first prefix tree stored level by level; node k of level n keeps
/// its parent index in level n-1 and its last digit.
template <class Scalar>
class PrefixTree {
 public:
  struct Level {
    std::vector<Scalar> coords;  // size() * dim, row-major
    std::vector<std::uint32_t> parent;
    std::vector<Digit> digit;
    std::size_t size() const { return digit.size(); }
  };

  PrefixTree(std::size_t dim, std::vector<Level> levels) : dim_(dim), levels_(std::move(levels)) {}

  std::size_t dim() const { return dim_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t size(int depth) const { return levels_[static_cast<std::size_t>(depth)].size(); }
  const Level& level(int depth) const { return levels_[static_cast<std::size_t>(depth)]; }

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c;
    for (const auto& l : levels_) c.push_back(l.size());
    return c;
  }

  std::span<const Scalar> remainder(int depth, std::size_t index) const {
    return std::span<const Scalar>(level(depth).coords).subspan(index * dim_, dim_);
  }

  AddressPrefix prefix(int depth, std::size_t index) const {
    std::vector<Digit> rev;
    for (int n = depth; n > 0; --n) {
      rev.push_back(level(n).digit[index]);
      index = level(n).parent[index];
    }
    return AddressPrefix(std::vector<Digit>(rev.rbegin(), rev.rend()));
  }

  PrefixNode<Scalar> node(int depth, std::size_t index) const {
    auto r = remainder(depth, index);
    return {prefix(depth, index), std::vector<Scalar>(r.begin(), r.end()), depth};
  }

 private:
  std::size_t dim_;
  std::vector<Level> levels_;
};

std::vector<Digit> feasible_children(const IfsSystem& sys, std::span<const double> x,
                                     FeasibilityMode mode, double tol = kDefaultTolerance);
std::vector<Digit> feasible_children(const IfsSystem& sys, std::span<const Rational> x,
                                     FeasibilityMode mode);

/// All feasible prefixes up to `depth`. Distinct prefixes with equal
/// remainders stay distinct. Throws BudgetExceeded past opts.node_budget.
PrefixTree<double> enumerate_prefixes(const IfsSystem& sys, std::span<const double> x, int depth,
                                      const SearchOptions& opts = {});
PrefixTree<Rational> enumerate_prefixes(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                        const SearchOptions& opts = {});

/// Finite-depth evidence about the number of addresses of x.
///
/// UniqueCertified: a single feasible chain whose exact remainder sequence
/// closes a cycle (exact arithmetic only). MultipleCertified: with a
/// no-holes certificate, a node with two feasible children (float path: both
/// children inside Omega with margin). MultipleLikely: without certificate,
/// two branches that both survive to `depth`. Otherwise Unknown.
ClassificationReport classify_point(const IfsSystem& sys, std::span<const double> x, int depth,
                                    const SearchOptions& opts = {});
ClassificationReport classify_point(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                    const SearchOptions& opts = {});

/// Length of the common forced prefix before two feasible continuations
/// appear; nullopt for a single chain (or a dead end) up to `depth`.
std::optional<int> first_bifurcation(const IfsSystem& sys, std::span<const double> x, int depth,
                                     const SearchOptions& opts = {});
std::optional<int> first_bifurcation(const IfsSystem& sys, std::span<const Rational> x, int depth,
                                     const SearchOptions& opts = {});

/// Whether some prefix of length n keeps every remainder in Omega, i.e.
/// x lies in the union of f_w(Omega) over |w| = n.
bool reaches_depth(const IfsSystem& sys, std::span<const double> x, int n,
                   double tol = kDefaultTolerance);

/// Float-path bound on the accumulated rounding error of a depth-k remainder.
double remainder_error_bound(const IfsSystem& sys, int depth);

}  // namespace ifsaddr
