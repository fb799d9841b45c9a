#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ifsaddr/conditions.hpp"
#include "ifsaddr/deleted_digits.hpp"
#include "ifsaddr/engine.hpp"
#include "ifsaddr/error.hpp"
#include "ifsaddr/io.hpp"
#include "ifsaddr/measure.hpp"
#include "ifsaddr/parallel.hpp"
#include "ifsaddr/render.hpp"
#include "ifsaddr/triangle.hpp"

namespace ifsaddr::cli {

namespace {

struct Config {
  std::string ifs;
  std::string lambda;
  std::string point;
  std::string bary;
  std::string digits;
  std::string probs;
  std::string eps;
  std::string set = "attractor";
  std::string out;
  int depth = 40;
  int resolution = 64;
  int n = 8;
  int gamma_scan = 0;
  std::size_t samples = 1000;
  std::size_t iters = 200000;
  std::size_t burn_in = 1000;
  std::size_t budget = 1'000'000;
  std::optional<std::uint64_t> seed;
  double tol = kDefaultTolerance;
  double oversample = 8.0;
  bool exact = false;
  int threads = 0;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) parts.push_back(item);
  return parts;
}

std::vector<Rational> parse_list(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  for (const auto& item : split(s)) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, what + " is empty");
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& q : parse_list(s, what)) out.push_back(q.get_d());
  return out;
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

std::uint64_t require_seed(const Config& c) {
  if (!c.seed) throw Error(ErrorCode::InvalidArgument, "this command needs an explicit --seed");
  return *c.seed;
}

IfsSystem load_system(const Config& c) {
  if (c.ifs.empty()) throw Error(ErrorCode::InvalidArgument, "--ifs is required");
  IfsSystem sys = load_ifs_file(c.ifs).sys;
  if (c.lambda.empty()) return sys;
  const Rational q = parse_rational(c.lambda);
  if (sys.has_exact()) return IfsSystem(q, sys.exact_points());
  return IfsSystem(q.get_d(), sys.points());
}

std::vector<double> load_probs(const Config& c, const IfsSystem& sys) {
  if (!c.probs.empty()) return parse_doubles(c.probs, "--probs");
  auto file = load_ifs_file(c.ifs);
  if (!file.probs.empty()) return file.probs;
  return std::vector<double>(sys.num_maps(), 1.0 / static_cast<double>(sys.num_maps()));
}

std::vector<std::string> coordinate_header(std::size_t d) {
  std::vector<std::string> h;
  for (std::size_t i = 0; i < d; ++i) h.push_back("x" + std::to_string(i));
  return h;
}

SearchOptions search_options(const Config& c, const IfsSystem& sys) {
  SearchOptions o;
  o.no_holes_certified = no_holes_sufficient(sys).holds;
  o.mode = o.no_holes_certified ? FeasibilityMode::ExactNoHoles : FeasibilityMode::RelaxedOmega;
  o.arithmetic = c.exact ? Arithmetic::Exact : Arithmetic::Float;
  o.tol = c.tol;
  o.node_budget = c.budget;
  return o;
}

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

void report_row(CsvWriter& csv, std::span<const double> x, const ClassificationReport& r, bool certified) {
  std::vector<std::string> row;
  for (double v : x) row.push_back(format_double(v));
  row.push_back(std::string(to_string(r.verdict)));
  row.push_back(std::to_string(r.explored_depth));
  row.push_back(optional_int(r.first_bifurcation));
  row.push_back(r.forced_prefix.str());
  row.push_back(r.certificate ? std::to_string(r.certificate->start) : "");
  row.push_back(r.certificate ? std::to_string(r.certificate->period) : "");
  row.push_back(flag(certified));
  csv.row(row);
}

int analyze_point(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  const SearchOptions opts = search_options(c, sys);
  if (c.point.empty() == c.bary.empty()) throw Error(ErrorCode::InvalidArgument, "give exactly one of --point, --bary");

  RationalPoint exact;
  Point x;
  bool have_exact = true;
  // On a planar three-map system a three-component --point is barycentric.
  const bool triple = !c.point.empty() && sys.dim() == 2 && sys.num_maps() == 3 && split(c.point).size() == 3;
  if (!c.point.empty() && !triple) {
    exact = parse_list(c.point, "--point");
    x = to_doubles(exact);
  } else {
    const auto t = parse_list(triple ? c.point : c.bary, triple ? "--point" : "--bary");
    if (t.size() != 3) throw Error(ErrorCode::InvalidArgument, "--bary needs three coordinates");
    const ExactTriple et{t[0], t[1], t[2]};
    if (et.x + et.y + et.z != 1) throw Error(ErrorCode::InvalidArgument, "--bary coordinates must sum to 1");
    x = from_barycentric(sys, BarycentricTriple::make(t[0].get_d(), t[1].get_d(), t[2].get_d()));
    if (sys.has_exact()) exact = from_barycentric(sys, et);
    else have_exact = false;
  }
  if (x.size() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the IFS");

  ClassificationReport r;
  if (c.exact) {
    if (!sys.has_exact() || !have_exact)
      throw Error(ErrorCode::IrrationalInput, "--exact needs a rational lambda, points and target");
    r = classify_point(sys, std::span<const Rational>(exact), c.depth, opts);
  } else {
    r = classify_point(sys, x, c.depth, opts);
  }
  auto header = coordinate_header(sys.dim());
  for (const char* h : {"verdict", "explored_depth", "first_bifurcation", "forced_prefix", "cycle_start", "cycle_period",
                        "no_holes_certified"})
    header.push_back(h);
  CsvWriter csv(out, header);
  report_row(csv, x, r, opts.no_holes_certified);
  return kExitOk;
}

std::ofstream open_out(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  return f;
}

int classify_grid(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  SearchOptions opts = search_options(c, sys);
  opts.exec = Execution::Serial;
  const auto points = omega_lattice(sys, c.resolution, c.tol);
  std::vector<ClassificationReport> reports(points.size());
  std::vector<unsigned char> chain(points.size(), 0);
  for_each_index(points.size(), Execution::Parallel, [&](std::size_t i) {
    reports[i] = classify_point(sys, points[i], c.depth, opts);
    chain[i] = single_chain(sys, points[i], c.depth, c.tol) ? 1 : 0;
  });
  std::ofstream file = open_out(c.out);
  auto header = coordinate_header(sys.dim());
  for (const char* h : {"verdict", "explored_depth", "first_bifurcation", "single_chain"}) header.push_back(h);
  CsvWriter csv(file, header);
  std::size_t unique = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> row;
    for (double v : points[i]) row.push_back(format_double(v));
    row.push_back(std::string(to_string(reports[i].verdict)));
    row.push_back(std::to_string(reports[i].explored_depth));
    row.push_back(optional_int(reports[i].first_bifurcation));
    row.push_back(chain[i] ? "1" : "0");
    unique += chain[i];
    csv.row(row);
  }
  out << "points=" << points.size() << "\nsingle_chain=" << unique << '\n';
  return kExitOk;
}

int check_conditions(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  const auto osc = osc_failure_sufficient(sys);
  const auto holes = no_holes_sufficient(sys);
  out << "lambda=" << format_double(sys.lambda()) << '\n'
      << "maps=" << sys.num_maps() << '\n'
      << "dim=" << sys.dim() << '\n'
      << "exact=" << flag(sys.has_exact()) << '\n'
      << "osc_failure=" << flag(osc.holds) << '\n'
      << "osc_threshold=" << fixed12(osc.threshold) << '\n'
      << "no_holes=" << flag(holes.holds) << '\n'
      << "no_holes_threshold=" << fixed12(holes.threshold) << '\n';
  const auto w = vertex_overlap_witness(sys, c.tol);
  if (!w) {
    out << "witness=none\n";
    return kExitOk;
  }
  out << "witness=found\n"
      << "witness_i=" << w->i << "\nwitness_k=" << w->k << "\nwitness_j=" << w->j << "\nwitness_ell=" << w->ell << '\n'
      << "witness_block=" << w->block().str() << '\n'
      << "witness_vertex_interior=" << flag(w->vertex_interior) << '\n';
  return kExitOk;
}

std::string triple_str(const BarycentricTriple& t) { return fixed12(t.x) + "," + fixed12(t.y) + "," + fixed12(t.z); }

int triangle_constants(const Config& c, std::ostream& out) {
  out << "lambda0=" << fixed12(lambda0()) << '\n'
      << "g=" << fixed12(golden_ratio()) << '\n'
      << "inv_sqrt2=" << fixed12(inv_sqrt2()) << '\n';
  if (c.lambda.empty()) return kExitOk;
  const Rational q = parse_rational(c.lambda);
  const double l = q.get_d();
  out << "lambda=" << fixed12(l) << '\n'
      << "pi=" << triple_str(pi_point(l)) << '\n'
      << "pi_prime=" << triple_str(pi_prime_point(l)) << '\n'
      << "gamma_nonempty=" << flag(gamma_nonempty(l)) << '\n'
      << "m_point=" << triple_str(m_point(l)) << '\n'
      << "m_separation=" << flag(m_separation_holds(l)) << '\n';
  const auto f = digit_forcing(q, pi_point(q), c.depth);
  out << "pi_forcing=" << to_string(f.outcome) << '\n' << "pi_forcing_step=" << f.step << '\n';
  if (f.outcome == ForcingOutcome::UniqueByCycle) out << "pi_forcing_period=" << f.period << '\n';
  if (c.gamma_scan > 0) {
    const auto scan = gamma_unique_scan(q, c.gamma_scan, c.depth);
    out << "gamma_scan_resolution=" << c.gamma_scan << "\ngamma_scan_unique=" << scan.size() << '\n';
    for (const auto& p : scan)
      out << "gamma_scan_point=" << p.point.x.get_str() << ',' << p.point.y.get_str() << ',' << p.point.z.get_str()
          << ";period=" << p.result.period << '\n';
  }
  return kExitOk;
}

int deleted_digits(const Config& c, std::ostream& out) {
  if (c.digits.empty() || c.lambda.empty() || c.point.empty())
    throw Error(ErrorCode::InvalidArgument, "--digits, --lambda and --point are required");
  const DigitSet a(parse_doubles(c.digits, "--digits"));
  const double lambda = parse_rational(c.lambda).get_d();
  const double x = parse_rational(c.point).get_d();
  const auto [lo, hi] = attractor_interval(a, lambda);
  const auto ped = pedicini_holds(a, lambda);
  SearchOptions opts{.arithmetic = c.exact ? Arithmetic::Exact : Arithmetic::Auto};
  opts.tol = c.tol;
  opts.node_budget = c.budget;
  const auto r = count_expansions(a, lambda, x, c.depth, opts);
  out << "interval_lo=" << format_double(lo) << '\n'
      << "interval_hi=" << format_double(hi) << '\n'
      << "pedicini=" << flag(ped.holds) << '\n'
      << "pedicini_lhs=" << format_double(ped.lhs) << '\n'
      << "pedicini_rhs=" << format_double(ped.rhs) << '\n'
      << "verdict=" << to_string(r.verdict) << '\n'
      << "explored_depth=" << r.explored_depth << '\n'
      << "first_bifurcation=" << optional_int(r.first_bifurcation) << '\n'
      << "forced_prefix=" << r.forced_prefix.str() << '\n';
  if (r.certificate) out << "cycle_period=" << r.certificate->period << '\n';
  return kExitOk;
}

int wn_coverage(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  const std::uint64_t seed = require_seed(c);
  if (!no_holes_sufficient(sys).holds)
    throw Error(ErrorCode::MissingCertificate, "W_n coverage needs lambda >= d/(d+1)");
  const auto w = vertex_overlap_witness(sys, c.tol);
  if (!w) throw Error(ErrorCode::InvalidArgument, "no overlap witness, so no forcing block");
  const auto fam = BlockFamily::from_witness(sys, *w);
  const auto curve = wn_coverage_curve(sys, fam, c.n, c.samples, seed, true);
  CsvWriter csv(out, {"n", "fraction_outside", "std_error"});
  for (std::size_t k = 0; k < curve.size(); ++k)
    csv.row({std::to_string(k), format_double(curve[k].fraction), format_double(curve[k].std_error)});
  return kExitOk;
}

int sample_measure(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  const std::uint64_t seed = require_seed(c);
  const auto sampler = MeasureSampler::make(sys, load_probs(c, sys), seed);
  const bool certified = no_holes_sufficient(sys).holds;
  out << "samples=" << c.samples << '\n'
      << "trunc=" << sampler.trunc << '\n'
      << "truncation_error=" << format_double(sampler.truncation_error()) << '\n'
      << "no_holes_certified=" << flag(certified) << '\n';
  if (certified) {
    const auto e = mu_bifurcation_fraction(sampler, c.samples, c.depth, true);
    out << "bifurcation_fraction=" << format_double(e.fraction) << '\n'
        << "std_error=" << format_double(e.std_error) << '\n';
  }
  if (!c.out.empty()) {
    const auto samples = sample_natural_measure(sampler, c.samples);
    std::ofstream file = open_out(c.out);
    auto header = coordinate_header(sys.dim());
    header.insert(header.begin(), "index");
    header.push_back("address");
    CsvWriter csv(file, header);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::vector<std::string> row{std::to_string(i)};
      for (double v : samples[i].point) row.push_back(format_double(v));
      row.push_back(samples[i].prefix.str());
      csv.row(row);
    }
  }
  return kExitOk;
}

int box_dim(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  if (c.eps.empty()) throw Error(ErrorCode::InvalidArgument, "--eps is required");
  const auto eps = parse_doubles(c.eps, "--eps");
  BoxDimResult r;
  if (c.set == "attractor") {
    const std::uint64_t seed = require_seed(c);
    const std::size_t burn = std::min<std::size_t>(c.burn_in, c.iters / 2);
    r = box_dim_estimate(chaos_game(sys, c.iters, burn, seed), eps);
  } else if (c.set == "uniqueness") {
    r = box_dim_uniqueness(sys, eps, c.depth, c.oversample);
  } else {
    throw Error(ErrorCode::InvalidArgument, "--set must be attractor or uniqueness");
  }
  std::ofstream file = open_out(c.out);
  CsvWriter csv(file, {"epsilon", "count"});
  for (const auto& row : r.table) csv.row({format_double(row.epsilon), std::to_string(row.count)});
  out << "set=" << c.set << '\n'
      << "slope=" << format_double(r.slope) << '\n'
      << "fit_residual=" << format_double(r.fit_residual) << '\n';
  return kExitOk;
}

int render(const Config& c, std::ostream& out) {
  const IfsSystem sys = load_system(c);
  const std::uint64_t seed = require_seed(c);
  const auto img = render_attractor(sys, c.iters, c.burn_in, c.resolution, seed);
  std::ofstream file = open_out(c.out);
  write_pgm(file, img);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + c.out);
  out << "width=" << img.width << "\nheight=" << img.height << "\noccupied=" << img.occupied() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Addresses in overlapping self-similar attractors", "ifsaddr"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", c.threads, "Worker threads (0 = all available)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", c.tol, "Closed-membership tolerance on the float path")->check(CLI::PositiveNumber);
  app.add_option("--budget", c.budget, "Node budget for prefix searches");

  auto ifs_opt = [&](CLI::App* s) { s->add_option("--ifs", c.ifs, "IFS JSON file")->check(CLI::ExistingFile); };
  auto lambda_opt = [&](CLI::App* s) { s->add_option("--lambda", c.lambda, "Override lambda (decimal or p/q)"); };
  auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", c.seed, "RNG seed (required)"); };

  auto* analyze = app.add_subcommand("analyze-point", "Classify the addresses of one point");
  ifs_opt(analyze);
  lambda_opt(analyze);
  analyze->add_option("--point", c.point, "Cartesian coordinates, comma-separated");
  analyze->add_option("--bary", c.bary, "Barycentric x,y,z (triangle systems)");
  analyze->add_option("--depth", c.depth)->check(CLI::NonNegativeNumber);
  analyze->add_flag("--exact", c.exact, "Exact rational arithmetic");

  auto* grid = app.add_subcommand("classify-grid", "Classify every lattice point of Omega");
  ifs_opt(grid);
  lambda_opt(grid);
  grid->add_option("--resolution", c.resolution)->check(CLI::PositiveNumber);
  grid->add_option("--depth", c.depth)->check(CLI::NonNegativeNumber);
  grid->add_option("--out", c.out, "CSV output file");

  auto* cond = app.add_subcommand("check-conditions", "Sufficient conditions and overlap witness");
  ifs_opt(cond);
  lambda_opt(cond);

  auto* tri = app.add_subcommand("triangle-constants", "Triangle thresholds; with --lambda, regions at lambda");
  lambda_opt(tri);
  tri->add_option("--depth", c.depth, "Forcing steps for pi(lambda)")->check(CLI::NonNegativeNumber);
  tri->add_option("--gamma-scan", c.gamma_scan, "Exploratory lattice scan of Gamma_0 at this resolution");

  auto* dd = app.add_subcommand("deleted-digits", "Expansions sum eps_n lambda^n with a digit set");
  dd->add_option("--digits", c.digits, "Increasing digits, comma-separated");
  lambda_opt(dd);
  dd->add_option("--point", c.point);
  dd->add_option("--depth", c.depth)->check(CLI::NonNegativeNumber);
  dd->add_flag("--exact", c.exact);

  auto* wn = app.add_subcommand("wn-coverage", "Measure of Omega outside W_n");
  ifs_opt(wn);
  lambda_opt(wn);
  wn->add_option("--n", c.n)->check(CLI::NonNegativeNumber);
  wn->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
  seed_opt(wn);

  auto* sm = app.add_subcommand("sample-measure", "Natural-measure samples and bifurcation fraction");
  ifs_opt(sm);
  lambda_opt(sm);
  sm->add_option("--probs", c.probs, "Digit probabilities, comma-separated");
  sm->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
  sm->add_option("--depth", c.depth)->check(CLI::NonNegativeNumber);
  seed_opt(sm);
  sm->add_option("--out", c.out, "Optional CSV of samples");

  auto* bd = app.add_subcommand("box-dim", "Box-counting dimension estimate");
  ifs_opt(bd);
  lambda_opt(bd);
  bd->add_option("--set", c.set)->check(CLI::IsMember({"attractor", "uniqueness"}));
  bd->add_option("--eps", c.eps, "Decreasing scales, comma-separated");
  bd->add_option("--depth", c.depth)->check(CLI::NonNegativeNumber);
  bd->add_option("--iters", c.iters, "Chaos-game points for --set attractor");
  bd->add_option("--oversample", c.oversample, "Grid points per eps for --set uniqueness");
  seed_opt(bd);
  bd->add_option("--out", c.out, "CSV of (epsilon, count)");

  auto* ra = app.add_subcommand("render-attractor", "Chaos-game PGM image");
  ifs_opt(ra);
  lambda_opt(ra);
  ra->add_option("--iters", c.iters);
  ra->add_option("--burn-in", c.burn_in);
  ra->add_option("--resolution", c.resolution)->check(CLI::PositiveNumber);
  seed_opt(ra);
  ra->add_option("--out", c.out, "PGM output file");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  set_thread_count(c.threads);
  try {
    int code = kExitInput;
    if (analyze->parsed()) code = analyze_point(c, out);
    else if (grid->parsed()) code = classify_grid(c, out);
    else if (cond->parsed()) code = check_conditions(c, out);
    else if (tri->parsed()) code = triangle_constants(c, out);
    else if (dd->parsed()) code = deleted_digits(c, out);
    else if (wn->parsed()) code = wn_coverage(c, out);
    else if (sm->parsed()) code = sample_measure(c, out);
    else if (bd->parsed()) code = box_dim(c, out);
    else if (ra->parsed()) code = render(c, out);
    set_thread_count(0);
    return code;
  } catch (const Error& e) {
    set_thread_count(0);
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitInput;
  } catch (const std::exception& e) {
    set_thread_count(0);
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ifsaddr::cli
