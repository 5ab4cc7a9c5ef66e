#include "perron/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "perron/errors.hpp"
#include "perron/io.hpp"
#include "perron/random.hpp"
#include "perron/structure.hpp"

namespace perron {

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr double kInf = std::numeric_limits<double>::infinity();

using nlohmann::json;

// Accumulates per-sample violations into a PropertyReport.
class ReportBuilder {
 public:
  ReportBuilder(std::string name, double tolerance) {
    report_.name = std::move(name);
    report_.tolerance = tolerance;
    report_.max_violation = -kInf;
  }

  void add(double violation, double equality_gap, const json& witness) {
    ++report_.samples;
    report_.max_violation = std::max(report_.max_violation, violation);
    report_.max_equality_gap = std::max(report_.max_equality_gap, equality_gap);
    if (!(violation <= report_.tolerance) && report_.witnesses.size() < kMaxWitnesses) {
      report_.witnesses.push_back(witness.dump());
    }
  }

  PropertyReport finish() {
    if (report_.samples == 0) report_.max_violation = 0.0;
    report_.pass = report_.max_violation <= report_.tolerance;
    return std::move(report_);
  }

  PropertyReport& report() { return report_; }

 private:
  PropertyReport report_;
};

constexpr int kUnperturbedIterations = 5000;

// Dominant eigenvalue, or NaN when the solver did not converge. Collatz
// bounds stay valid without the all-eps perturbation, so an unperturbed run
// is tried first: when it converges it carries no perturbation bias.
double dominant(const DenseTensor& a, const CheckOptions& opts) {
  if (!opts.solver.perturbation) {
    SolverConfig exact = opts.solver;
    exact.perturbation = 0.0;
    exact.max_iter = std::min(exact.max_iter, kUnperturbedIterations);
    const EigenResult r = solve_dominant(a, exact);
    if (r.converged) return r.lambda;
  }
  const EigenResult r = solve_dominant(a, opts.solver);
  return r.converged ? r.lambda : std::numeric_limits<double>::quiet_NaN();
}

// NaN propagates as an infinite violation.
double sanitize(double v) { return std::isnan(v) ? kInf : v; }

json dense_json(const DenseTensor& a) { return tensor_to_json(a, Layout::dense); }

json diag_json(const DiagonalTensor& d) {
  return json(std::vector<double>(d.diag().begin(), d.diag().end()));
}

void require_grid(std::span<const double> grid) {
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("grid points must lie in [0, 1]");
  }
}

}  // namespace

std::vector<double> default_grid() {
  std::vector<double> grid(11);
  for (int i = 0; i <= 10; ++i) grid[static_cast<std::size_t>(i)] = i / 10.0;
  return grid;
}

PropertyReport check_minimax(const DenseTensor& a, int trials, std::uint64_t seed,
                             const CheckOptions& opts) {
  require_nonnegative(a);
  const double rho = dominant(a, opts);
  const double scale = std::max(1.0, std::abs(rho));
  ReportBuilder builder("minimax", kMinimaxTolerance);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(seed, 0x6d696e, static_cast<std::uint64_t>(trial));
    const PositiveVector x = random_positive_vector(a.dim(), rng);
    const CollatzBounds b = collatz_bounds(a, x);
    const double violation = sanitize(std::max(b.lower - rho, rho - b.upper) / scale);
    builder.add(violation, 0.0,
                json{{"x", std::vector<double>(x.values().begin(), x.values().end())},
                     {"lower", b.lower},
                     {"upper", b.upper},
                     {"rho", rho},
                     {"a", dense_json(a)}});
  }
  return builder.finish();
}

PropertyReport check_monotonicity(const DenseTensor& a, const DenseTensor& b,
                                  const CheckOptions& opts) {
  if (!(a.shape() == b.shape())) throw ShapeError("tensor shapes differ");
  require_nonnegative(a);
  require_nonnegative(b);
  for (std::size_t k = 0; k < a.shape().size(); ++k) {
    if (a.values()[k] > b.values()[k]) throw ArgumentError("A <= B does not hold entrywise");
  }
  const bool strict =
      !(a == b) && is_irreducible(a).irreducible && is_irreducible(b).irreducible;
  const double rho_a = dominant(a, opts);
  const double rho_b = dominant(b, opts);

  ReportBuilder builder(strict ? "monotone-strict" : "monotone",
                        strict ? -kStrictMargin : kMonotoneTolerance);
  builder.add(sanitize(rho_a - rho_b), std::abs(rho_a - rho_b),
              json{{"rho_a", rho_a}, {"rho_b", rho_b}, {"a", dense_json(a)}, {"b", dense_json(b)}});
  return builder.finish();
}

PropertyReport check_diagonal_convexity(const DenseTensor& a, const DiagonalTensor& c,
                                        const DiagonalTensor& d, std::span<const double> grid,
                                        const CheckOptions& opts) {
  if (!(a.shape() == c.shape()) || !(a.shape() == d.shape())) {
    throw ArgumentError("tensor shapes differ");
  }
  require_grid(grid);
  require_essentially_nonnegative(a);

  const double lambda_c = dominant(add_diagonal(a, c), opts);
  const double lambda_d = dominant(add_diagonal(a, d), opts);
  ReportBuilder builder("diagonal-convexity", kConvexityTolerance);
  for (double t : grid) {
    std::vector<double> mix(c.diag().size());
    for (std::size_t i = 0; i < mix.size(); ++i) {
      mix[i] = t * c.diag()[i] + (1.0 - t) * d.diag()[i];
    }
    const double lhs = dominant(add_diagonal(a, DiagonalTensor(a.shape(), std::move(mix))), opts);
    const double rhs = t * lambda_c + (1.0 - t) * lambda_d;
    const double scale =
        std::max({1.0, std::abs(lambda_c), std::abs(lambda_d), std::abs(lhs)});
    builder.add(sanitize((lhs - rhs) / scale), sanitize(std::abs(lhs - rhs) / scale),
                json{{"t", t}, {"lhs", lhs}, {"rhs", rhs}, {"a", dense_json(a)},
                     {"c", diag_json(c)}, {"d", diag_json(d)}});
  }
  PropertyReport report = builder.finish();
  report.near_equality = report.max_equality_gap <= kEqualityThreshold;
  return report;
}

PropertyReport check_symmetric_convexity(const DenseTensor& a, const DenseTensor& b,
                                         std::span<const double> grid,
                                         const CheckOptions& opts) {
  if (!(a.shape() == b.shape())) throw ArgumentError("tensor shapes differ");
  if (!is_symmetric(a) || !is_symmetric(b)) throw ArgumentError("tensors must be symmetric");
  require_essentially_nonnegative(a);
  require_essentially_nonnegative(b);
  require_grid(grid);

  const double lambda_a = dominant(a, opts);
  const double lambda_b = dominant(b, opts);
  ReportBuilder builder("symmetric-convexity", kConvexityTolerance);
  for (double t : grid) {
    const double lhs = dominant(linear_combination(t, a, 1.0 - t, b), opts);
    const double rhs = t * lambda_a + (1.0 - t) * lambda_b;
    const double scale =
        std::max({1.0, std::abs(lambda_a), std::abs(lambda_b), std::abs(lhs)});
    builder.add(sanitize((lhs - rhs) / scale), sanitize(std::abs(lhs - rhs) / scale),
                json{{"t", t}, {"lhs", lhs}, {"rhs", rhs}, {"a", dense_json(a)},
                     {"b", dense_json(b)}});
  }
  return builder.finish();
}

DenseTensor geometric_path(const DenseTensor& a, const DenseTensor& b, double t) {
  if (!same_zero_pattern(a, b)) throw ArgumentError("zero patterns differ");
  std::vector<double> values(a.shape().size(), 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double x = a.values()[k];
    const double y = b.values()[k];
    if (x == 0.0) continue;
    if (x < 0.0 || y < 0.0) throw ArgumentError("geometric path needs nonnegative tensors");
    values[k] = std::pow(x, 1.0 - t) * std::pow(y, t);
  }
  return DenseTensor(a.shape(), std::move(values));
}

PropertyReport check_log_convexity(const DenseTensor& a, const DenseTensor& b,
                                   std::span<const double> grid, const CheckOptions& opts,
                                   const TensorPath& path) {
  if (!(a.shape() == b.shape())) throw ArgumentError("tensor shapes differ");
  require_nonnegative(a);
  require_nonnegative(b);
  if (!same_zero_pattern(a, b)) throw ArgumentError("zero patterns of A and B differ");
  if (!is_irreducible(a).irreducible) throw ArgumentError("A must be irreducible");
  require_grid(grid);

  const double rho_a = dominant(a, opts);
  const double rho_b = dominant(b, opts);
  ReportBuilder builder("log-convexity", kConvexityTolerance);
  for (double t : grid) {
    const double rho_g = dominant(geometric_path(a, b, t), opts);
    const double bound = std::pow(rho_a, 1.0 - t) * std::pow(rho_b, t);
    const double ratio = rho_g / bound - 1.0;
    builder.add(sanitize(ratio), sanitize(std::abs(ratio)),
                json{{"t", t}, {"rho_g", rho_g}, {"bound", bound}, {"a", dense_json(a)},
                     {"b", dense_json(b)}});
    if (path) {
      const DenseTensor f = path(t);
      require_nonnegative(f);
      const double rho_f = dominant(f, opts);
      const double chain = (rho_f - rho_g) / std::max(1.0, std::abs(rho_g));
      builder.add(sanitize(chain), 0.0,
                  json{{"t", t}, {"rho_f", rho_f}, {"rho_g", rho_g}, {"f", dense_json(f)}});
    }
  }
  return builder.finish();
}

PropertyReport check_shift_equivariance(const DenseTensor& a, std::span<const double> shifts,
                                        const CheckOptions& opts) {
  require_essentially_nonnegative(a);
  const double base = dominant(a, opts);
  const double scale = std::max(1.0, std::abs(base));
  ReportBuilder builder("shift-equivariance", kShiftTolerance);
  for (double b : shifts) {
    const double shifted = dominant(shift(a, b), opts);
    const double err = sanitize(std::abs(shifted - base - b) / scale);
    builder.add(err, err,
                json{{"shift", b}, {"lambda", base}, {"lambda_shifted", shifted},
                     {"a", dense_json(a)}});
  }
  return builder.finish();
}

std::optional<double> scalar_shift_between(const DiagonalTensor& c, const DiagonalTensor& d,
                                           double threshold) {
  if (!(c.shape() == d.shape())) throw ArgumentError("tensor shapes differ");
  const auto n = c.diag().size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += d.diag()[i] - c.diag()[i];
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d.diag()[i] - c.diag()[i] - mean) > threshold) return std::nullopt;
  }
  return mean;
}

std::optional<ScalingCertificate> find_scaling_certificate(const DenseTensor& a,
                                                           const DenseTensor& b,
                                                           double rel_tol,
                                                           const CheckOptions& opts) {
  if (!(a.shape() == b.shape())) throw ArgumentError("tensor shapes differ");
  require_nonnegative(a);
  require_nonnegative(b);
  if (!same_zero_pattern(a, b)) return std::nullopt;
  const EigenResult ra = solve_dominant(a, opts.solver);
  const EigenResult rb = solve_dominant(b, opts.solver);
  if (!ra.converged || !rb.converged || !(ra.lambda > 0.0)) return std::nullopt;

  std::vector<double> d(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = ra.eigenvector[i] / rb.eigenvector[i];
  ScalingCertificate cert{rb.lambda / ra.lambda, PositiveVector(std::move(d))};

  const DenseTensor rebuilt = apply_diagonal_scaling(a, cert.sigma, cert.d);
  const double top = *std::max_element(b.values().begin(), b.values().end());
  for (std::size_t k = 0; k < rebuilt.shape().size(); ++k) {
    if (std::abs(rebuilt.values()[k] - b.values()[k]) > rel_tol * std::max(top, 1e-300)) {
      return std::nullopt;
    }
  }
  return cert;
}

Suite parse_suite(std::string_view name) {
  if (name == "minimax") return Suite::minimax;
  if (name == "monotone") return Suite::monotone;
  if (name == "convexity") return Suite::convexity;
  if (name == "symmetric-convexity") return Suite::symmetric_convexity;
  if (name == "logconvexity") return Suite::log_convexity;
  if (name == "all") return Suite::all;
  throw ArgumentError("unknown suite: " + std::string(name));
}

namespace {

TensorShape sample_shape(const SuiteOptions& opts, int s) {
  const int dim = opts.dim.value_or(2 + s % 3);
  const int order = opts.order.value_or(3 + (s / 3) % 2);
  return TensorShape(order, dim);
}

// Folds per-sample reports with the same name into one.
class Aggregate {
 public:
  void add(const PropertyReport& r) {
    auto it = std::find_if(reports_.begin(), reports_.end(),
                           [&](const PropertyReport& x) { return x.name == r.name; });
    if (it == reports_.end()) {
      reports_.push_back(r);
      return;
    }
    it->samples += r.samples;
    it->max_violation = std::max(it->max_violation, r.max_violation);
    it->max_equality_gap = std::max(it->max_equality_gap, r.max_equality_gap);
    it->pass = it->pass && r.pass;
    if (r.near_equality) {
      it->near_equality = it->near_equality.value_or(true) && *r.near_equality;
    }
    for (const auto& w : r.witnesses) {
      if (it->witnesses.size() < kMaxWitnesses) it->witnesses.push_back(w);
    }
  }

  std::vector<PropertyReport> take() { return std::move(reports_); }

 private:
  std::vector<PropertyReport> reports_;
};

// Equality-case reports pass when both sides agree, not merely satisfy the
// inequality.
PropertyReport as_equality(PropertyReport r, std::string name) {
  r.name = std::move(name);
  r.max_violation = r.max_equality_gap;
  r.pass = r.max_violation <= r.tolerance;
  return r;
}

DiagonalTensor random_diagonal(TensorShape shape, Rng& rng, double lo, double hi) {
  std::vector<double> diag(static_cast<std::size_t>(shape.dim()));
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : diag) v = u(rng);
  return DiagonalTensor(shape, std::move(diag));
}

void run_minimax(const SuiteOptions& opts, Aggregate& out) {
  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = make_rng(opts.seed, 1, static_cast<std::uint64_t>(s));
    const Profile profile = s % 2 == 0 ? Profile::nonnegative_irreducible : Profile::positive;
    const DenseTensor a = random_tensor(sample_shape(opts, s), profile, rng);
    out.add(check_minimax(a, 1, rng(), opts.check));
  }
}

void run_monotone(const SuiteOptions& opts, Aggregate& out) {
  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = make_rng(opts.seed, 2, static_cast<std::uint64_t>(s));
    const TensorShape shape = sample_shape(opts, s);
    const DenseTensor a = random_tensor(shape, Profile::nonnegative_irreducible, rng);
    std::vector<double> bump(shape.size(), 0.0);
    std::uniform_real_distribution<double> u(0.05, 0.5);
    std::bernoulli_distribution coin(0.3);
    for (double& v : bump) {
      if (coin(rng)) v = u(rng);
    }
    bump[std::uniform_int_distribution<std::size_t>(0, shape.size() - 1)(rng)] = u(rng);
    const DenseTensor b = linear_combination(1.0, a, 1.0, DenseTensor(shape, std::move(bump)));
    out.add(check_monotonicity(a, b, opts.check));
    PropertyReport same = check_monotonicity(a, a, opts.check);
    same.name = "monotone-equality";
    out.add(same);
  }
}

void run_convexity(const SuiteOptions& opts, Aggregate& out) {
  const auto grid = default_grid();
  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = make_rng(opts.seed, 3, static_cast<std::uint64_t>(s));
    const TensorShape shape = sample_shape(opts, s);
    const DenseTensor base = random_tensor(shape, Profile::nonnegative_irreducible, rng);
    const DenseTensor a = add_diagonal(base, random_diagonal(shape, rng, -2.0, 2.0));
    const DiagonalTensor c = random_diagonal(shape, rng, 0.0, 2.0);
    const DiagonalTensor d = random_diagonal(shape, rng, 0.0, 2.0);
    out.add(check_diagonal_convexity(a, c, d, grid, opts.check));

    const double gamma = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    std::vector<double> shifted(c.diag().begin(), c.diag().end());
    for (double& v : shifted) v += gamma;
    out.add(as_equality(
        check_diagonal_convexity(a, c, DiagonalTensor(shape, std::move(shifted)), grid,
                                 opts.check),
        "diagonal-convexity-equality"));
  }
}

void run_symmetric_convexity(const SuiteOptions& opts, Aggregate& out) {
  const auto grid = default_grid();
  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = make_rng(opts.seed, 4, static_cast<std::uint64_t>(s));
    const TensorShape shape = sample_shape(opts, s);
    const DenseTensor a = random_tensor(shape, Profile::symmetric_essentially_nonnegative, rng);
    const DenseTensor b = random_tensor(shape, Profile::symmetric_essentially_nonnegative, rng);
    out.add(check_symmetric_convexity(a, b, grid, opts.check));
    out.add(as_equality(check_symmetric_convexity(a, shift(a, 3.0), grid, opts.check),
                        "symmetric-convexity-equality"));
  }
}

void run_log_convexity(const SuiteOptions& opts, Aggregate& out) {
  const auto grid = default_grid();
  constexpr double kSigmas[] = {0.5, 1.0, 3.0};
  for (int s = 0; s < opts.samples; ++s) {
    Rng rng = make_rng(opts.seed, 5, static_cast<std::uint64_t>(s));
    const TensorShape shape = sample_shape(opts, s);
    const auto [a, b] = random_pattern_pair(shape, rng);
    out.add(check_log_convexity(a, b, grid, opts.check));

    const PositiveVector d = random_positive_vector(shape.dim(), rng, 0.5, 2.0);
    const DenseTensor scaled = apply_diagonal_scaling(a, kSigmas[s % 3], d);
    out.add(as_equality(check_log_convexity(a, scaled, grid, opts.check),
                        "log-convexity-equality"));
  }
}

}  // namespace

std::vector<PropertyReport> run_suite(Suite suite, const SuiteOptions& opts) {
  if (opts.samples < 1) throw ArgumentError("samples must be >= 1");
  Aggregate out;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::minimax) run_minimax(opts, out);
  if (all || suite == Suite::monotone) run_monotone(opts, out);
  if (all || suite == Suite::convexity) run_convexity(opts, out);
  if (all || suite == Suite::symmetric_convexity) run_symmetric_convexity(opts, out);
  if (all || suite == Suite::log_convexity) run_log_convexity(opts, out);
  return out.take();
}

}  // namespace perron
