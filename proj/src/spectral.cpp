#include "perron/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "perron/errors.hpp"

namespace perron {

namespace {

// x = y^{[1/(m-1)]} / || y^{[1/(m-1)]} ||_inf
PositiveVector normalized_root(std::span<const double> y, int order) {
  for (double v : y) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::logic_error("power step produced a nonpositive component");
    }
  }
  std::vector<double> x = elementwise_power(y, 1.0 / (order - 1));
  const double top = *std::max_element(x.begin(), x.end());
  for (double& v : x) v /= top;
  return PositiveVector(std::move(x));
}

CollatzBounds ratio_bounds(std::span<const double> y, const PositiveVector& x, int order) {
  CollatzBounds b{std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double ratio = y[i] / std::pow(x[i], order - 1);
    b.lower = std::min(b.lower, ratio);
    b.upper = std::max(b.upper, ratio);
  }
  return b;
}

}  // namespace

void SolverConfig::validate(int dim) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ArgumentError("eps must be > 0");
  if (max_iter < 1) throw ArgumentError("max_iter must be >= 1");
  if (x0 && x0->size() != static_cast<std::size_t>(dim)) {
    throw ShapeError("x0 length differs from tensor dimension");
  }
  if (perturbation && (!(*perturbation >= 0.0) || !std::isfinite(*perturbation))) {
    throw ArgumentError("perturbation must be >= 0");
  }
  if (shift_override && !std::isfinite(*shift_override)) {
    throw ArgumentError("shift must be finite");
  }
}

CollatzBounds collatz_bounds(const DenseTensor& w, const PositiveVector& x) {
  if (x.size() != static_cast<std::size_t>(w.dim())) {
    throw ShapeError("vector length differs from tensor dimension");
  }
  const auto y = contract(w, x.values());
  return ratio_bounds(y, x, w.order());
}

PositiveVector power_step(const DenseTensor& w, const PositiveVector& x) {
  const auto y = contract(w, x.values());
  return normalized_root(y, w.order());
}

double default_shift(const DenseTensor& a) {
  double top = 0.0;
  for (int i = 0; i < a.dim(); ++i) top = std::max(top, std::abs(a.diagonal(i)));
  return top + 1.0;
}

DenseTensor iteration_tensor(const DenseTensor& a, double alpha, double perturbation) {
  return perturb(shift(a, alpha), perturbation);
}

double eigen_residual(const DenseTensor& a, std::span<const double> x, double lambda) {
  const auto ax = contract(a, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = ax[i] - lambda * std::pow(x[i], a.order() - 1);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

EigenResult solve_dominant(const DenseTensor& a, const SolverConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate(a.dim());
  require_essentially_nonnegative(a);

  const double alpha = cfg.shift_override.value_or(default_shift(a));
  const DenseTensor w = iteration_tensor(a, alpha, cfg.perturbation_value());
  if (!is_nonnegative(w)) {
    throw ArgumentError("shift too small: A + alpha I + E has a negative entry");
  }
  const int m = a.order();

  EigenResult result;
  result.alpha = alpha;
  PositiveVector x = cfg.x0.value_or(PositiveVector::ones(a.dim()));
  std::vector<double> y = contract(w, x.values());

  for (int k = 1; k <= cfg.max_iter; ++k) {
    x = normalized_root(y, m);
    y = contract(w, x.values());
    const CollatzBounds b = ratio_bounds(y, x, m);

    IterationRecord rec;
    rec.k = k;
    rec.lower = b.lower - alpha;
    rec.upper = b.upper - alpha;
    rec.estimate = 0.5 * (b.upper + b.lower) - alpha;
    rec.gap = b.upper - b.lower;
    rec.residual = eigen_residual(a, x.values(), rec.estimate);
    result.trace.push_back(rec);

    if (rec.gap < cfg.eps) {
      result.converged = true;
      break;
    }
  }

  result.iterations = static_cast<int>(result.trace.size());
  result.lambda = result.trace.back().estimate;
  result.eigenvector = std::move(x);
  result.cpu_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double spectral_radius(const DenseTensor& a, const SolverConfig& cfg) {
  require_nonnegative(a);
  return solve_dominant(a, cfg).lambda;
}

}  // namespace perron
