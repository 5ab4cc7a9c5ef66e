#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perron/spectral.hpp"
#include "perron/tensor.hpp"

namespace perron {

/// Relative slack for the minimax sandwich.
inline constexpr double kMinimaxTolerance = 1e-8;
/// Absolute slack for non-strict monotonicity.
inline constexpr double kMonotoneTolerance = 1e-8;
/// Required margin rho(B) - rho(A) when strict monotonicity applies.
inline constexpr double kStrictMargin = 1e-10;
/// Relative slack for the convexity and log-convexity inequalities.
inline constexpr double kConvexityTolerance = 1e-7;
/// Threshold for "D - C is a multiple of the unit tensor" and for
/// near-equality of the two sides of the diagonal convexity bound.
inline constexpr double kEqualityThreshold = 1e-9;
/// Relative slack for shift equivariance of the dominant eigenvalue.
inline constexpr double kShiftTolerance = 2e-9;

/// Outcome of one property check. `max_violation` is measured in the units
/// of `tolerance` (relative or absolute as documented per checker) and
/// `pass` holds iff max_violation <= tolerance.
struct PropertyReport {
  std::string name;
  int samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Largest two-sided relative discrepancy between the compared sides.
  double max_equality_gap = 0.0;
  /// Set by checkers with an equality detector.
  std::optional<bool> near_equality;
  /// Serialized failing inputs (at most a handful).
  std::vector<std::string> witnesses;
};

/// (sigma, d) with B = sigma A D^{-(m-1)} D ... D.
struct ScalingCertificate {
  double sigma = 1.0;
  PositiveVector d = PositiveVector::ones(1);
};

struct CheckOptions {
  SolverConfig solver = default_solver();

  static SolverConfig default_solver() {
    SolverConfig cfg;
    cfg.max_iter = 100000;
    return cfg;
  }
};

/// The grid {0, 0.1, ..., 1}.
std::vector<double> default_grid();

/// F(x) <= rho(A) <= G(x) for `trials` random positive x drawn from `seed`.
/// Violation is relative to max(1, rho). Throws SignError for negative A.
PropertyReport check_minimax(const DenseTensor& a, int trials, std::uint64_t seed,
                             const CheckOptions& opts = {});

/// rho(A) <= rho(B) for nonnegative A <= B; strictly (margin kStrictMargin)
/// when both are irreducible and differ. Violation is rho(A) - rho(B); the
/// tolerance is kMonotoneTolerance, or -kStrictMargin in the strict case.
/// Throws ArgumentError unless A <= B entrywise.
PropertyReport check_monotonicity(const DenseTensor& a, const DenseTensor& b,
                                  const CheckOptions& opts = {});

/// lambda(A + tC + (1-t)D) <= t lambda(A + C) + (1-t) lambda(A + D) on each
/// grid point; also reports near-equality.
PropertyReport check_diagonal_convexity(const DenseTensor& a, const DiagonalTensor& c,
                                        const DiagonalTensor& d, std::span<const double> grid,
                                        const CheckOptions& opts = {});

/// lambda(tA + (1-t)B) <= t lambda(A) + (1-t) lambda(B) for symmetric
/// essentially nonnegative A, B. Throws ArgumentError on asymmetric input.
PropertyReport check_symmetric_convexity(const DenseTensor& a, const DenseTensor& b,
                                         std::span<const double> grid,
                                         const CheckOptions& opts = {});

/// Tensor path t -> F(t), compared against the geometric path G(t).
using TensorPath = std::function<DenseTensor(double)>;

/// rho(G(t)) <= rho(A)^{1-t} rho(B)^t with G(t) = A^{1-t} B^t entrywise,
/// plus rho(F(t)) <= rho(G(t)) for an optional entrywise log-convex path F.
/// Requires irreducible nonnegative A, B with identical zero patterns.
PropertyReport check_log_convexity(const DenseTensor& a, const DenseTensor& b,
                                   std::span<const double> grid,
                                   const CheckOptions& opts = {},
                                   const TensorPath& path = {});

/// |lambda(A + bI) - lambda(A) - b| for each shift, relative to
/// max(1, |lambda(A)|).
PropertyReport check_shift_equivariance(const DenseTensor& a, std::span<const double> shifts,
                                        const CheckOptions& opts = {});

/// Entrywise A^{1-t} B^t.
DenseTensor geometric_path(const DenseTensor& a, const DenseTensor& b, double t);

/// gamma with ||(D - C) - gamma I||_inf <= threshold, gamma the mean
/// diagonal difference; nullopt when no such gamma exists.
std::optional<double> scalar_shift_between(const DiagonalTensor& c, const DiagonalTensor& d,
                                           double threshold = kEqualityThreshold);

/// Recovers (sigma, d) with B = apply_diagonal_scaling(A, sigma, d) from the
/// Perron vectors x of A and y of B (sigma = rho(B)/rho(A), d = x/y), and
/// returns it only if it reproduces B to `rel_tol` relative accuracy.
std::optional<ScalingCertificate> find_scaling_certificate(const DenseTensor& a,
                                                           const DenseTensor& b,
                                                           double rel_tol = 1e-6,
                                                           const CheckOptions& opts = {});

enum class Suite { minimax, monotone, convexity, symmetric_convexity, log_convexity, all };

/// Accepts minimax, monotone, convexity, symmetric-convexity, logconvexity, all.
Suite parse_suite(std::string_view name);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int samples = 100;
  /// Fixed shape; when absent, samples cycle through n in {2,3,4} and
  /// m in {3,4}.
  std::optional<int> order;
  std::optional<int> dim;
  CheckOptions check;
};

/// Runs `samples` seeded random instances per check and aggregates one
/// report per check name, in a fixed order.
std::vector<PropertyReport> run_suite(Suite suite, const SuiteOptions& opts);

}  // namespace perron
