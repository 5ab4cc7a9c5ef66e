#pragma once

#include <optional>
#include <vector>

#include "perron/tensor.hpp"

namespace perron {

struct SolverConfig {
  /// Stopping threshold on G(x) - F(x); also the perturbation size unless
  /// `perturbation` is set.
  double eps = 1e-9;
  int max_iter = 1000;
  /// Starting iterate; all-ones when absent.
  std::optional<PositiveVector> x0;
  /// Shift alpha; max_i |A_{i...i}| + 1 when absent.
  std::optional<double> shift_override;
  /// Entry added to every element of the shifted tensor; defaults to eps.
  std::optional<double> perturbation;

  double perturbation_value() const { return perturbation.value_or(eps); }
  /// Throws ArgumentError on an invalid field.
  void validate(int dim) const;
};

/// Row k of the iteration trace. Bounds and estimate are reported for the
/// original tensor, i.e. with the shift already subtracted.
struct IterationRecord {
  int k = 0;
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  double gap = 0.0;
  /// || A x^{m-1} - estimate * x^{[m-1]} ||_inf
  double residual = 0.0;
};

struct EigenResult {
  double lambda = 0.0;
  /// Sup-norm normalized: the largest component is exactly 1.
  PositiveVector eigenvector = PositiveVector::ones(1);
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> trace;
  /// Shift alpha used to build the positive iteration tensor.
  double alpha = 0.0;
  /// Informational wall time of the solve.
  double cpu_seconds = 0.0;
};

/// Collatz-type bounds min_i / max_i of (W x^{m-1})_i / x_i^{m-1}.
struct CollatzBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// For nonnegative W, lower <= rho(W) <= upper.
CollatzBounds collatz_bounds(const DenseTensor& w, const PositiveVector& x);

/// One normalized power step: (W x^{m-1})^{[1/(m-1)]} scaled to sup-norm 1.
/// Throws std::logic_error if W x^{m-1} has a nonpositive component.
PositiveVector power_step(const DenseTensor& w, const PositiveVector& x);

/// The shift alpha that solve_dominant uses for `a`.
double default_shift(const DenseTensor& a);

/// Iteration tensor W = A + alpha I + E.
DenseTensor iteration_tensor(const DenseTensor& a, double alpha, double perturbation);

/// Dominant eigenvalue of an essentially nonnegative tensor by shifted,
/// perturbed power iteration on W = A + alpha I + E. Stops once
/// G - F < eps; running out of iterations is reported through
/// `converged == false`, not an exception. Throws SignError if A has a
/// negative off-diagonal entry.
EigenResult solve_dominant(const DenseTensor& a, const SolverConfig& cfg = {});

/// Spectral radius of a nonnegative tensor. Throws SignError on any
/// negative entry.
double spectral_radius(const DenseTensor& a, const SolverConfig& cfg = {});

/// || A x^{m-1} - lambda x^{[m-1]} ||_inf
double eigen_residual(const DenseTensor& a, std::span<const double> x, double lambda);

}  // namespace perron
