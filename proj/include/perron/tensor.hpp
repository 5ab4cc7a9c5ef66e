#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace perron {

/// Order m (number of indices) and dimension n (range of each index) of a
/// square tensor.
class TensorShape {
 public:
  /// Throws ShapeError unless order >= 2, dim >= 1 and dim^order fits the
  /// dense storage limit.
  TensorShape(int order, int dim);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  /// dim^order.
  std::size_t size() const noexcept { return size_; }

  /// Flat offset of a 0-based index tuple, first index varying slowest.
  std::size_t offset(std::span<const int> index) const;
  /// Inverse of offset(); writes `order` 0-based indices.
  void unravel(std::size_t flat, std::span<int> index) const;
  /// Offset of the constant tuple (i, i, ..., i).
  std::size_t diagonal_offset(int i) const noexcept;
  /// True iff the tuple at `flat` is constant.
  bool is_diagonal(std::size_t flat) const noexcept;

  friend bool operator==(const TensorShape& a, const TensorShape& b) noexcept {
    return a.order_ == b.order_ && a.dim_ == b.dim_;
  }

 private:
  int order_;
  int dim_;
  std::size_t size_;
  std::size_t diagonal_stride_;
};

/// Dense m-order n-dimensional real tensor. Values are stored flat with the
/// first index varying slowest and are immutable after construction.
class DenseTensor {
 public:
  /// Throws ShapeError on a length mismatch and ArgumentError on a
  /// non-finite entry.
  DenseTensor(TensorShape shape, std::vector<double> values);

  static DenseTensor zeros(TensorShape shape);

  const TensorShape& shape() const noexcept { return shape_; }
  int order() const noexcept { return shape_.order(); }
  int dim() const noexcept { return shape_.dim(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry at a 0-based index tuple.
  double at(std::span<const int> index) const;
  double at(std::initializer_list<int> index) const;
  /// A_{i...i}, 0-based i.
  double diagonal(int i) const { return values_[shape_.diagonal_offset(i)]; }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) noexcept {
    return a.shape_ == b.shape_ && a.values_ == b.values_;
  }

 private:
  TensorShape shape_;
  std::vector<double> values_;
};

/// Tensor whose only nonzero entries sit on constant index tuples.
class DiagonalTensor {
 public:
  DiagonalTensor(TensorShape shape, std::vector<double> diag);

  /// The unit tensor: ones on the diagonal.
  static DiagonalTensor unit(TensorShape shape);

  const TensorShape& shape() const noexcept { return shape_; }
  std::span<const double> diag() const noexcept { return diag_; }

  DenseTensor to_dense() const;

 private:
  TensorShape shape_;
  std::vector<double> diag_;
};

/// Vector in the open positive orthant.
class PositiveVector {
 public:
  /// Throws ArgumentError if any component is not finite and > 0.
  explicit PositiveVector(std::vector<double> values);

  static PositiveVector ones(int n);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

DenseTensor unit_tensor(int order, int dim);

/// (A x^{m-1})_i = sum A_{i i2...im} x_{i2} ... x_{im}.
std::vector<double> contract(const DenseTensor& a, std::span<const double> x);

/// (x_i^p)_i. Throws DomainError for a negative base with non-integer p.
std::vector<double> elementwise_power(std::span<const double> x, double p);

/// A + b I.
DenseTensor shift(const DenseTensor& a, double b);
/// A + E where every entry of E equals eps (eps >= 0).
DenseTensor perturb(const DenseTensor& a, double eps);
/// c A.
DenseTensor scale(const DenseTensor& a, double c);
/// a A + b B.
DenseTensor linear_combination(double a, const DenseTensor& x, double b,
                               const DenseTensor& y);
/// A + D.
DenseTensor add_diagonal(const DenseTensor& a, const DiagonalTensor& d);

/// Relabels indices: result_{p(i1)...p(im)} = A_{i1...im}, with `perm` a
/// 0-based permutation of {0, ..., n-1}.
DenseTensor relabel(const DenseTensor& a, std::span<const int> perm);

/// B_{i1...im} = sigma A_{i1...im} d_{i1}^{-(m-1)} d_{i2} ... d_{im}.
DenseTensor apply_diagonal_scaling(const DenseTensor& a, double sigma,
                                   const PositiveVector& d);

bool is_essentially_nonnegative(const DenseTensor& a);
bool is_nonnegative(const DenseTensor& a);
/// Invariance of every entry under all permutations of its index tuple.
bool is_symmetric(const DenseTensor& a);
/// True iff both tensors have the same shape and zero pattern.
bool same_zero_pattern(const DenseTensor& a, const DenseTensor& b);

/// Throws SignError naming the first negative off-diagonal entry.
void require_essentially_nonnegative(const DenseTensor& a);
/// Throws SignError naming the first negative entry.
void require_nonnegative(const DenseTensor& a);

}  // namespace perron
