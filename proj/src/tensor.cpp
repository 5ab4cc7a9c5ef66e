#include "perron/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "perron/errors.hpp"

namespace perron {

namespace {

// Upper bound on dense storage (2^26 doubles, 512 MiB).
constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

std::vector<int> one_based(std::span<const int> index) {
  std::vector<int> out(index.begin(), index.end());
  for (int& i : out) ++i;
  return out;
}

std::string format_index(std::span<const int> one_based_index) {
  std::string s = "(";
  for (std::size_t k = 0; k < one_based_index.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(one_based_index[k]);
  }
  return s + ")";
}

void require_same_shape(const TensorShape& a, const TensorShape& b) {
  if (!(a == b)) throw ShapeError("tensor shapes differ");
}

}  // namespace

TensorShape::TensorShape(int order, int dim) : order_(order), dim_(dim) {
  if (order < 2) throw ShapeError("tensor order must be >= 2");
  if (dim < 1) throw ShapeError("tensor dimension must be >= 1");
  size_ = 1;
  for (int k = 0; k < order; ++k) {
    if (size_ > kMaxEntries / static_cast<std::size_t>(dim)) {
      throw ShapeError("tensor too large for dense storage");
    }
    size_ *= static_cast<std::size_t>(dim);
  }
  // offset(i,...,i) = i * (n^{m-1} + ... + n + 1)
  diagonal_stride_ = (size_ - 1) / static_cast<std::size_t>(std::max(dim - 1, 1));
  if (dim == 1) diagonal_stride_ = 0;
}

std::size_t TensorShape::offset(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(order_)) {
    throw ShapeError("index tuple length differs from tensor order");
  }
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw ShapeError("index out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return flat;
}

void TensorShape::unravel(std::size_t flat, std::span<int> index) const {
  for (int k = order_ - 1; k >= 0; --k) {
    index[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
}

std::size_t TensorShape::diagonal_offset(int i) const noexcept {
  return static_cast<std::size_t>(i) * diagonal_stride_;
}

bool TensorShape::is_diagonal(std::size_t flat) const noexcept {
  if (dim_ == 1) return true;
  return flat % diagonal_stride_ == 0;
}

DenseTensor::DenseTensor(TensorShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw ShapeError("value count " + std::to_string(values_.size()) +
                     " differs from dim^order = " + std::to_string(shape_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("tensor entries must be finite");
  }
}

DenseTensor DenseTensor::zeros(TensorShape shape) {
  return DenseTensor(shape, std::vector<double>(shape.size(), 0.0));
}

double DenseTensor::at(std::span<const int> index) const {
  return values_[shape_.offset(index)];
}

double DenseTensor::at(std::initializer_list<int> index) const {
  return at(std::span<const int>(index.begin(), index.size()));
}

DiagonalTensor::DiagonalTensor(TensorShape shape, std::vector<double> diag)
    : shape_(shape), diag_(std::move(diag)) {
  if (diag_.size() != static_cast<std::size_t>(shape_.dim())) {
    throw ShapeError("diagonal length differs from tensor dimension");
  }
  for (double v : diag_) {
    if (!std::isfinite(v)) throw ArgumentError("diagonal entries must be finite");
  }
}

DiagonalTensor DiagonalTensor::unit(TensorShape shape) {
  return DiagonalTensor(shape, std::vector<double>(static_cast<std::size_t>(shape.dim()), 1.0));
}

DenseTensor DiagonalTensor::to_dense() const {
  std::vector<double> values(shape_.size(), 0.0);
  for (int i = 0; i < shape_.dim(); ++i) {
    values[shape_.diagonal_offset(i)] = diag_[static_cast<std::size_t>(i)];
  }
  return DenseTensor(shape_, std::move(values));
}

PositiveVector::PositiveVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("positive vector must be nonempty");
  for (double v : values_) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw ArgumentError("positive vector components must be finite and > 0");
    }
  }
}

PositiveVector PositiveVector::ones(int n) {
  return PositiveVector(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

DenseTensor unit_tensor(int order, int dim) {
  return DiagonalTensor::unit(TensorShape(order, dim)).to_dense();
}

std::vector<double> contract(const DenseTensor& a, std::span<const double> x) {
  const auto n = static_cast<std::size_t>(a.dim());
  if (x.size() != n) throw ShapeError("vector length differs from tensor dimension");

  // Contract the trailing mode repeatedly: n^m -> n^{m-1} -> ... -> n.
  // Summation order per output component is fixed, so results are
  // reproducible bit for bit.
  std::span<const double> src = a.values();
  std::vector<double> buf;
  std::vector<double> next;
  for (int mode = a.order() - 1; mode >= 1; --mode) {
    const std::size_t rows = src.size() / n;
    next.assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = src.data() + r * n;
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
      next[r] = acc;
    }
    buf.swap(next);
    src = buf;
  }
  return buf;
}

std::vector<double> elementwise_power(std::span<const double> x, double p) {
  const bool integral = std::isfinite(p) && std::floor(p) == p;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!integral && x[i] < 0.0) {
      throw DomainError("fractional power of a negative component");
    }
    out[i] = p == 0.5 ? std::sqrt(x[i]) : std::pow(x[i], p);
  }
  return out;
}

DenseTensor shift(const DenseTensor& a, double b) {
  std::vector<double> values(a.values().begin(), a.values().end());
  for (int i = 0; i < a.dim(); ++i) values[a.shape().diagonal_offset(i)] += b;
  return DenseTensor(a.shape(), std::move(values));
}

DenseTensor perturb(const DenseTensor& a, double eps) {
  if (!(eps >= 0.0)) throw ArgumentError("perturbation must be >= 0");
  std::vector<double> values(a.values().begin(), a.values().end());
  for (double& v : values) v += eps;
  return DenseTensor(a.shape(), std::move(values));
}

DenseTensor scale(const DenseTensor& a, double c) {
  std::vector<double> values(a.values().begin(), a.values().end());
  for (double& v : values) v *= c;
  return DenseTensor(a.shape(), std::move(values));
}

DenseTensor linear_combination(double a, const DenseTensor& x, double b,
                               const DenseTensor& y) {
  require_same_shape(x.shape(), y.shape());
  std::vector<double> values(x.shape().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = a * x.values()[k] + b * y.values()[k];
  }
  return DenseTensor(x.shape(), std::move(values));
}

DenseTensor add_diagonal(const DenseTensor& a, const DiagonalTensor& d) {
  require_same_shape(a.shape(), d.shape());
  std::vector<double> values(a.values().begin(), a.values().end());
  for (int i = 0; i < a.dim(); ++i) {
    values[a.shape().diagonal_offset(i)] += d.diag()[static_cast<std::size_t>(i)];
  }
  return DenseTensor(a.shape(), std::move(values));
}

DenseTensor relabel(const DenseTensor& a, std::span<const int> perm) {
  const int n = a.dim();
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("permutation length differs from tensor dimension");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw ArgumentError("not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  const auto& shape = a.shape();
  std::vector<double> values(shape.size());
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    shape.unravel(flat, idx);
    for (int& i : idx) i = perm[static_cast<std::size_t>(i)];
    values[shape.offset(idx)] = a.values()[flat];
  }
  return DenseTensor(shape, std::move(values));
}

DenseTensor apply_diagonal_scaling(const DenseTensor& a, double sigma,
                                   const PositiveVector& d) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("scaling factor sigma must be > 0");
  }
  if (d.size() != static_cast<std::size_t>(a.dim())) {
    throw ShapeError("scaling vector length differs from tensor dimension");
  }
  const auto& shape = a.shape();
  const int m = a.order();
  std::vector<double> values(shape.size());
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    const double v = a.values()[flat];
    if (v == 0.0) {
      values[flat] = v;
      continue;
    }
    shape.unravel(flat, idx);
    // Ratios d_{ik}/d_{i1} keep the constant-tuple factor at exactly 1.
    const double lead = d[static_cast<std::size_t>(idx[0])];
    double factor = 1.0;
    for (int k = 1; k < m; ++k) {
      const int ik = idx[static_cast<std::size_t>(k)];
      if (ik != idx[0]) factor *= d[static_cast<std::size_t>(ik)] / lead;
    }
    values[flat] = sigma == 1.0 ? v * factor : sigma * v * factor;
  }
  return DenseTensor(shape, std::move(values));
}

bool is_essentially_nonnegative(const DenseTensor& a) {
  const auto& shape = a.shape();
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    if (a.values()[flat] < 0.0 && !shape.is_diagonal(flat)) return false;
  }
  return true;
}

bool is_nonnegative(const DenseTensor& a) {
  return std::none_of(a.values().begin(), a.values().end(),
                      [](double v) { return v < 0.0; });
}

bool is_symmetric(const DenseTensor& a) {
  const auto& shape = a.shape();
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    shape.unravel(flat, idx);
    std::sort(idx.begin(), idx.end());
    // Every tuple must match the canonical (sorted) representative.
    if (a.values()[shape.offset(idx)] != a.values()[flat]) return false;
  }
  return true;
}

bool same_zero_pattern(const DenseTensor& a, const DenseTensor& b) {
  if (!(a.shape() == b.shape())) return false;
  for (std::size_t k = 0; k < a.shape().size(); ++k) {
    if ((a.values()[k] == 0.0) != (b.values()[k] == 0.0)) return false;
  }
  return true;
}

void require_essentially_nonnegative(const DenseTensor& a) {
  const auto& shape = a.shape();
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    if (a.values()[flat] < 0.0 && !shape.is_diagonal(flat)) {
      shape.unravel(flat, idx);
      auto index = one_based(idx);
      const std::string what =
          "tensor is not essentially nonnegative: negative off-diagonal entry at " +
          format_index(index);
      throw SignError(what, std::move(index));
    }
  }
}

void require_nonnegative(const DenseTensor& a) {
  const auto& shape = a.shape();
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    if (a.values()[flat] < 0.0) {
      shape.unravel(flat, idx);
      auto index = one_based(idx);
      const std::string what = "tensor is not nonnegative: negative entry at " + format_index(index);
      throw SignError(what, std::move(index));
    }
  }
}

}  // namespace perron
