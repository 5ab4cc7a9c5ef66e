#pragma once

#include <optional>
#include <vector>

#include "perron/tensor.hpp"

namespace perron {

/// Subset of {0, ..., n-1}.
class IndexSet {
 public:
  explicit IndexSet(int dim) : members_(static_cast<std::size_t>(dim), false) {}
  IndexSet(int dim, std::initializer_list<int> elements);

  static IndexSet all(int dim);

  int dim() const noexcept { return static_cast<int>(members_.size()); }
  bool contains(int i) const { return members_[static_cast<std::size_t>(i)]; }
  void insert(int i) { members_[static_cast<std::size_t>(i)] = true; }
  int count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool is_subset_of(const IndexSet& other) const;
  IndexSet complement() const;
  /// Sorted 0-based members.
  std::vector<int> elements() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<bool> members_;
};

struct ReducibilityReport {
  bool irreducible = false;
  /// Nonempty proper I with A_{i1...im} = 0 for all i1 in I and all
  /// i2, ..., im outside I. Present iff the tensor is reducible.
  std::optional<IndexSet> witness;
};

/// { i : some nonzero A_{i i2...im} has all of i2, ..., im in J }.
IndexSet reach_set(const DenseTensor& a, const IndexSet& j);

/// True iff `candidate` is a reducing set of `a` (checked by direct scan).
bool is_reducing_set(const DenseTensor& a, const IndexSet& candidate);

/// Decides irreducibility. Entries count as zero only when exactly 0.0;
/// diagonal entries never affect the verdict.
ReducibilityReport is_irreducible(const DenseTensor& a);

}  // namespace perron
