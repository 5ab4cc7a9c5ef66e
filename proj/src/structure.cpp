#include "perron/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "perron/errors.hpp"

namespace perron {

IndexSet::IndexSet(int dim, std::initializer_list<int> elements) : IndexSet(dim) {
  for (int i : elements) {
    if (i < 0 || i >= dim) throw ShapeError("index set element out of range");
    insert(i);
  }
}

IndexSet IndexSet::all(int dim) {
  IndexSet s(dim);
  s.members_.assign(static_cast<std::size_t>(dim), true);
  return s;
}

int IndexSet::count() const noexcept {
  return static_cast<int>(std::count(members_.begin(), members_.end(), true));
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  if (other.dim() != dim()) throw ShapeError("index sets have different dimensions");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] && !other.members_[i]) return false;
  }
  return true;
}

IndexSet IndexSet::complement() const {
  IndexSet s(dim());
  for (std::size_t i = 0; i < members_.size(); ++i) s.members_[i] = !members_[i];
  return s;
}

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

IndexSet reach_set(const DenseTensor& a, const IndexSet& j) {
  if (j.dim() != a.dim()) throw ShapeError("index set dimension differs from tensor");
  const auto& shape = a.shape();
  const auto n = static_cast<std::size_t>(a.dim());
  const std::size_t tail = shape.size() / n;
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  IndexSet out(a.dim());
  for (std::size_t lead = 0; lead < n; ++lead) {
    for (std::size_t t = 0; t < tail; ++t) {
      const std::size_t flat = lead * tail + t;
      if (a.values()[flat] == 0.0) continue;
      shape.unravel(flat, idx);
      if (std::all_of(idx.begin() + 1, idx.end(), [&](int i) { return j.contains(i); })) {
        out.insert(static_cast<int>(lead));
        break;
      }
    }
  }
  return out;
}

bool is_reducing_set(const DenseTensor& a, const IndexSet& candidate) {
  const int count = candidate.count();
  if (count == 0 || count == a.dim()) return false;
  const auto& shape = a.shape();
  std::vector<int> idx(static_cast<std::size_t>(a.order()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    if (a.values()[flat] == 0.0) continue;
    shape.unravel(flat, idx);
    if (!candidate.contains(idx[0])) continue;
    if (std::none_of(idx.begin() + 1, idx.end(), [&](int i) { return candidate.contains(i); })) {
      return false;
    }
  }
  return true;
}

ReducibilityReport is_irreducible(const DenseTensor& a) {
  const int n = a.dim();
  // A reducing set I exists iff some nonempty proper J = I^c satisfies
  // reach_set(J) ⊆ J. Any such J contains the closure of each of its
  // singletons, so checking the n singleton closures is complete.
  for (int seed = 0; seed < n; ++seed) {
    IndexSet closure(n, {seed});
    for (;;) {
      IndexSet grown = reach_set(a, closure);
      for (int i : closure.elements()) grown.insert(i);
      if (grown == closure) break;
      closure = std::move(grown);
    }
    if (closure.count() < n) {
      IndexSet witness = closure.complement();
      if (!is_reducing_set(a, witness)) {
        throw std::logic_error("reducibility witness failed verification");
      }
      return {false, std::move(witness)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace perron
