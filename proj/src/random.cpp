#include "perron/random.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "perron/errors.hpp"
#include "perron/structure.hpp"

namespace perron {

namespace {

constexpr int kMaxRejections = 1000;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename Gen>
DenseTensor until_irreducible(Gen&& gen, Profile profile) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    DenseTensor t = gen();
    if (is_irreducible(t).irreducible) return t;
  }
  throw GenerationError("could not generate a " + std::string(profile_name(profile)) +
                        " tensor after 1000 attempts");
}

// Off-diagonal entries nonzero with probability `density`; the diagonal is
// drawn from [diag_lo, diag_hi].
DenseTensor sparse_tensor(TensorShape shape, Rng& rng, double density, double diag_lo,
                          double diag_hi) {
  std::vector<double> values(shape.size(), 0.0);
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    if (shape.is_diagonal(flat)) {
      values[flat] = uniform(rng, diag_lo, diag_hi);
    } else if (coin(rng, density)) {
      values[flat] = uniform(rng, 0.05, 1.0);
    }
  }
  return DenseTensor(shape, std::move(values));
}

DenseTensor symmetric_tensor(TensorShape shape, Rng& rng) {
  std::vector<double> values(shape.size(), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(shape.order()));
  // Draw one value per sorted tuple, then copy it to every permutation.
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    shape.unravel(flat, idx);
    if (!std::is_sorted(idx.begin(), idx.end())) continue;
    if (shape.is_diagonal(flat)) {
      values[flat] = uniform(rng, -2.0, 2.0);
    } else if (coin(rng, 0.6)) {
      values[flat] = uniform(rng, 0.05, 1.0);
    }
  }
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    shape.unravel(flat, idx);
    std::sort(idx.begin(), idx.end());
    values[flat] = values[shape.offset(idx)];
  }
  return DenseTensor(shape, std::move(values));
}

}  // namespace

Profile parse_profile(std::string_view name) {
  if (name == "positive") return Profile::positive;
  if (name == "nonnegative-irreducible") return Profile::nonnegative_irreducible;
  if (name == "essentially-nonnegative") return Profile::essentially_nonnegative;
  if (name == "symmetric-essentially-nonnegative") {
    return Profile::symmetric_essentially_nonnegative;
  }
  if (name == "same-pattern-pair") return Profile::same_pattern_pair;
  throw ArgumentError("unknown profile: " + std::string(name));
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::positive: return "positive";
    case Profile::nonnegative_irreducible: return "nonnegative-irreducible";
    case Profile::essentially_nonnegative: return "essentially-nonnegative";
    case Profile::symmetric_essentially_nonnegative: return "symmetric-essentially-nonnegative";
    case Profile::same_pattern_pair: return "same-pattern-pair";
  }
  return "unknown";
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

DenseTensor random_tensor(TensorShape shape, Profile profile, Rng& rng) {
  switch (profile) {
    case Profile::positive: {
      std::vector<double> values(shape.size());
      for (double& v : values) v = uniform(rng, 0.05, 1.0);
      return DenseTensor(shape, std::move(values));
    }
    case Profile::nonnegative_irreducible:
      return until_irreducible([&] { return sparse_tensor(shape, rng, 0.4, 0.0, 1.0); },
                               profile);
    case Profile::essentially_nonnegative:
      return sparse_tensor(shape, rng, 0.5, -2.0, 2.0);
    case Profile::symmetric_essentially_nonnegative:
      return symmetric_tensor(shape, rng);
    case Profile::same_pattern_pair:
      return random_pattern_pair(shape, rng).first;
  }
  throw ArgumentError("unknown profile");
}

std::pair<DenseTensor, DenseTensor> random_pattern_pair(TensorShape shape, Rng& rng) {
  DenseTensor pattern = until_irreducible(
      [&] { return sparse_tensor(shape, rng, 0.5, 0.05, 1.0); }, Profile::same_pattern_pair);
  std::vector<double> a(shape.size(), 0.0);
  std::vector<double> b(shape.size(), 0.0);
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (pattern.values()[k] == 0.0) continue;
    a[k] = uniform(rng, 0.05, 1.0);
    b[k] = uniform(rng, 0.05, 1.0);
  }
  return {DenseTensor(shape, std::move(a)), DenseTensor(shape, std::move(b))};
}

PositiveVector random_positive_vector(int n, Rng& rng, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = uniform(rng, lo, hi);
  return PositiveVector(std::move(v));
}

}  // namespace perron
