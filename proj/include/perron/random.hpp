#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

#include "perron/tensor.hpp"

namespace perron {

enum class Profile {
  positive,
  nonnegative_irreducible,
  essentially_nonnegative,
  symmetric_essentially_nonnegative,
  same_pattern_pair,
};

/// Parses the hyphenated profile names ("nonnegative-irreducible", ...).
Profile parse_profile(std::string_view name);
std::string_view profile_name(Profile p);

using Rng = std::mt19937_64;

/// Independent, reproducible stream for sample `index` of a run seeded with
/// `seed`; `stream` separates unrelated consumers.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Random tensor satisfying `profile`. Irreducibility is enforced by
/// rejection; throws GenerationError after 1000 failed attempts. For
/// same_pattern_pair the first member of random_pattern_pair is returned.
DenseTensor random_tensor(TensorShape shape, Profile profile, Rng& rng);

/// Two positive-valued irreducible tensors sharing one zero pattern.
std::pair<DenseTensor, DenseTensor> random_pattern_pair(TensorShape shape, Rng& rng);

PositiveVector random_positive_vector(int n, Rng& rng, double lo = 0.1, double hi = 2.0);

}  // namespace perron
