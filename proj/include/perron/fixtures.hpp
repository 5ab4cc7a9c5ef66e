#pragma once

#include <string>
#include <vector>

#include "perron/tensor.hpp"

namespace perron::fixtures {

/// 3-order 3-dimensional essentially nonnegative tensor, dominant
/// eigenvalue 36.2757.
DenseTensor example1();
/// 3-order 3-dimensional irreducible tensor with dominant eigenvalue 1.
DenseTensor example2();
/// 3-order 4-dimensional reducible tensor, dominant eigenvalue 0.8225.
DenseTensor example3();

struct Fixture {
  std::string name;
  std::string comment;
  DenseTensor tensor;
};

/// The three fixtures above with their file stems ("example1", ...) and the
/// provenance note stored in the shipped documents.
std::vector<Fixture> all();

}  // namespace perron::fixtures
