#pragma once

#include <string>

#include "mink/matrix_io.hpp"
#include "mink/verify.hpp"

namespace mink::testing {

inline Matrix fixture(const std::string& name) {
  return read_matrix_file(std::string(MINK_FIXTURE_DIR) + "/" + name + ".json");
}

inline Matrix real_matrix(Index rows, Index cols, std::initializer_list<double> values) {
  Matrix out(rows, cols);
  auto it = values.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = *it++;
  }
  return out;
}

// Gaussian matrix of the given rank.
inline Matrix random_rank(Index rows, Index cols, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return rng.gaussian(rows, rank) * rng.gaussian(rank, cols);
}

inline Matrix existent(Index rows, Index cols, Index rank, std::uint64_t seed,
                       double scale = 1.0) {
  GenSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.rank = rank;
  spec.seed = seed;
  spec.scale = scale;
  return generate(spec);
}

}  // namespace mink::testing
