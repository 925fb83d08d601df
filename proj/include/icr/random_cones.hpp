#pragma once

// Seeded generators of random integer matrices and cones with controlled
// multiplicity. Output depends only on the seed.

#include "icr/matrix.hpp"

#include <cstdint>
#include <random>

namespace icr {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi] by rejection, independent of the standard library's
  // distribution implementation.
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi);

// Upper-triangular Hermite-shaped n x n matrix with |det| = det: the diagonal
// is a random ordered factorization of det, entries above a pivot are reduced
// modulo it. With `mix`, a random bounded unimodular row transformation and a
// random column permutation are applied afterwards.
IntMatrix random_cone_matrix(Rng& rng, std::size_t n, long det, bool mix = true);

// Random square matrix with entries in [lo, hi] and nonzero determinant of
// absolute value at most max_det.
IntMatrix random_nonsingular(Rng& rng, std::size_t n, long lo, long hi, long max_det);

}  // namespace icr
