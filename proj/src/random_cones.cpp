#include "icr/random_cones.hpp"

#include "icr/errors.hpp"
#include "icr/exact_linalg.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace icr {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw InvalidArgument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

namespace {

std::vector<long> prime_factors(long d) {
  std::vector<long> out;
  for (long p = 2; p * p <= d; ++p)
    while (d % p == 0) {
      out.push_back(p);
      d /= p;
    }
  if (d > 1) out.push_back(d);
  return out;
}

}  // namespace

IntMatrix random_cone_matrix(Rng& rng, std::size_t n, long det, bool mix) {
  if (n == 0 || det < 1) throw InvalidArgument("random_cone_matrix: need n >= 1 and det >= 1");
  std::vector<long> diag(n, 1);
  for (long p : prime_factors(det)) diag[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1))] *= p;

  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) h(i, j) = rng.uniform(0, diag[j] - 1);
  }
  if (!mix) return h;

  // Row operations keep Z^n fixed, so every lattice quantity is unchanged.
  const std::size_t steps = 2 * n;
  for (std::size_t s = 0; s < steps; ++s) {
    auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    if (a == b) continue;
    long c = rng.uniform(-1, 1);
    for (std::size_t j = 0; j < n; ++j) h(a, j) += c * h(b, j);
  }
  for (std::size_t j = n; j > 1; --j) h.swap_cols(j - 1, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(j) - 1)));
  return h;
}

IntMatrix random_nonsingular(Rng& rng, std::size_t n, long lo, long hi, long max_det) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, n, lo, hi);
    Int d = abs(det(m));
    if (d != 0 && d <= max_det) return m;
  }
}

}  // namespace icr
