#pragma once

// Classes of the dual vectors (r^i)* modulo the dual lattice (L ∩ Z^n)*, and
// the structure of the quotient (L ∩ Z^n) / R·Z^k.

#include "icr/cone.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace icr {

struct CosetProfile {
  RatMatrix duals;                  // columns (r^i)*
  std::vector<bool> integral_flags;  // (r^i)* ∈ (L ∩ Z^n)*
  // Canonical class label of (r^i)*: its pairings with the lattice basis,
  // reduced modulo 1. The zero vector labels the trivial class.
  std::vector<RatVector> representatives;
  // 0 for the trivial class, otherwise 1, 2, ... in order of first appearance.
  std::vector<std::size_t> class_of;
  std::vector<std::pair<std::size_t, std::size_t>> equal_pairs;  // i < j, same class
  std::size_t nontrivial_class_count = 0;
  IntVector elementary_divisors;  // all k of them, d_1 | d_2 | ...
  bool cyclic = true;

  // Number of generators in each nontrivial class, indexed by class - 1.
  std::vector<std::size_t> class_sizes() const;
};

CosetProfile coset_profile(const SimplicialCone& cone);

// For every pair (i, j): equal classes iff λ_i(y) = λ_j(y) for all y in par R.
bool check_lemma_coeff_equivalence(const SimplicialCone& cone);

}  // namespace icr
