#pragma once

// Skew-vector cones (e^1, ..., e^{n-1}, r), the Gorenstein-type premise with
// its minimal coefficient vector, and the p,q example cone.

#include "icr/cone.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace icr {

struct SkewVectorSpec {
  std::size_t n = 0;
  IntVector r;       // r_i reduced modulo Δ for i < n, r_n = Δ
  IntVector r_input;  // as given
  Int delta;
  std::set<Int> values;  // I = {r_i : i < n}
  bool hypothesis = false;  // |I \ {0, Δ-1}| <= 2
};

struct SkewCone {
  SimplicialCone cone;
  SkewVectorSpec spec;
};

// Throws InvalidArgument when r has fewer than 2 entries or r_n < 1.
SkewCone make_skew_cone(const IntVector& r);

struct SkewCheck {
  bool ok = false;  // every cross-check holds
  std::size_t nontrivial_classes = 0;
  std::vector<std::string> failures;
};

// Confirms: nontrivial classes <= 3 iff the hypothesis holds; (r^i)* integral
// iff r_i = 0; non-integral i, j < n share a class iff r_i = r_j; j shares
// the class of r^n iff r_j = Δ - 1.
SkewCheck check_prop_skew(const SkewVectorSpec& spec);

struct GorensteinCheck {
  RatVector lambda;     // λ_k = min{μ_k : μ in the lattice cone, μ_k != 0}
  RatVector y_rational;  // Rλ
  IntVector y;           // valid when y_integral
  bool y_integral = false;
  bool y_interior = false;
  bool y_in_par = false;
  bool covering_sampled = false;  // z - y ∈ pos R for every interior sample z
  std::size_t sampled_interior = 0;
  bool premise_holds = false;  // integral, interior and sampled covering
  std::size_t divisor_count = 0;
  bool cyclic = false;
};

// Throws PreconditionFailed for cones that are not full-dimensional.
GorensteinCheck gorenstein_check(const SimplicialCone& cone, long dilation = 2);

struct PqCone {
  SimplicialCone cone;
  long p = 0, q = 0, k = 0, l = 0;
};

// Rows (1,0,l,k), (0,1,l,k), (0,0,p,0), (0,0,0,q) with kp + lq = pq - 1.
// Throws InvalidArgument unless p and q are distinct primes.
PqCone make_pq_cone(long p, long q);

// The Hermite normal form is (e^1, ..., e^{n-1}, r) for some r.
bool has_skew_shape(const IntMatrix& h);

// The Hermite normal form of the generator matrix, in the given column order,
// is not of skew shape.
bool pq_not_skew(const SimplicialCone& cone);

struct SkewReordering {
  std::vector<std::size_t> order;  // generator order whose HNF has skew shape
  IntVector r;                     // last column of that HNF
};

// First generator order (lexicographic) with a skew-shaped HNF, if any.
std::optional<SkewReordering> skew_reordering(const SimplicialCone& cone);

std::size_t divisor_count(const Int& m);

}  // namespace icr
