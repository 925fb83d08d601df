#pragma once

// Brute-force ground truth: minimal number of Hilbert basis elements for a
// point, the maximum of that number over a sample region, and an independent
// re-check of the det-5 cover.

#include "icr/cone.hpp"
#include "icr/decomposition.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace icr {

struct OracleOptions {
  std::uint64_t node_budget = 10'000'000;
};

// Budget from ICR_NODE_BUDGET when set.
OracleOptions default_oracle_options();

struct OracleReport {
  enum class Status { Exact, Inconclusive };

  IntVector target;
  Status status = Status::Inconclusive;
  std::size_t min_terms = 0;  // meaningful when Exact
  Decomposition witness;
  std::uint64_t nodes = 0;
  std::size_t bound = 0;  // largest subset size searched
};

// Iterative deepening over subsets of the Hilbert basis, coefficients bounded
// by the generator coefficients of z. Throws NotInCone for z outside the cone.
OracleReport min_terms(const SimplicialCone& cone, const IntVector& z, OracleOptions options = default_oracle_options());

struct SamplePoint {
  IntVector z;
  std::size_t min_terms = 0;
};

struct SampleReport {
  long dilation = 0;
  std::size_t max_min_terms = 0;
  std::vector<SamplePoint> points;     // every z = y + Σ a_i r^i, y ∈ par R, a ∈ {0..B-1}^k
  std::vector<Decomposition> worst;    // witnesses attaining the maximum
};

// Exact minima over the whole sample by dynamic programming over the region
// {λ(z) ∈ [0, B)^k}, which is closed under subtracting cone points.
SampleReport sample_icp(const SimplicialCone& cone, long dilation);

// The sample points z = y + Σ a_i r^i in a fixed order.
std::vector<IntVector> sample_points(const SimplicialCone& cone, long dilation);

struct CoverVerification {
  bool ok = false;
  std::vector<std::string> failures;
  Rat volume;
  std::size_t disjoint_pairs = 0;
  std::size_t sampled_points = 0;
};

// Re-checks unimodularity, interior-disjointness (separating hyperplanes),
// the volume identity, that subcone generators are Hilbert basis elements,
// and that every point of the 2-dilated sample lies in some subcone.
CoverVerification verify_cover(const UnimodularCover& cover, const SimplicialCone& cone);

}  // namespace icr
