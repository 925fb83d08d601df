#pragma once

// Decomposition of integer cone points into few Hilbert basis elements by
// the projection recursion: strip a generator whose dual vector is integral,
// project along one of two generators with equal dual cosets, solve small
// cones by exact search, and use the unimodular cover for the 4-dimensional
// multiplicity-5 cone.

#include "icr/cone.hpp"
#include "icr/cosets.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace icr {

struct Term {
  Int coeff;
  IntVector vector;

  friend bool operator==(const Term&, const Term&) = default;
};

struct TraceStep {
  enum class Kind { Strip, Project, Base, Cover5 };

  Kind kind = Kind::Base;
  std::size_t i = 0;  // Strip, Project: generator index local to the node
  std::size_t j = 0;  // Project: partner index
  Int value;          // Strip: mu_i, Project: sigma
  std::size_t dim = 0;
  std::string method;        // Base: "search" or "unimodular" or "fallback"
  std::size_t subcone = 0;   // Cover5

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

std::string to_string(const TraceStep& step);

struct ReductionTrace {
  std::vector<TraceStep> steps;

  friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

struct Decomposition {
  IntVector target;
  std::vector<Term> terms;
  bool all_hilbert = false;
  ReductionTrace trace;
  // Term count as produced by the recursion, before reduce_to_hilbert.
  std::size_t raw_term_count = 0;

  std::size_t term_count() const { return terms.size(); }
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct UnimodularCover {
  IntMatrix parent;                    // generators of the covered cone
  std::vector<IntMatrix> subcones;     // columns are the subcone generators
  std::vector<std::string> labels;     // group letter and index, e.g. "B2"
  std::vector<std::size_t> generator_counts;  // how many r^i each subcone uses
  std::vector<std::size_t> order;      // order[m] = original index of relabeled r^{m+1}
  std::vector<IntVector> y;            // y^1..y^4 after relabeling
  std::vector<Int> determinants;       // in lattice coordinates
  bool unimodular = false;
  std::size_t disjoint_pairs = 0;      // pairs certified interior-disjoint
  bool disjoint = false;
  Rat volume;
  Rat expected_volume;

  bool certified() const { return unimodular && disjoint && volume == expected_volume; }
};

// Whether a^T x >= b (componentwise) has a rational solution; exact
// Fourier-Motzkin elimination.
bool feasible(const std::vector<RatVector>& a, const RatVector& b);

// Interiors of two full-dimensional simplicial cones (generator columns) meet.
bool interiors_intersect(const IntMatrix& g1, const IntMatrix& g2);

// The 18-cone unimodular cover of a 4-dimensional cone of multiplicity 5
// whose dual vectors lie in four distinct nontrivial cosets. Throws
// PreconditionFailed when the premises fail and InternalError when a
// certificate fails.
UnimodularCover build_cover_det5(const SimplicialCone& cone);

struct EngineOptions {
  std::uint64_t node_budget = 10'000'000;  // fallback search
  bool validate = true;
};

// Node budget from ICR_NODE_BUDGET when set, the default otherwise.
EngineOptions default_engine_options();

class DecompositionEngine {
 public:
  explicit DecompositionEngine(SimplicialCone cone, EngineOptions options = default_engine_options());
  ~DecompositionEngine();
  DecompositionEngine(DecompositionEngine&&) noexcept;
  DecompositionEngine& operator=(DecompositionEngine&&) noexcept;

  const SimplicialCone& cone() const { return cone_; }
  const HilbertBasis& hilbert_basis() const;

  // Throws NotInCone when z is not in the cone, Unresolved when the fallback
  // search exhausts its budget, InternalError on a violated invariant.
  Decomposition decompose(const IntVector& z) const;

  // Re-executes the recorded choices and returns the resulting decomposition;
  // throws InternalError when a recorded step does not apply or its value
  // differs.
  Decomposition replay(const IntVector& z, const ReductionTrace& trace) const;

  // Every term becomes a Hilbert basis element; terms with equal vectors merge.
  Decomposition reduce_to_hilbert(const Decomposition& d) const;

  // The cover used at the root when the root is a det-5 cone of the right kind.
  const UnimodularCover* root_cover() const;

 private:
  struct Node;
  SimplicialCone cone_;
  EngineOptions options_;
  std::unique_ptr<Node> root_;
  IntMatrix basis_;                // lattice basis of lin R ∩ Z^n
  Integerized transform_;
  mutable std::unique_ptr<HilbertBasis> hb_;
  mutable std::unique_ptr<UnimodularCover> cover_;
};

Decomposition decompose(const SimplicialCone& cone, const IntVector& z);
Decomposition replay(const SimplicialCone& cone, const IntVector& z, const ReductionTrace& trace);
Decomposition reduce_to_hilbert(const SimplicialCone& cone, const Decomposition& d);

// Exact search with at most dim terms; requires dim <= 3.
Decomposition base_case_solve(const SimplicialCone& cone, const IntVector& z);

Decomposition decompose_det5(const SimplicialCone& cone, const IntVector& z);

// Sum of coeff·vector equals target, every coefficient >= 1 and every vector
// lies in the cone. Throws InternalError otherwise.
void validate(const SimplicialCone& cone, const Decomposition& d);

struct IcrBound {
  Int value;
  std::string method;  // "sebo-dim3", "theorem1", "corollary", "theorem2", "sebo-2n-2"
};

IcrBound icr_upper_bound(const SimplicialCone& cone);

// Throws NotInCone naming the first negative coefficient.
void require_in_cone(const SimplicialCone& cone, const IntVector& z);

}  // namespace icr
