#pragma once

// Simplicial cones pos R for linearly independent integer generators R, the
// integer points of the half-open parallelepiped par R, and Hilbert bases.

#include "icr/exact_linalg.hpp"
#include "icr/matrix.hpp"

#include <cstddef>
#include <vector>

namespace icr {

class SimplicialCone {
 public:
  // Columns of `generators` are r^1, ..., r^k. Throws InvalidArgument when
  // they are linearly dependent or k == 0.
  explicit SimplicialCone(IntMatrix generators);

  const IntMatrix& generators() const { return gens_; }
  IntVector generator(std::size_t i) const { return gens_.column(i); }
  std::size_t ambient_dim() const { return gens_.rows(); }
  std::size_t dim() const { return gens_.cols(); }
  bool full_dimensional() const { return dim() == ambient_dim(); }

  // The unique lambda with R·lambda = z. Returns false when z is outside lin R.
  bool try_coefficients(const IntVector& z, RatVector& lambda) const;

  friend bool operator==(const SimplicialCone& a, const SimplicialCone& b) { return a.gens_ == b.gens_; }

 private:
  IntMatrix gens_;
  RatMatrix left_inverse_;  // (R^T R)^{-1} R^T
};

// Throws NotInCone (coefficient npos) when z is outside lin R.
RatVector coefficients(const SimplicialCone& cone, const IntVector& z);
bool contains(const SimplicialCone& cone, const IntVector& z);
bool contains_interior(const SimplicialCone& cone, const IntVector& z);

// Coordinates of the cone inside its own lattice lin R ∩ Z^n: R = B·R' with
// B an integer basis of lin R ∩ Z^n and R' square.
struct ConeFrame {
  IntMatrix basis;   // n x k
  IntMatrix coords;  // k x k
  Integerized transform;

  IntVector to_coords(const IntVector& z) const { return transform.to_coords(z); }
  IntVector from_coords(const IntVector& x) const { return basis * x; }
};

ConeFrame frame(const SimplicialCone& cone);

// |par R|, from the elementary divisors of R'. Equals |det R| when k = n.
Int multiplicity(const SimplicialCone& cone);

struct ParallelepipedPoint {
  IntVector vector;
  RatVector lambda;  // entries in [0, 1); vector == R·lambda
};

// Integer points of the half-open parallelepiped, sorted lexicographically by
// lambda; the first point is always the origin.
struct ParallelepipedSet {
  std::vector<ParallelepipedPoint> points;
  std::size_t size() const { return points.size(); }
};

ParallelepipedSet enumerate_parallelepiped(const SimplicialCone& cone);

struct HilbertBasis {
  std::vector<IntVector> elements;
  bool contains(const IntVector& v) const;
  std::size_t size() const { return elements.size(); }
};

// Candidates are the nonzero points of par R and the primitive vectors on the
// extreme rays; a candidate is dropped when another candidate lies below it
// in the coefficient order. Primitive ray generators come first.
HilbertBasis hilbert_basis(const SimplicialCone& cone);

// pos{r^l : l != i}.
SimplicialCone facet_cone(const SimplicialCone& cone, std::size_t i);

// The orthogonal projection of the cone along r^i, expressed in integer
// coordinates of the projected lattice (lin R ∩ Z^n)|(r^i)^⊥.
struct ConeProjection {
  std::size_t along = 0;
  std::vector<std::size_t> kept;  // projected generator j is the image of r^{kept[j]}
  RatMatrix to_projected;         // (k-1) x n
  SimplicialCone cone;

  // Coordinates of z|(r^i)^⊥ in the projected lattice.
  IntVector project(const IntVector& z) const;
};

ConeProjection project_cone(const SimplicialCone& cone, std::size_t i);

}  // namespace icr
