#pragma once

// Exact integer and rational linear algebra: determinants, Smith and Hermite
// normal forms, dual bases, saturated sublattices, lattice projections and
// the change of basis that returns a projected lattice to Z^k.

#include "icr/matrix.hpp"

#include <cstddef>
#include <vector>

namespace icr {

// Fraction-free Bareiss elimination. Throws InvalidArgument for non-square input.
Int det(const IntMatrix& a);
Rat det(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

// Inverse of a nonsingular square matrix; throws InvalidArgument otherwise.
RatMatrix inverse(const RatMatrix& a);
RatMatrix inverse(const IntMatrix& a);

// Solves a·x = b for `a` of full column rank. Returns false when b lies
// outside the column span of a.
bool solve_full_column_rank(const RatMatrix& a, const RatVector& b, RatVector& x);

// U·A·V = S with S diagonal, d_1 | d_2 | ..., d_i >= 0, U and V unimodular.
struct SnfResult {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;

  // Diagonal entries d_1, ..., d_min(rows, cols).
  IntVector diagonal() const;
};

SnfResult snf(const IntMatrix& a);

// Row-style Hermite normal form: H = U·A with U unimodular and H in row
// echelon form; each pivot is positive and the entries above a pivot lie in
// [0, pivot). Unique for a given A.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
};

HnfResult hnf(const IntMatrix& a);

// Columns (r^1)*, ..., (r^k)* in lin R with (r^i)^T (r^j)* = [i == j].
// Computed as R (R^T R)^{-1}; equals R^{-T} when R is square.
RatMatrix dual_basis(const IntMatrix& r);
RatMatrix dual_basis(const RatMatrix& r);

// A lattice given by linearly independent (possibly rational) basis columns.
struct LatticeBasis {
  RatMatrix basis;

  std::size_t ambient_dim() const { return basis.rows(); }
  std::size_t rank() const { return basis.cols(); }
  bool integral() const { return is_integral(basis); }
};

// det(B^T B); the square of the lattice determinant.
Rat gram_determinant(const RatMatrix& basis);

// Integer basis of lin R ∩ Z^n, canonicalised so that equal lattices give
// equal bases (row HNF of the transposed basis).
LatticeBasis sublattice_basis(const IntMatrix& r);

// Basis of the orthogonal projection of `lattice` onto r^⊥. The primitive
// lattice vector p parallel to r is extended to a basis p, w^2, ..., w^k of
// the lattice and the projections of w^2, ..., w^k are returned.
LatticeBasis project_lattice(const LatticeBasis& lattice, const RatVector& r);
LatticeBasis project_lattice(const LatticeBasis& lattice, const IntVector& r);

// Coordinates of vectors with respect to a lattice basis, together with the
// maps between ambient space and coordinates.
struct Integerized {
  IntMatrix coords;    // k x m, column j = coordinates of input column j
  RatMatrix forward;   // k x n, ambient -> coordinates (exact on lin basis)
  RatMatrix backward;  // n x k, the basis itself

  // Throws InvalidArgument when v is outside the lattice.
  IntVector to_coords(const RatVector& v) const;
  IntVector to_coords(const IntVector& v) const;
  RatVector from_coords(const IntVector& c) const;
};

Integerized integerize(const RatMatrix& vectors, const RatMatrix& basis);

// Primitive integer vector in direction v (v / gcd(v)); v must be nonzero.
IntVector primitive(const IntVector& v);

}  // namespace icr
