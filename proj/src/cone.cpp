#include "icr/cone.hpp"

#include "icr/errors.hpp"

#include <algorithm>

namespace icr {

SimplicialCone::SimplicialCone(IntMatrix generators) : gens_(std::move(generators)) {
  if (gens_.cols() == 0) throw InvalidArgument("cone needs at least one generator");
  if (gens_.cols() > gens_.rows()) throw InvalidArgument("more generators than ambient dimension");
  RatMatrix r = to_rational(gens_);
  RatMatrix rt = r.transposed();
  RatMatrix gram = rt * r;
  if (sgn(det(gram)) == 0) throw InvalidArgument("generators are linearly dependent");
  left_inverse_ = inverse(gram) * rt;
}

bool SimplicialCone::try_coefficients(const IntVector& z, RatVector& lambda) const {
  if (z.size() != ambient_dim()) throw InvalidArgument("vector has wrong dimension");
  lambda = left_inverse_ * z;
  if (full_dimensional()) return true;
  RatVector back = to_rational(gens_) * lambda;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (back[i] != z[i]) return false;
  return true;
}

RatVector coefficients(const SimplicialCone& cone, const IntVector& z) {
  RatVector lambda;
  if (!cone.try_coefficients(z, lambda))
    throw NotInCone("vector " + to_string(z) + " is outside the linear hull of the cone", NotInCone::npos, "");
  return lambda;
}

bool contains(const SimplicialCone& cone, const IntVector& z) {
  RatVector lambda;
  if (!cone.try_coefficients(z, lambda)) return false;
  return std::all_of(lambda.begin(), lambda.end(), [](const Rat& x) { return sgn(x) >= 0; });
}

bool contains_interior(const SimplicialCone& cone, const IntVector& z) {
  RatVector lambda;
  if (!cone.try_coefficients(z, lambda)) return false;
  return std::all_of(lambda.begin(), lambda.end(), [](const Rat& x) { return sgn(x) > 0; });
}

ConeFrame frame(const SimplicialCone& cone) {
  LatticeBasis lattice = sublattice_basis(cone.generators());
  Integerized t = integerize(to_rational(cone.generators()), lattice.basis);
  return ConeFrame{to_integral(lattice.basis), t.coords, std::move(t)};
}

Int multiplicity(const SimplicialCone& cone) {
  ConeFrame f = frame(cone);
  Int m = 1;
  for (const Int& d : snf(f.coords).diagonal()) m *= d;
  return m;
}

ParallelepipedSet enumerate_parallelepiped(const SimplicialCone& cone) {
  ConeFrame f = frame(cone);
  const std::size_t k = cone.dim();
  SnfResult d = snf(f.coords);
  IntVector divisors = d.diagonal();
  IntMatrix u_inv = to_integral(inverse(d.u));
  RatMatrix coords_inv = inverse(f.coords);

  // Coset representatives of Z^k / R'Z^k are U^{-1}·a with 0 <= a_i < d_i.
  ParallelepipedSet out;
  IntVector a(k, Int(0));
  for (;;) {
    IntVector x = u_inv * a;
    RatVector lambda = coords_inv * x;
    for (Rat& l : lambda) l = frac(l);
    RatVector y_coords = to_rational(f.coords) * lambda;
    IntVector y = f.from_coords(to_integral(y_coords));
    out.points.push_back({std::move(y), std::move(lambda)});

    std::size_t i = 0;
    while (i < k) {
      a[i] += 1;
      if (a[i] < divisors[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const ParallelepipedPoint& p, const ParallelepipedPoint& q) { return p.lambda < q.lambda; });
  return out;
}

bool HilbertBasis::contains(const IntVector& v) const {
  return std::find(elements.begin(), elements.end(), v) != elements.end();
}

HilbertBasis hilbert_basis(const SimplicialCone& cone) {
  const std::size_t k = cone.dim();
  std::vector<ParallelepipedPoint> candidates;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector r = cone.generator(i);
    Int g = gcd_of(r);
    RatVector lambda(k, Rat(0));
    lambda[i] = Rat(1, 1) / Rat(g);
    candidates.push_back({primitive(r), std::move(lambda)});
  }
  for (auto& p : enumerate_parallelepiped(cone).points)
    if (!is_zero(p.vector) && std::find_if(candidates.begin(), candidates.begin() + k, [&](const auto& c) {
                                return c.vector == p.vector;
                              }) == candidates.begin() + k)
      candidates.push_back(std::move(p));

  auto below = [&](const ParallelepipedPoint& h, const ParallelepipedPoint& y) {
    for (std::size_t i = 0; i < k; ++i)
      if (h.lambda[i] > y.lambda[i]) return false;
    return true;
  };
  HilbertBasis hb;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    bool reducible = false;
    for (std::size_t b = 0; b < candidates.size() && !reducible; ++b)
      if (a != b && below(candidates[b], candidates[a])) reducible = true;
    if (!reducible) hb.elements.push_back(candidates[a].vector);
  }
  return hb;
}

SimplicialCone facet_cone(const SimplicialCone& cone, std::size_t i) {
  if (i >= cone.dim()) throw InvalidArgument("facet_cone: index out of range");
  if (cone.dim() == 1) throw InvalidArgument("facet_cone: cone has a single generator");
  return SimplicialCone(cone.generators().without_column(i));
}

IntVector ConeProjection::project(const IntVector& z) const {
  RatVector c = to_projected * z;
  return to_integral(c);
}

ConeProjection project_cone(const SimplicialCone& cone, std::size_t i) {
  const std::size_t k = cone.dim();
  const std::size_t n = cone.ambient_dim();
  if (i >= k) throw InvalidArgument("project_cone: index out of range");
  if (k < 2) throw InvalidArgument("project_cone: cone has a single generator");

  LatticeBasis lattice = sublattice_basis(cone.generators());
  RatVector r = to_rational(cone.generator(i));
  LatticeBasis projected = project_lattice(lattice, r);

  // Orthogonal projection onto r^⊥.
  const Rat rr = dot(r, r);
  RatMatrix proj = RatMatrix::identity(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) proj(a, b) -= r[a] * r[b] / rr;

  std::vector<std::size_t> kept;
  for (std::size_t l = 0; l < k; ++l)
    if (l != i) kept.push_back(l);
  RatMatrix images = proj * to_rational(cone.generators().select_columns(kept));
  Integerized t = integerize(images, projected.basis);

  return ConeProjection{i, std::move(kept), t.forward * proj, SimplicialCone(t.coords)};
}

}  // namespace icr
