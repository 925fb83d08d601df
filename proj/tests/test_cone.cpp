#include "doctest.h"

#include "icr/cone.hpp"
#include "icr/errors.hpp"
#include "icr/random_cones.hpp"

#include <algorithm>
#include <set>

using namespace icr;

namespace {

SimplicialCone det5() { return SimplicialCone(IntMatrix::columns_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 2, 3, 5}})); }
SimplicialCone two() { return SimplicialCone(IntMatrix::columns_of({{1, 0}, {1, 2}})); }

// Integer points of par R for a full-dimensional cone by scanning the box
// spanned by the generators; independent of the SNF route.
std::set<IntVector> brute_par(const SimplicialCone& c) {
  const std::size_t n = c.ambient_dim();
  IntVector lo(n, Int(0)), hi(n, Int(0));
  for (std::size_t j = 0; j < c.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const Int& x = c.generators()(i, j);
      if (x < 0) lo[i] += x;
      else hi[i] += x;
    }
  std::set<IntVector> out;
  IntVector z = lo;
  for (;;) {
    RatVector lambda;
    if (c.try_coefficients(z, lambda) &&
        std::all_of(lambda.begin(), lambda.end(), [](const Rat& l) { return l >= 0 && l < 1; }))
      out.insert(z);
    std::size_t i = 0;
    while (i < n) {
      if (++z[i] <= hi[i]) break;
      z[i] = lo[i];
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

std::set<IntVector> par_set(const SimplicialCone& c) {
  std::set<IntVector> s;
  for (const auto& p : enumerate_parallelepiped(c).points) s.insert(p.vector);
  return s;
}

}  // namespace

TEST_CASE("cone construction rejects dependent generators") {
  CHECK_THROWS_AS(SimplicialCone(IntMatrix::columns_of({{1, 2}, {2, 4}})), InvalidArgument);
  CHECK_THROWS_AS(SimplicialCone(IntMatrix(3, 0)), InvalidArgument);
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(SimplicialCone(IntMatrix::identity(4))) == 1);
  CHECK(multiplicity(det5()) == 5);
  CHECK(multiplicity(two()) == 2);
  // Not full-dimensional: pos{(2,2)} has multiplicity 2 in its line.
  CHECK(multiplicity(SimplicialCone(IntMatrix::columns_of({{2, 2}}))) == 2);
}

TEST_CASE("parallelepiped enumeration") {
  ParallelepipedSet id = enumerate_parallelepiped(SimplicialCone(IntMatrix::identity(3)));
  REQUIRE(id.size() == 1);
  CHECK(is_zero(id.points[0].vector));

  ParallelepipedSet p = enumerate_parallelepiped(two());
  REQUIRE(p.size() == 2);
  CHECK(p.points[0].vector == int_vector({0, 0}));
  CHECK(p.points[1].vector == int_vector({1, 1}));
  CHECK(p.points[1].lambda == RatVector{Rat(1, 2), Rat(1, 2)});

  ParallelepipedSet q = enumerate_parallelepiped(det5());
  REQUIRE(q.size() == 5);
  CHECK(par_set(det5()) == brute_par(det5()));
  bool found = false;
  for (const auto& pt : q.points)
    if (pt.vector == int_vector({1, 2, 3, 4})) {
      found = true;
      CHECK(pt.lambda == RatVector{Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
    }
  CHECK(found);
}

TEST_CASE("multiplicity equals parallelepiped size and |det|") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    SimplicialCone c(random_nonsingular(rng, n, -4, 4, 60));
    ParallelepipedSet p = enumerate_parallelepiped(c);
    CHECK(Int(static_cast<long>(p.size())) == multiplicity(c));
    CHECK(multiplicity(c) == abs(det(c.generators())));
    CHECK(par_set(c) == brute_par(c));
    CHECK(is_zero(p.points[0].vector));
    for (const auto& pt : p.points) CHECK(to_rational(c.generators()) * pt.lambda == to_rational(pt.vector));
  }
}

TEST_CASE("hilbert basis examples") {
  HilbertBasis id = hilbert_basis(SimplicialCone(IntMatrix::identity(3)));
  CHECK(id.size() == 3);
  HilbertBasis h2 = hilbert_basis(two());
  CHECK(h2.size() == 3);
  CHECK(h2.contains(int_vector({1, 0})));
  CHECK(h2.contains(int_vector({1, 2})));
  CHECK(h2.contains(int_vector({1, 1})));
  HilbertBasis h5 = hilbert_basis(det5());
  CHECK(h5.size() == 8);
  // Non-primitive generator is replaced by its primitive vector.
  HilbertBasis hs = hilbert_basis(SimplicialCone(IntMatrix::columns_of({{2, 0}, {0, 1}})));
  CHECK(hs.size() == 2);
  CHECK(hs.contains(int_vector({1, 0})));
}

TEST_CASE("hilbert basis elements are irreducible") {
  // h is reducible iff h - a is in the cone for some nonzero integer cone
  // point a != h; such an a lies below h, hence inside the box [0, λ(h)] of
  // generator coefficients. Scan that box by brute force.
  Rng rng(22);
  for (int t = 0; t < 25; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(2, 3));
    SimplicialCone c(random_nonsingular(rng, n, -3, 3, 12));
    HilbertBasis hb = hilbert_basis(c);
    std::set<IntVector> par = brute_par(c);
    for (const IntVector& h : hb.elements) {
      RatVector lh = coefficients(c, h);
      for (const IntVector& y : par) {
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
          IntVector a = y;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) a = a + c.generator(i);
          if (is_zero(a) || a == h) continue;
          RatVector la = coefficients(c, a);
          bool below = true;
          for (std::size_t i = 0; i < n; ++i) below = below && la[i] <= lh[i];
          CHECK_FALSE(below);
        }
      }
    }
  }
}

TEST_CASE("coefficients and membership") {
  SimplicialCone c5 = det5();
  CHECK(coefficients(c5, c5.generator(0)) == RatVector{1, 0, 0, 0});
  CHECK(coefficients(c5, int_vector({1, 2, 3, 4})) == RatVector{Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
  CHECK(coefficients(two(), int_vector({3, 2})) == RatVector{2, 1});
  CHECK(contains(c5, int_vector({0, 0, 0, 0})));
  CHECK_FALSE(contains_interior(c5, int_vector({0, 0, 0, 0})));
  CHECK(contains_interior(c5, int_vector({1, 2, 3, 4})));
  CHECK_FALSE(contains(two(), int_vector({0, 1})));

  SimplicialCone line(IntMatrix::columns_of({{1, 1, 0}}));
  CHECK_THROWS_AS(coefficients(line, int_vector({1, 0, 0})), NotInCone);
  CHECK_FALSE(contains(line, int_vector({1, 0, 0})));
  CHECK(contains(line, int_vector({3, 3, 0})));
}

TEST_CASE("projection maps the parallelepiped onto the projected parallelepiped") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    auto n = static_cast<std::size_t>(rng.uniform(3, 5));
    SimplicialCone c(random_cone_matrix(rng, n, rng.uniform(1, 12)));
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    ConeProjection pr = project_cone(c, i);
    std::set<IntVector> image;
    for (const auto& p : enumerate_parallelepiped(c).points) {
      // Reduce the projection into the projected parallelepiped.
      IntVector x = pr.project(p.vector);
      RatVector l = coefficients(pr.cone, x);
      IntVector shift(x.size(), Int(0));
      for (std::size_t j = 0; j < l.size(); ++j) {
        Int f = floor_of(l[j]);
        shift = shift + f * pr.cone.generator(j);
      }
      // λ of a projected par point is already in [0,1), so no shift needed.
      CHECK(is_zero(shift));
      image.insert(x);
    }
    CHECK(image == par_set(pr.cone));
    CHECK(multiplicity(pr.cone) <= multiplicity(c));
    for (std::size_t j = 0; j < pr.kept.size(); ++j) CHECK(pr.project(c.generator(pr.kept[j])) == pr.cone.generator(j));
    CHECK(is_zero(pr.project(c.generator(i))));
  }
}
