#include "doctest.h"

#include "icr/cosets.hpp"
#include "icr/decomposition.hpp"
#include "icr/errors.hpp"
#include "icr/oracle.hpp"
#include "icr/random_cones.hpp"

#include <algorithm>

using namespace icr;

namespace {

SimplicialCone det5() { return SimplicialCone(IntMatrix::columns_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 2, 3, 5}})); }
SimplicialCone two() { return SimplicialCone(IntMatrix::columns_of({{1, 0}, {1, 2}})); }

// (e^1, ..., e^{n-1}, r)
SimplicialCone skew(std::initializer_list<long> r) {
  const std::size_t n = r.size();
  IntMatrix m = IntMatrix::identity(n);
  m.set_column(n - 1, int_vector(r));
  return SimplicialCone(m);
}

bool has_step(const Decomposition& d, TraceStep::Kind kind) {
  return std::any_of(d.trace.steps.begin(), d.trace.steps.end(), [&](const TraceStep& s) { return s.kind == kind; });
}

}  // namespace

TEST_CASE("coset profile examples") {
  CosetProfile id = coset_profile(SimplicialCone(IntMatrix::identity(3)));
  CHECK(id.nontrivial_class_count == 0);
  CHECK(std::all_of(id.integral_flags.begin(), id.integral_flags.end(), [](bool b) { return b; }));
  CHECK(id.cyclic);

  CosetProfile t = coset_profile(two());
  CHECK(t.nontrivial_class_count == 1);
  CHECK_FALSE(t.integral_flags[0]);
  CHECK_FALSE(t.integral_flags[1]);
  REQUIRE(t.equal_pairs.size() == 1);
  CHECK(t.equal_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(t.cyclic);

  CosetProfile f = coset_profile(det5());
  CHECK(f.nontrivial_class_count == 4);
  CHECK(f.equal_pairs.empty());
  CHECK(f.cyclic);
  Int prod = 1;
  for (const Int& d : f.elementary_divisors) prod *= d;
  CHECK(prod == 5);

  CHECK(check_lemma_coeff_equivalence(two()));
  CHECK(check_lemma_coeff_equivalence(det5()));
  CHECK(check_lemma_coeff_equivalence(SimplicialCone(IntMatrix::identity(4))));
}

TEST_CASE("coset profile properties on random cones") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + t % 3;
    SimplicialCone c(random_cone_matrix(rng, n, rng.uniform(1, 12)));
    CosetProfile p = coset_profile(c);
    Int prod = 1;
    for (const Int& d : p.elementary_divisors) prod *= d;
    CHECK(prod == multiplicity(c));
    CHECK(p.nontrivial_class_count <= n);
    // Transitivity of the equal-coset relation.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t e = 0; e < n; ++e)
          if (p.class_of[a] == p.class_of[b] && p.class_of[b] == p.class_of[e]) CHECK(p.class_of[a] == p.class_of[e]);
    CHECK(check_lemma_coeff_equivalence(c));

    // Equal pairs survive projection along any third generator.
    for (std::size_t i = 0; i < n; ++i) {
      ConeProjection pr = project_cone(c, i);
      CosetProfile q = coset_profile(pr.cone);
      for (const auto& [s, u] : p.equal_pairs) {
        if (s == i || u == i) continue;
        auto si = std::find(pr.kept.begin(), pr.kept.end(), s) - pr.kept.begin();
        auto ui = std::find(pr.kept.begin(), pr.kept.end(), u) - pr.kept.begin();
        CHECK(q.class_of[si] == q.class_of[ui]);
      }
    }
  }
}

TEST_CASE("decompose examples") {
  CHECK(decompose(two(), int_vector({0, 0})).terms.empty());
  CHECK(decompose(det5(), int_vector({0, 0, 0, 0})).terms.empty());

  Decomposition d = decompose(two(), int_vector({3, 2}));
  CHECK(d.term_count() == 2);
  validate(two(), d);

  Decomposition y2 = decompose(det5(), int_vector({2, 4, 6, 8}));
  REQUIRE(y2.term_count() == 1);
  CHECK(y2.terms[0].coeff == 2);
  CHECK(y2.terms[0].vector == int_vector({1, 2, 3, 4}));
  CHECK(has_step(y2, TraceStep::Kind::Cover5));

  CHECK_THROWS_AS(decompose(two(), int_vector({0, 1})), NotInCone);
  CHECK_THROWS_AS(decompose(two(), int_vector({1, 1, 1})), InvalidArgument);
}

TEST_CASE("not-in-cone names the violated coefficient") {
  try {
    decompose(two(), int_vector({-1, 2}));
    FAIL("expected NotInCone");
  } catch (const NotInCone& e) {
    CHECK(e.coefficient() == 0);
  }
}

TEST_CASE("base case solver") {
  SimplicialCone ray(IntMatrix::columns_of({{2, 3}}));
  CHECK(base_case_solve(ray, int_vector({8, 12})).term_count() == 1);

  Decomposition d = base_case_solve(two(), int_vector({2, 2}));
  REQUIRE(d.term_count() == 1);
  CHECK(d.terms[0].coeff == 2);
  CHECK(d.terms[0].vector == int_vector({1, 1}));

  SimplicialCone c3(IntMatrix::columns_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  Decomposition e = base_case_solve(c3, int_vector({1, 1, 1}));
  REQUIRE(e.term_count() == 1);
  CHECK(e.terms[0].vector == int_vector({1, 1, 1}));

  CHECK_THROWS_AS(base_case_solve(det5(), int_vector({1, 2, 3, 4})), PreconditionFailed);
}

TEST_CASE("det-5 cover of the reference cone") {
  UnimodularCover cv = build_cover_det5(det5());
  REQUIRE(cv.subcones.size() == 18);
  std::size_t three = 0, twos = 0, one = 0;
  for (std::size_t c : cv.generator_counts) {
    three += c == 3;
    twos += c == 2;
    one += c == 1;
  }
  CHECK(three == 4);
  CHECK(twos == 10);
  CHECK(one == 4);
  CHECK(cv.volume == Rat(10, 3));
  CHECK(cv.expected_volume == Rat(10, 3));
  CHECK(cv.disjoint_pairs == 153);
  CHECK(cv.certified());
  for (const Int& d : cv.determinants) CHECK(abs(d) == 1);

  CHECK_THROWS_AS(build_cover_det5(two()), PreconditionFailed);
  CHECK_THROWS_AS(build_cover_det5(skew({1, 1, 2, 3})), PreconditionFailed);
}

TEST_CASE("interior intersection and feasibility") {
  IntMatrix a = IntMatrix::identity(2);
  IntMatrix b = IntMatrix::columns_of({{1, 0}, {1, 1}});
  IntMatrix c = IntMatrix::columns_of({{0, 1}, {-1, 1}});
  CHECK(interiors_intersect(a, b));
  CHECK_FALSE(interiors_intersect(b, c));
  CHECK(feasible({to_rational(int_vector({1}))}, {Rat(3)}));
  CHECK_FALSE(feasible({to_rational(int_vector({1})), to_rational(int_vector({-1}))}, {Rat(1), Rat(0)}));
}

TEST_CASE("decompose_det5 examples") {
  SimplicialCone c = det5();
  CHECK(decompose_det5(c, c.generator(0)).term_count() == 1);
  CHECK(decompose_det5(c, int_vector({1, 2, 3, 4})).term_count() == 1);
  IntVector z = int_vector({2, 3, 4, 5});
  Decomposition d = decompose_det5(c, z);
  validate(c, d);
  OracleReport o = min_terms(c, z);
  REQUIRE(o.status == OracleReport::Status::Exact);
  CHECK(d.term_count() <= 4);
  CHECK(d.term_count() >= o.min_terms);
}

TEST_CASE("icr upper bound") {
  Rng rng(3);
  IcrBound b1 = icr_upper_bound(SimplicialCone(random_cone_matrix(rng, 7, 4)));
  CHECK(b1.value == 7);
  IcrBound b2 = icr_upper_bound(skew({1, 2, 3, 4, 5, 6}));
  CHECK(b2.value == 9);
  CHECK(b2.method == "theorem2");
  IcrBound b3 = icr_upper_bound(skew({1, 2, 3, 4, 40}));
  CHECK(b3.value == 8);
  CHECK(b3.method == "sebo-2n-2");
  CHECK(icr_upper_bound(SimplicialCone(IntMatrix::identity(3))).value == 3);
  CHECK(icr_upper_bound(det5()).method == "theorem1");
}

TEST_CASE("reduce_to_hilbert") {
  Decomposition d;
  d.target = int_vector({2, 2});
  d.terms.push_back({Int(1), int_vector({2, 2})});
  Decomposition r = reduce_to_hilbert(two(), d);
  REQUIRE(r.term_count() == 1);
  CHECK(r.terms[0].coeff == 2);
  CHECK(r.terms[0].vector == int_vector({1, 1}));
  CHECK(r.all_hilbert);

  Decomposition empty;
  empty.target = int_vector({0, 0});
  CHECK(reduce_to_hilbert(two(), empty).terms.empty());

  Decomposition h = decompose(two(), int_vector({3, 2}));
  CHECK(reduce_to_hilbert(two(), h).terms == h.terms);
}

TEST_CASE("projection path and trace replay") {
  SimplicialCone c = skew({1, 1, 2, 3});
  DecompositionEngine eng(c);
  bool projected = false;
  for (const IntVector& z : sample_points(c, 2)) {
    Decomposition d = eng.decompose(z);
    projected = projected || has_step(d, TraceStep::Kind::Project);
    CHECK(eng.replay(z, d.trace) == d);
    for (const TraceStep& s : d.trace.steps)
      if (s.kind == TraceStep::Kind::Project) CHECK(s.value >= 0);
  }
  CHECK(projected);

  Decomposition d = eng.decompose(int_vector({2, 2, 3, 3}));
  ReductionTrace bad = d.trace;
  REQUIRE_FALSE(bad.steps.empty());
  bad.steps[0].value += 1;
  CHECK_THROWS_AS(eng.replay(int_vector({2, 2, 3, 3}), bad), InternalError);
}

TEST_CASE("strip path") {
  SimplicialCone c = skew({0, 1, 3, 4});
  Decomposition d = decompose(c, int_vector({1, 2, 4, 4}));
  CHECK(has_step(d, TraceStep::Kind::Strip));
  validate(c, d);
}

TEST_CASE("engine agrees with the oracle on random cones") {
  Rng rng(2024);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + t % 3;
    const long delta = rng.uniform(1, 8);
    SimplicialCone c(random_cone_matrix(rng, n, delta));
    DecompositionEngine eng(c);
    SampleReport s = sample_icp(c, 2);
    for (const SamplePoint& p : s.points) {
      Decomposition d = eng.reduce_to_hilbert(eng.decompose(p.z));
      validate(c, d);
      CHECK(d.all_hilbert);
      CHECK(d.term_count() >= p.min_terms);
      if (delta <= 5) CHECK(d.term_count() <= n);
    }
    if (delta <= 5) CHECK(s.max_min_terms <= n);
  }
}
