#include "icr/special_cones.hpp"

#include "icr/cosets.hpp"
#include "icr/errors.hpp"
#include "icr/exact_linalg.hpp"
#include "icr/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace icr {

SkewCone make_skew_cone(const IntVector& r) {
  const std::size_t n = r.size();
  if (n < 2) throw InvalidArgument("skew vector needs at least 2 entries");
  if (sgn(r[n - 1]) <= 0) throw InvalidArgument("skew vector needs r_n >= 1");
  SkewVectorSpec s;
  s.n = n;
  s.r_input = r;
  s.delta = r[n - 1];
  s.r = r;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Int v = r[i] % s.delta;
    if (sgn(v) < 0) v += s.delta;
    s.r[i] = v;
    s.values.insert(v);
  }
  std::size_t extra = 0;
  for (const Int& v : s.values)
    if (sgn(v) != 0 && v != s.delta - 1) ++extra;
  s.hypothesis = extra <= 2;

  IntMatrix m = IntMatrix::identity(n);
  m.set_column(n - 1, s.r);
  return {SimplicialCone(m), s};
}

SkewCheck check_prop_skew(const SkewVectorSpec& spec) {
  const std::size_t n = spec.n;
  IntMatrix m = IntMatrix::identity(n);
  m.set_column(n - 1, spec.r);
  CosetProfile p = coset_profile(SimplicialCone(m));

  SkewCheck c;
  c.nontrivial_classes = p.nontrivial_class_count;
  auto fail = [&](std::string msg) { c.failures.push_back(std::move(msg)); };
  if ((p.nontrivial_class_count <= 3) != spec.hypothesis)
    fail("class count " + std::to_string(p.nontrivial_class_count) + " disagrees with the hypothesis");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (p.integral_flags[i] != (sgn(spec.r[i]) == 0)) fail("integrality of dual " + std::to_string(i + 1));
  if (p.integral_flags[n - 1] != (spec.delta == 1)) fail("integrality of the last dual");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (p.integral_flags[i]) continue;
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      if (p.integral_flags[j]) continue;
      if ((p.class_of[i] == p.class_of[j]) != (spec.r[i] == spec.r[j]))
        fail("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
    if (!p.integral_flags[n - 1] && (p.class_of[i] == p.class_of[n - 1]) != (spec.r[i] == spec.delta - 1))
      fail("pair (" + std::to_string(i + 1) + "," + std::to_string(n) + ")");
  }
  c.ok = c.failures.empty();
  return c;
}

std::size_t divisor_count(const Int& m) {
  Int a = abs(m);
  if (sgn(a) == 0) throw InvalidArgument("divisor count of zero");
  std::size_t count = 1;
  for (Int d = 2; d * d <= a; ++d) {
    std::size_t e = 0;
    while (a % d == 0) {
      a /= d;
      ++e;
    }
    count *= e + 1;
  }
  if (a > 1) count *= 2;
  return count;
}

GorensteinCheck gorenstein_check(const SimplicialCone& cone, long dilation) {
  if (!cone.full_dimensional()) throw PreconditionFailed("Gorenstein check needs a full-dimensional cone");
  const std::size_t n = cone.dim();
  GorensteinCheck g;
  // Unit vectors give the candidate 1; par points give the rest.
  g.lambda.assign(n, Rat(1));
  for (const auto& y : enumerate_parallelepiped(cone).points)
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(y.lambda[k]) > 0 && y.lambda[k] < g.lambda[k]) g.lambda[k] = y.lambda[k];

  g.y_rational = to_rational(cone.generators()) * g.lambda;
  g.y_integral = is_integral(g.y_rational);
  g.y_interior = std::all_of(g.lambda.begin(), g.lambda.end(), [](const Rat& l) { return sgn(l) > 0; });
  if (g.y_integral) {
    g.y = to_integral(g.y_rational);
    g.y_in_par = std::all_of(g.lambda.begin(), g.lambda.end(), [](const Rat& l) { return l < 1; });
    g.covering_sampled = true;
    for (const IntVector& z : sample_points(cone, dilation)) {
      RatVector mu = coefficients(cone, z);
      if (!std::all_of(mu.begin(), mu.end(), [](const Rat& x) { return sgn(x) > 0; })) continue;
      ++g.sampled_interior;
      for (std::size_t k = 0; k < n; ++k)
        if (mu[k] < g.lambda[k]) g.covering_sampled = false;
    }
  }
  g.premise_holds = g.y_integral && g.y_interior && g.covering_sampled;
  g.divisor_count = divisor_count(multiplicity(cone));
  g.cyclic = coset_profile(cone).cyclic;
  return g;
}

namespace {

bool is_prime(long x) {
  if (x < 2) return false;
  for (long d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

}  // namespace

PqCone make_pq_cone(long p, long q) {
  if (p == q) throw InvalidArgument("p and q must differ");
  if (!is_prime(p) || !is_prime(q)) throw InvalidArgument("p and q must be prime");
  PqCone out{SimplicialCone(IntMatrix::identity(4)), p, q, 0, 0};
  for (long k = 1; k < q; ++k) {
    long rest = p * q - 1 - k * p;
    if (rest > 0 && rest % q == 0 && rest / q >= 1 && rest / q <= p - 1) {
      out.k = k;
      out.l = rest / q;
      break;
    }
  }
  if (out.k == 0) throw InternalError("no k, l with kp + lq = pq - 1");
  IntMatrix m = IntMatrix::identity(4);
  m(0, 2) = out.l;
  m(1, 2) = out.l;
  m(2, 2) = p;
  m(0, 3) = out.k;
  m(1, 3) = out.k;
  m(3, 3) = q;
  out.cone = SimplicialCone(m);
  return out;
}

bool has_skew_shape(const IntMatrix& h) {
  const std::size_t n = h.rows();
  if (h.cols() != n) return false;
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (h(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool pq_not_skew(const SimplicialCone& cone) {
  if (!cone.full_dimensional()) return false;
  return !has_skew_shape(hnf(cone.generators()).h);
}

std::optional<SkewReordering> skew_reordering(const SimplicialCone& cone) {
  const std::size_t n = cone.dim();
  if (!cone.full_dimensional()) return std::nullopt;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.set_column(j, cone.generator(perm[j]));
    IntMatrix h = hnf(m).h;
    if (has_skew_shape(h)) return SkewReordering{perm, h.column(n - 1)};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace icr
