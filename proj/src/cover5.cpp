#include "icr/decomposition.hpp"

#include "cover_internal.hpp"
#include "icr/errors.hpp"
#include "icr/exact_linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>

namespace icr {

namespace {

struct Row {
  RatVector a;
  Rat b;
  std::uint32_t origin = 0;  // bitmask of the input rows combined into this one
};

// Scale by a positive factor so that a and b are coprime integers; keeps
// duplicates detectable.
void normalize(Row& r) {
  Int l = 1;
  for (const Rat& x : r.a) l = lcm(l, Int(x.get_den()));
  l = lcm(l, Int(r.b.get_den()));
  Int g = 0;
  for (Rat& x : r.a) {
    x *= l;
    g = gcd(g, Int(x.get_num()));
  }
  r.b *= l;
  g = gcd(g, Int(r.b.get_num()));
  if (g > 1) {
    for (Rat& x : r.a) x /= g;
    r.b /= g;
  }
}

}  // namespace

bool feasible(const std::vector<RatVector>& a, const RatVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("feasible: row count mismatch");
  if (a.size() > 32) throw InvalidArgument("feasible: at most 32 inequalities");
  if (a.empty()) return true;
  const std::size_t n = a.front().size();

  std::vector<Row> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows.push_back({a[i], b[i], std::uint32_t{1} << i});
    normalize(rows.back());
  }

  std::vector<bool> eliminated(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Eliminate the variable producing the fewest combinations.
    std::size_t best = n, best_cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const Row& r : rows) {
        if (sgn(r.a[v]) > 0) ++pos;
        if (sgn(r.a[v]) < 0) ++neg;
      }
      if (best == n || pos * neg < best_cost) {
        best = v;
        best_cost = pos * neg;
      }
    }
    eliminated[best] = true;

    std::vector<Row> pos, neg, next;
    for (Row& r : rows) {
      const int s = sgn(r.a[best]);
      if (s > 0) pos.push_back(std::move(r));
      else if (s < 0) neg.push_back(std::move(r));
      else next.push_back(std::move(r));
    }
    std::set<std::pair<RatVector, Rat>> seen;
    for (const Row& r : next) seen.insert({r.a, r.b});
    for (const Row& p : pos)
      for (const Row& q : neg) {
        const std::uint32_t origin = p.origin | q.origin;
        // Chernikov: after t eliminations a combination of more than t + 1
        // input rows is implied by the others.
        if (static_cast<std::size_t>(__builtin_popcount(origin)) > step + 2) continue;
        Rat fp = -q.a[best];
        Rat fq = p.a[best];
        Row c;
        c.a.resize(n);
        for (std::size_t v = 0; v < n; ++v) c.a[v] = fp * p.a[v] + fq * q.a[v];
        c.a[best] = 0;
        c.b = fp * p.b + fq * q.b;
        c.origin = origin;
        normalize(c);
        if (seen.insert({c.a, c.b}).second) next.push_back(std::move(c));
      }
    rows.clear();
    for (Row& r : next) {
      if (is_zero(r.a)) {
        if (sgn(r.b) > 0) return false;
        continue;
      }
      rows.push_back(std::move(r));
    }
  }
  return true;
}

bool interiors_intersect(const IntMatrix& g1, const IntMatrix& g2) {
  // Cones are invariant under scaling, so strict positivity of both
  // coefficient vectors is equivalent to both being >= 1.
  std::vector<RatVector> a;
  RatVector b;
  for (const IntMatrix* g : {&g1, &g2}) {
    RatMatrix inv = inverse(*g);
    for (std::size_t i = 0; i < inv.rows(); ++i) {
      a.push_back(inv.row(i));
      b.emplace_back(1);
    }
  }
  return feasible(a, b);
}

namespace {

Int abs_det(std::initializer_list<const IntVector*> cols) {
  std::vector<IntVector> v;
  for (const IntVector* c : cols) v.push_back(*c);
  return abs(det(IntMatrix::from_columns(v)));
}

IntMatrix cone_of(std::vector<IntVector> cols) { return IntMatrix::from_columns(cols); }

struct Candidate {
  std::vector<IntMatrix> cones;
  std::vector<std::size_t> counts;
};

bool all_unimodular(const Candidate& c) {
  return std::all_of(c.cones.begin(), c.cones.end(), [](const IntMatrix& g) { return abs(det(g)) == 1; });
}

bool disjoint_from(const Candidate& c, const std::vector<IntMatrix>& others) {
  for (std::size_t a = 0; a < c.cones.size(); ++a) {
    for (std::size_t b = a + 1; b < c.cones.size(); ++b)
      if (interiors_intersect(c.cones[a], c.cones[b])) return false;
    for (const IntMatrix& o : others)
      if (interiors_intersect(c.cones[a], o)) return false;
  }
  return true;
}

}  // namespace

namespace detail {

UnimodularCover build_cover_in_coords(const IntMatrix& r) {
  if (r.rows() != 4 || r.cols() != 4) throw PreconditionFailed("cover5: the cone is not 4-dimensional");
  if (abs(det(r)) != 5) throw PreconditionFailed("cover5: the multiplicity is not 5");
  SimplicialCone cone(r);
  CosetProfile profile = coset_profile(cone);
  if (profile.nontrivial_class_count != 4 || !profile.equal_pairs.empty())
    throw PreconditionFailed("cover5: the dual vectors are not in four distinct nontrivial cosets");

  ParallelepipedSet par = enumerate_parallelepiped(cone);
  if (par.size() != 5) throw InternalError("cover5: parallelepiped does not have 5 points");

  // Relabel so that λ_i(y^1) = i/5.
  const ParallelepipedPoint& y1 = par.points[1];
  std::vector<std::size_t> order(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    Rat scaled = y1.lambda[i] * 5;
    if (scaled.get_den() != 1 || scaled < 1 || scaled > 4) throw InternalError("cover5: y^1 has a zero coefficient");
    order[scaled.get_num().get_ui() - 1] = i;
  }
  for (std::size_t m = 0; m < 4; ++m)
    if (order[m] == 4) throw InternalError("cover5: coefficients of y^1 are not distinct");

  std::array<IntVector, 4> g, y;
  for (std::size_t m = 0; m < 4; ++m) g[m] = r.column(order[m]);
  for (std::size_t m = 1; m <= 4; ++m) {
    bool found = false;
    for (const auto& p : par.points) {
      bool match = true;
      for (std::size_t i = 1; i <= 4; ++i) match = match && p.lambda[order[i - 1]] * 5 == Rat(static_cast<long>((m * i) % 5));
      if (match) {
        y[m - 1] = p.vector;
        found = true;
      }
    }
    if (!found) throw InternalError("cover5: missing multiple of y^1 in the parallelepiped");
  }
  // y^m has coefficient 1/5 at generator omit[m].
  std::array<std::size_t, 4> omit{};
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t i = 1; i <= 4; ++i)
      if ((m * i) % 5 == 1) omit[m - 1] = i - 1;

  UnimodularCover cover;
  cover.parent = r;
  cover.order = order;
  cover.y.assign(y.begin(), y.end());
  auto add = [&](IntMatrix cols, std::size_t count, std::string label) {
    cover.subcones.push_back(std::move(cols));
    cover.generator_counts.push_back(count);
    cover.labels.push_back(std::move(label));
  };

  // Three generators and one y.
  for (std::size_t m = 0; m < 4; ++m) {
    std::vector<IntVector> cols;
    for (std::size_t s = 0; s < 4; ++s)
      if (s != omit[m]) cols.push_back(g[s]);
    cols.push_back(y[m]);
    add(cone_of(cols), 3, "A" + std::to_string(m + 1));
  }

  // Edges of the quadrilateral pos{y^1, ..., y^4}: the other two y lie on
  // the same side of the plane through the edge inside the 3-space.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      std::vector<int> sides;
      for (std::size_t c = 0; c < 4; ++c)
        if (c != a && c != b) sides.push_back(sgn(det(IntMatrix::from_columns({y[a], y[b], y[c], g[0]}))));
      if (sides[0] != 0 && sides[0] == sides[1]) edges.emplace_back(a, b);
    }
  if (edges.size() != 4) throw InternalError("cover5: pos{y} is not a quadrilateral cone");

  auto is_edge = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
  };
  using Pair = std::pair<std::size_t, std::size_t>;

  // Unimodular faces for each edge. Several exist per edge; only one joint
  // choice extends to a complete cover, which is what the search finds.
  std::vector<std::vector<Pair>> faces(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t t = s + 1; t < 4; ++t)
        if (abs_det({&g[s], &g[t], &y[a], &y[b]}) == 1) faces[e].emplace_back(s, t);
  }

  // Triangulations of pos{y} through the diagonal belonging to {s, t}: the
  // two y whose first-group partner omits r^s or r^t.
  auto triangulations = [&](Pair st, const std::vector<IntMatrix>& fixed) {
    auto [s, t] = st;
    std::vector<Candidate> out;
    std::vector<std::size_t> diag, other;
    for (std::size_t m = 0; m < 4; ++m) (omit[m] == s || omit[m] == t ? diag : other).push_back(m);
    if (diag.size() != 2 || is_edge(diag[0], diag[1])) return out;
    const std::size_t u = other[0], v = other[1];
    for (int swap_ends = 0; swap_ends < 2; ++swap_ends)
      for (std::size_t e1 = 0; e1 < 2; ++e1)
        for (std::size_t e2 = 0; e2 < 2; ++e2) {
          const std::size_t gu = swap_ends ? t : s, gv = swap_ends ? s : t;
          Candidate c;
          c.cones.push_back(cone_of({g[gu], y[diag[0]], y[diag[1]], y[u]}));
          c.cones.push_back(cone_of({g[gv], y[diag[0]], y[diag[1]], y[v]}));
          c.cones.push_back(cone_of({g[s], g[t], y[diag[0]], y[diag[1]]}));
          c.cones.push_back(cone_of({g[s], g[t], y[std::min(u, diag[e1])], y[std::max(u, diag[e1])]}));
          c.cones.push_back(cone_of({g[s], g[t], y[std::min(v, diag[e2])], y[std::max(v, diag[e2])]}));
          c.counts = {1, 1, 2, 2, 2};
          if (all_unimodular(c) && disjoint_from(c, fixed)) out.push_back(std::move(c));
        }
    return out;
  };

  for (const auto& f : faces)
    if (f.empty()) throw InternalError("cover5: edge without a unimodular face");

  struct Solution {
    Candidate b, c, d;
  };
  std::vector<Solution> solutions;
  std::vector<std::size_t> pick(edges.size(), 0);
  for (;;) {
    Candidate b;
    std::set<Pair> used;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Pair& f = faces[e][pick[e]];
      used.insert(f);
      b.cones.push_back(cone_of({g[f.first], g[f.second], y[edges[e].first], y[edges[e].second]}));
      b.counts.push_back(2);
    }
    std::vector<Pair> rest;
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t t = s + 1; t < 4; ++t)
        if (!used.count({s, t})) rest.emplace_back(s, t);
    const bool split = rest.size() == 2 && rest[0].first != rest[1].first && rest[0].first != rest[1].second &&
                       rest[0].second != rest[1].first && rest[0].second != rest[1].second;
    if (split && disjoint_from(b, cover.subcones)) {
      // The pair avoiding r^1 comes first.
      if (rest[0].first == 0) std::swap(rest[0], rest[1]);
      std::vector<IntMatrix> fixed = cover.subcones;
      fixed.insert(fixed.end(), b.cones.begin(), b.cones.end());
      std::vector<Candidate> cs = triangulations(rest[0], fixed);
      std::vector<Candidate> ds = triangulations(rest[1], fixed);
      for (const Candidate& c : cs)
        for (const Candidate& d : ds)
          if (disjoint_from(c, d.cones)) solutions.push_back({b, c, d});
    }
    std::size_t e = 0;
    while (e < edges.size() && ++pick[e] == faces[e].size()) pick[e++] = 0;
    if (e == edges.size()) break;
  }
  if (solutions.size() != 1)
    throw InternalError("cover5: " + std::to_string(solutions.size()) + " admissible covers instead of one");
  const char letters[3] = {'B', 'C', 'D'};
  const Candidate* groups[3] = {&solutions[0].b, &solutions[0].c, &solutions[0].d};
  for (std::size_t grp = 0; grp < 3; ++grp)
    for (std::size_t q = 0; q < groups[grp]->cones.size(); ++q)
      add(groups[grp]->cones[q], groups[grp]->counts[q], std::string(1, letters[grp]) + std::to_string(q + 1));
  // Certificates.
  cover.unimodular = true;
  for (const IntMatrix& sub : cover.subcones) {
    Int d = det(sub);
    cover.determinants.push_back(d);
    if (abs(d) != 1) cover.unimodular = false;
  }
  cover.disjoint_pairs = 0;
  for (std::size_t a = 0; a < cover.subcones.size(); ++a)
    for (std::size_t b = a + 1; b < cover.subcones.size(); ++b)
      if (!interiors_intersect(cover.subcones[a], cover.subcones[b])) ++cover.disjoint_pairs;
  const std::size_t pairs = cover.subcones.size() * (cover.subcones.size() - 1) / 2;
  cover.disjoint = cover.disjoint_pairs == pairs;

  // vol(C ∩ H) for H = {φ(x) <= 2}, φ = (1,1,1,1)R^{-1}: the simplex on 0 and
  // the generators g scaled by 2/φ(g).
  RatMatrix rinv = inverse(r);
  RatVector phi(4, Rat(0));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) phi[j] += rinv(i, j);
  cover.volume = 0;
  for (const IntMatrix& sub : cover.subcones) {
    Rat v = Rat(abs(det(sub)));
    for (std::size_t j = 0; j < 4; ++j) v *= Rat(2) / dot(phi, to_rational(sub.column(j)));
    cover.volume += v / 24;
  }
  cover.expected_volume = Rat(abs(det(r)) * 16) / 24;
  return cover;
}

}  // namespace detail

UnimodularCover build_cover_det5(const SimplicialCone& cone) {
  if (cone.dim() != 4) throw PreconditionFailed("cover5: the cone is not 4-dimensional");
  ConeFrame f = frame(cone);
  UnimodularCover c = detail::build_cover_in_coords(f.coords);
  if (!c.certified()) throw InternalError("cover5: certificate failed");
  c.parent = cone.generators();
  for (IntMatrix& sub : c.subcones) sub = f.basis * sub;
  for (IntVector& v : c.y) v = f.from_coords(v);
  return c;
}

}  // namespace icr
