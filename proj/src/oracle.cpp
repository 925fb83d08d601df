#include "icr/oracle.hpp"

#include "icr/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace icr {

OracleOptions default_oracle_options() {
  OracleOptions o;
  o.node_budget = default_engine_options().node_budget;
  return o;
}

namespace {

// Generator coefficients scaled by a common denominator so that every lattice
// point of the cone gets a nonnegative integer key.
class Scaler {
 public:
  explicit Scaler(const SimplicialCone& cone) : cone_(cone), scale_(multiplicity(cone)) {}

  IntVector key(const IntVector& z) const {
    RatVector l = coefficients(cone_, z);
    IntVector out(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      Rat s = l[i] * Rat(scale_);
      if (s.get_den() != 1) throw InternalError("oracle: lattice point with unexpected denominator");
      out[i] = s.get_num();
    }
    return out;
  }

 private:
  const SimplicialCone& cone_;
  Int scale_;
};

bool nonnegative(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) >= 0; });
}

class Enumerator {
 public:
  Enumerator(const std::vector<IntVector>& keys, std::uint64_t budget) : keys_(keys), budget_(budget) {}

  // Picks `depth` distinct elements with index >= from and coefficients >= 1
  // summing to rem.
  bool pick(std::size_t from, std::size_t depth, IntVector& rem) {
    if (depth == 0) return is_zero(rem);
    if (is_zero(rem)) return false;
    for (std::size_t h = from; h + depth <= keys_.size(); ++h) {
      const IntVector& a = keys_[h];
      IntVector r = rem;
      for (Int c = 1;; ++c) {
        if (++nodes > budget_) {
          exhausted = true;
          return false;
        }
        r = r - a;
        if (!nonnegative(r)) break;
        chosen.push_back({c, h});
        if (pick(h + 1, depth - 1, r)) {
          rem = r;
          return true;
        }
        chosen.pop_back();
        if (exhausted) return false;
      }
    }
    return false;
  }

  std::vector<std::pair<Int, std::size_t>> chosen;
  std::uint64_t nodes = 0;
  bool exhausted = false;

 private:
  const std::vector<IntVector>& keys_;
  std::uint64_t budget_;
};

}  // namespace

OracleReport min_terms(const SimplicialCone& cone, const IntVector& z, OracleOptions options) {
  require_in_cone(cone, z);
  OracleReport rep;
  rep.target = z;
  rep.witness.target = z;
  HilbertBasis hb = hilbert_basis(cone);
  Scaler sc(cone);
  std::vector<IntVector> keys;
  for (const IntVector& h : hb.elements) keys.push_back(sc.key(h));
  IntVector target = sc.key(z);

  Enumerator en(keys, options.node_budget);
  for (std::size_t m = 0; m <= keys.size(); ++m) {
    rep.bound = m;
    IntVector rem = target;
    if (en.pick(0, m, rem)) {
      rep.status = OracleReport::Status::Exact;
      rep.min_terms = m;
      for (const auto& [c, h] : en.chosen) rep.witness.terms.push_back({c, hb.elements[h]});
      rep.witness.all_hilbert = true;
      rep.witness.raw_term_count = m;
      break;
    }
    if (en.exhausted) break;
  }
  rep.nodes = en.nodes;
  return rep;
}

std::vector<IntVector> sample_points(const SimplicialCone& cone, long dilation) {
  if (dilation < 1) throw InvalidArgument("sample dilation must be >= 1");
  const std::size_t k = cone.dim();
  std::vector<IntVector> out;
  for (const auto& y : enumerate_parallelepiped(cone).points) {
    std::vector<long> a(k, 0);
    for (;;) {
      IntVector z = y.vector;
      for (std::size_t i = 0; i < k; ++i)
        if (a[i]) z = z + Int(a[i]) * cone.generator(i);
      out.push_back(std::move(z));
      std::size_t i = 0;
      while (i < k && ++a[i] == dilation) a[i++] = 0;
      if (i == k) break;
    }
  }
  return out;
}

SampleReport sample_icp(const SimplicialCone& cone, long dilation) {
  SampleReport rep;
  rep.dilation = dilation;
  HilbertBasis hb = hilbert_basis(cone);
  Scaler sc(cone);
  std::vector<IntVector> hkeys;
  for (const IntVector& h : hb.elements) hkeys.push_back(sc.key(h));

  struct Entry {
    IntVector z;
    std::size_t best = 0;
    std::size_t via = 0;  // Hilbert basis index of the last term
    Int coeff;
    IntVector prev;
  };
  std::vector<IntVector> zs = sample_points(cone, dilation);
  std::vector<std::pair<Int, IntVector>> order;
  std::map<IntVector, Entry> table;
  for (const IntVector& z : zs) {
    IntVector key = sc.key(z);
    Int sum = 0;
    for (const Int& x : key) sum += x;
    order.emplace_back(sum, key);
    table[key].z = z;
  }
  std::sort(order.begin(), order.end());

  // Subtracting c·h strictly lowers the key sum, so predecessors are final.
  for (const auto& [sum, key] : order) {
    Entry& e = table[key];
    if (sgn(sum) == 0) continue;
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t h = 0; h < hkeys.size(); ++h) {
      IntVector rest = key;
      for (Int c = 1;; ++c) {
        rest = rest - hkeys[h];
        if (!nonnegative(rest)) break;
        auto it = table.find(rest);
        if (it == table.end()) throw InternalError("oracle: sample region is not closed under subtraction");
        if (it->second.best + 1 < best) {
          best = it->second.best + 1;
          e.via = h;
          e.coeff = c;
          e.prev = rest;
        }
      }
    }
    if (best == static_cast<std::size_t>(-1)) throw InternalError("oracle: sample point not generated by the Hilbert basis");
    e.best = best;
  }

  for (const auto& [sum, key] : order) {
    const Entry& e = table[key];
    rep.points.push_back({e.z, e.best});
    rep.max_min_terms = std::max(rep.max_min_terms, e.best);
  }
  for (const auto& [sum, key] : order) {
    const Entry& e = table[key];
    if (e.best != rep.max_min_terms || rep.max_min_terms == 0) continue;
    Decomposition w;
    w.target = e.z;
    IntVector cur = key;
    while (table[cur].best > 0) {
      const Entry& step = table[cur];
      w.terms.push_back({step.coeff, hb.elements[step.via]});
      cur = step.prev;
    }
    w.all_hilbert = true;
    w.raw_term_count = w.terms.size();
    rep.worst.push_back(std::move(w));
  }
  return rep;
}

namespace {

// Normal of the hyperplane spanned by k-1 vectors in R^k (cofactor expansion);
// zero when they are dependent.
IntVector normal_of(const std::vector<IntVector>& vs, std::size_t k) {
  IntVector h(k);
  for (std::size_t c = 0; c < k; ++c) {
    IntMatrix m(k - 1, k - 1);
    for (std::size_t r = 0; r < k - 1; ++r)
      for (std::size_t j = 0, jj = 0; j < k; ++j)
        if (j != c) m(r, jj++) = vs[r][j];
    Int d = det(m);
    h[c] = (c % 2 == 0) ? d : Int(-d);
  }
  return h;
}

bool separated(const IntMatrix& g1, const IntMatrix& g2) {
  const std::size_t k = g1.rows();
  std::vector<IntVector> all;
  for (std::size_t j = 0; j < k; ++j) all.push_back(g1.column(j));
  for (std::size_t j = 0; j < k; ++j) all.push_back(g2.column(j));
  std::vector<std::size_t> pick(k - 1);
  for (std::size_t i = 0; i < k - 1; ++i) pick[i] = i;
  for (;;) {
    std::vector<IntVector> vs;
    for (std::size_t p : pick) vs.push_back(all[p]);
    IntVector h = normal_of(vs, k);
    if (!is_zero(h)) {
      bool pos = true, neg = true;
      for (std::size_t j = 0; j < k; ++j) {
        int s1 = sgn(dot(h, g1.column(j))), s2 = sgn(dot(h, g2.column(j)));
        pos = pos && s1 >= 0 && s2 <= 0;
        neg = neg && s1 <= 0 && s2 >= 0;
      }
      if (pos || neg) return true;
    }
    std::size_t i = k - 1;
    while (i > 0 && pick[i - 1] == all.size() - (k - 1) + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

CoverVerification verify_cover(const UnimodularCover& cover, const SimplicialCone& cone) {
  CoverVerification v;
  if (cone.dim() != 4) {
    v.failures.push_back("cone is not 4-dimensional");
    return v;
  }
  ConeFrame f = frame(cone);
  std::vector<IntMatrix> subs;
  for (std::size_t s = 0; s < cover.subcones.size(); ++s) {
    IntMatrix m(4, 4);
    for (std::size_t j = 0; j < 4; ++j) m.set_column(j, f.to_coords(cover.subcones[s].column(j)));
    subs.push_back(std::move(m));
  }

  HilbertBasis hb = hilbert_basis(cone);
  for (std::size_t s = 0; s < subs.size(); ++s) {
    if (abs(det(subs[s])) != 1) v.failures.push_back("subcone " + std::to_string(s + 1) + " is not unimodular");
    for (std::size_t j = 0; j < 4; ++j)
      if (!hb.contains(cover.subcones[s].column(j)))
        v.failures.push_back("subcone " + std::to_string(s + 1) + " uses a non-Hilbert generator");
  }

  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      if (separated(subs[a], subs[b])) ++v.disjoint_pairs;
      else v.failures.push_back("subcones " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " overlap");
    }

  // Simplex volumes of C ∩ {φ <= 2}, φ the coefficient sum in the generator basis.
  RatMatrix rinv = inverse(f.coords);
  v.volume = 0;
  for (const IntMatrix& s : subs) {
    Rat vol = Rat(abs(det(s))) / 24;
    for (std::size_t j = 0; j < 4; ++j) {
      RatVector l = rinv * s.column(j);
      Rat phi = 0;
      for (const Rat& x : l) phi += x;
      vol *= Rat(2) / phi;
    }
    v.volume += vol;
  }
  const Rat expected = Rat(abs(det(f.coords)) * 16) / 24;
  if (v.volume != expected) v.failures.push_back("volume " + v.volume.get_str() + " differs from " + expected.get_str());

  std::vector<RatMatrix> invs;
  for (const IntMatrix& s : subs) invs.push_back(inverse(s));
  for (const IntVector& z : sample_points(cone, 2)) {
    ++v.sampled_points;
    IntVector x = f.to_coords(z);
    bool inside = false;
    for (const RatMatrix& inv : invs) {
      RatVector l = inv * x;
      if (std::all_of(l.begin(), l.end(), [](const Rat& c) { return sgn(c) >= 0; })) {
        inside = true;
        break;
      }
    }
    if (!inside) v.failures.push_back("sample point " + to_string(z) + " is not covered");
  }
  v.ok = v.failures.empty();
  return v;
}

}  // namespace icr
