// One PASS/FAIL line per acceptance criterion. Exit status 0 only when all pass.
// Usage: icr_acceptance [output-dir]   (CSV files of criteria 4 and 6 go there)

#include "icr/cone_io.hpp"
#include "icr/cosets.hpp"
#include "icr/decomposition.hpp"
#include "icr/errors.hpp"
#include "icr/experiment.hpp"
#include "icr/exact_linalg.hpp"
#include "icr/oracle.hpp"
#include "icr/random_cones.hpp"
#include "icr/special_cones.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace icr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_s(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << std::endl;
}

SimplicialCone det5_reference() {
  return SimplicialCone(IntMatrix::columns_of({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 2, 3, 5}}));
}

// Criterion 1: |par R| = |det R| on 200 cones, dims 2-5, |det| <= 50.
Outcome multiplicity_identity() {
  auto start = Clock::now();
  Rng rng(101);
  std::size_t bad = 0, points = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 4);
    IntMatrix m = t % 2 == 0 ? random_cone_matrix(rng, n, rng.uniform(1, 50)) : random_nonsingular(rng, n, -4, 4, 50);
    SimplicialCone c(m);
    std::size_t size = enumerate_parallelepiped(c).size();
    points += size;
    if (Int(static_cast<unsigned long>(size)) != abs(det(m))) ++bad;
  }
  double s = seconds_since(start);
  return {bad == 0 && s < 10.0,
          "200 cones, " + std::to_string(points) + " par points, " + std::to_string(bad) + " mismatches, " + fmt_s(s) +
              " (limit 10 s)"};
}

// Criterion 2: (r^i)* - (r^j)* integral iff λ_i(y) = λ_j(y) on par R, both
// directions, with the duals taken straight from R^{-T}.
Outcome lemma_equivalence() {
  Rng rng(202);
  std::size_t pairs = 0, forward = 0, backward = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 4);
    SimplicialCone c(random_cone_matrix(rng, n, rng.uniform(1, 30)));
    RatMatrix inv = inverse(c.generators());  // row i is (r^i)*^T
    auto par = enumerate_parallelepiped(c).points;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        ++pairs;
        bool integral = true;
        for (std::size_t k = 0; k < n; ++k) integral = integral && Rat(inv(i, k) - inv(j, k)).get_den() == 1;
        bool equal = std::all_of(par.begin(), par.end(), [&](const auto& y) { return y.lambda[i] == y.lambda[j]; });
        if (integral && !equal) ++forward;
        if (equal && !integral) ++backward;
      }
    if (!check_lemma_coeff_equivalence(c)) ++forward;
  }
  return {forward == 0 && backward == 0, std::to_string(pairs) + " pairs on 200 cones, " + std::to_string(forward) +
                                              " forward and " + std::to_string(backward) + " backward failures"};
}

// Criterion 3: projecting par R along r^i gives exactly par of the projected
// cone, and Δ does not grow.
Outcome projection_lemmas() {
  Rng rng(303);
  std::size_t projections = 0, set_bad = 0, delta_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(3 + t % 3);
    SimplicialCone c(random_cone_matrix(rng, n, rng.uniform(1, 30)));
    auto par = enumerate_parallelepiped(c).points;
    for (std::size_t i = 0; i < n; ++i) {
      ++projections;
      ConeProjection pr = project_cone(c, i);
      std::set<IntVector> image, target;
      for (const auto& y : par) image.insert(pr.project(y.vector));
      for (const auto& y : enumerate_parallelepiped(pr.cone).points) target.insert(y.vector);
      if (image != target) ++set_bad;
      if (multiplicity(pr.cone) > multiplicity(c)) ++delta_bad;
    }
  }
  return {set_bad == 0 && delta_bad == 0, std::to_string(projections) + " projections on 100 cones, " +
                                              std::to_string(set_bad) + " set mismatches, " + std::to_string(delta_bad) +
                                              " multiplicity increases"};
}

// Criterion 4 rows: 100 cones per det 1..5, dims cycling through 3..6.
std::vector<ExperimentRow> small_det_rows() {
  std::vector<ExperimentRow> rows;
  for (long det = 1; det <= 5; ++det)
    for (std::size_t i = 0; i < 100; ++i) {
      const std::size_t dim = 3 + i % 4;
      std::uint64_t s = cell_seed(4, dim, det, i);
      rows.push_back(measure_cone(cone_for_seed(s, dim, det), 2, s, false));
    }
  return rows;
}

// Criterion 6 rows: random cones of each (n, Δ) plus skew cones whose dual
// classes are as numerous as possible.
std::vector<ExperimentRow> mid_det_rows() {
  std::vector<ExperimentRow> rows;
  for (auto [n, d] : {std::pair<std::size_t, long>{6, 6}, {7, 6}, {7, 7}}) {
    for (std::size_t i = 0; i < 8; ++i) {
      std::uint64_t s = cell_seed(6, n, d, i);
      rows.push_back(measure_cone(cone_for_seed(s, n, d), 2, s, false));
    }
    for (std::size_t shift = 0; shift < 3; ++shift) {
      IntVector r(n);
      for (std::size_t k = 0; k + 1 < n; ++k) r[k] = static_cast<long>(1 + (k + shift) % static_cast<std::size_t>(d - 1));
      r[n - 1] = d;
      rows.push_back(measure_cone(make_skew_cone(r).cone, 2, 0, false));
    }
  }
  return rows;
}

struct RowSummary {
  std::size_t points = 0, below = 0, unresolved = 0, raw_not_hilbert = 0, reduce_grew = 0;
};

RowSummary summarize(const std::vector<ExperimentRow>& rows) {
  RowSummary s;
  for (const ExperimentRow& r : rows) {
    s.points += r.points;
    s.below += r.engine_below_oracle;
    s.raw_not_hilbert += r.raw_not_hilbert;
    if (!r.engine_max) ++s.unresolved;
    else if (*r.engine_max > r.raw_max) ++s.reduce_grew;
  }
  return s;
}

std::string csv4, csv6;

Outcome small_det(const std::string& dir) {
  auto start = Clock::now();
  std::vector<ExperimentRow> rows = small_det_rows();
  double s = seconds_since(start);
  csv4 = to_csv(rows);
  std::ofstream(dir + "/acceptance_small_det.csv", std::ios::binary) << csv4;
  RowSummary sum = summarize(rows);
  std::size_t over = 0, oracle_over = 0;
  for (const ExperimentRow& r : rows) {
    if (!r.engine_max || *r.engine_max > r.dim) ++over;
    if (r.oracle_max > r.dim) ++oracle_over;
  }
  bool ok = over == 0 && oracle_over == 0 && sum.below == 0 && sum.unresolved == 0 && s < 300;
  return {ok, std::to_string(rows.size()) + " cones, " + std::to_string(sum.points) + " points, engine > dim on " +
                  std::to_string(over) + " cones, oracle > dim on " + std::to_string(oracle_over) +
                  ", engine < oracle on " + std::to_string(sum.below) + " points, raw lifts not Hilbert on " +
                  std::to_string(sum.raw_not_hilbert) + " points, reduction grew the maximum on " +
                  std::to_string(sum.reduce_grew) + " cones, " + fmt_s(s) + " (limit 300 s)"};
}

// Criterion 5: the det-5 cover on the reference cone and on random cones
// meeting the premises.
Outcome cover_certificate() {
  std::vector<SimplicialCone> cones{det5_reference()};
  Rng rng(505);
  for (int tries = 0; cones.size() < 12; ++tries) {
    if (tries == 100000) return {false, "only " + std::to_string(cones.size()) + " cones meet the premises"};
    SimplicialCone c(random_cone_matrix(rng, 4, 5));
    CosetProfile p = coset_profile(c);
    if (p.nontrivial_class_count == 4 && p.equal_pairs.empty()) cones.push_back(c);
  }
  std::size_t bad = 0;
  std::string first;
  for (const SimplicialCone& c : cones) {
    UnimodularCover cv = build_cover_det5(c);
    std::size_t three = 0, two = 0, one = 0;
    for (std::size_t g : cv.generator_counts) {
      three += g == 3;
      two += g == 2;
      one += g == 1;
    }
    bool unimod = std::all_of(cv.determinants.begin(), cv.determinants.end(), [](const Int& d) { return abs(d) == 1; });
    CoverVerification v = verify_cover(cv, c);
    bool ok = cv.subcones.size() == 18 && three == 4 && two == 10 && one == 4 && unimod && cv.disjoint_pairs == 153 &&
              cv.volume == Rat(10, 3) && cv.expected_volume == Rat(10, 3) && v.ok && v.disjoint_pairs == 153;
    if (!ok) {
      ++bad;
      if (first.empty()) first = v.failures.empty() ? std::string("census or certificate") : v.failures.front();
    }
  }
  return {bad == 0, std::to_string(cones.size()) + " cones, each 18 subcones 4/10/4, |det| 1, 153 disjoint pairs, volume 10/3; " +
                        std::to_string(bad) + " failures" + (first.empty() ? "" : " (" + first + ")")};
}

Outcome mid_det(const std::string& dir) {
  auto start = Clock::now();
  std::vector<ExperimentRow> rows = mid_det_rows();
  double s = seconds_since(start);
  csv6 = to_csv(rows);
  std::ofstream(dir + "/acceptance_mid_det.csv", std::ios::binary) << csv6;
  RowSummary sum = summarize(rows);
  std::size_t over = 0, oracle_max = 0;
  for (const ExperimentRow& r : rows) {
    Int limit = Int(static_cast<unsigned long>(r.dim)) + r.det - 3;
    if (!r.engine_max || Int(static_cast<unsigned long>(*r.engine_max)) > limit) ++over;
    if (Int(static_cast<unsigned long>(r.oracle_max)) > limit) ++over;
    oracle_max = std::max(oracle_max, r.oracle_max);
  }
  bool ok = over == 0 && sum.below == 0 && sum.unresolved == 0 && s < 300;
  return {ok, std::to_string(rows.size()) + " cones, " + std::to_string(sum.points) + " points, " + std::to_string(over) +
                  " above n + det - 3, largest oracle minimum " + std::to_string(oracle_max) + ", " + fmt_s(s) +
                  " (limit 300 s)"};
}

// Criterion 7: 50 skew specs with |I \ {0, Δ-1}| <= 2.
Outcome skew_vector() {
  Rng rng(707);
  std::size_t bad_classes = 0, bad_checks = 0, bad_icp = 0, points = 0;
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 7));
    const long delta = rng.uniform(1, 9);
    const long a = rng.uniform(0, delta - 1), b = rng.uniform(0, delta - 1);
    IntVector r(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      long pick = rng.uniform(0, 3);
      r[i] = pick == 0 ? 0 : pick == 1 ? delta - 1 : pick == 2 ? a : b;
    }
    r[n - 1] = delta;
    SkewCone s = make_skew_cone(r);
    if (!s.spec.hypothesis) throw InternalError("generated spec violates the hypothesis");
    SkewCheck chk = check_prop_skew(s.spec);
    if (chk.nontrivial_classes > 3) ++bad_classes;
    if (!chk.ok) ++bad_checks;
    ExperimentRow row = measure_cone(s.cone, 2, 0, false);
    points += row.points;
    if (row.oracle_max > n || !row.engine_max || *row.engine_max > n || row.engine_below_oracle > 0) ++bad_icp;
  }
  return {bad_classes + bad_checks + bad_icp == 0,
          "50 specs, " + std::to_string(points) + " points, " + std::to_string(bad_classes) + " with > 3 classes, " +
              std::to_string(bad_checks) + " failed cross-checks, " + std::to_string(bad_icp) + " above n"};
}

// Criterion 8: the p,q cones.
Outcome gorenstein() {
  std::size_t bad = 0;
  std::string notes;
  for (auto [p, q] : {std::pair{2L, 3L}, {2L, 5L}, {3L, 5L}}) {
    PqCone c = make_pq_cone(p, q);
    GorensteinCheck g = gorenstein_check(c.cone);
    bool ok = g.premise_holds && g.y_in_par && g.divisor_count == 4 && g.cyclic && pq_not_skew(c.cone) &&
              multiplicity(c.cone) == p * q;
    if (p == 2 && q == 3) ok = ok && g.y == int_vector({1, 1, 1, 1});
    ExperimentRow row = measure_cone(c.cone, 2, 0, false);
    ok = ok && row.oracle_max <= 4 && row.engine_max && *row.engine_max <= 4 && row.engine_below_oracle == 0;
    if (!ok) ++bad;
    notes += " (" + std::to_string(p) + "," + std::to_string(q) + ") y=" + to_string(g.y) + " max " +
             std::to_string(row.oracle_max) + ";";
  }
  return {bad == 0, "premise, 4 divisors, cyclic, HNF not skew, sampled ICP;" + notes + " " + std::to_string(bad) + " failures"};
}

// Criterion 9: oracle witnesses and subadditivity on 1000 (cone, z) pairs.
Outcome oracle_consistency() {
  Rng rng(909);
  std::size_t bad_witness = 0, bad_sub = 0, inconclusive = 0, pairs = 0;
  while (pairs < 1000) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    SimplicialCone c(random_cone_matrix(rng, n, rng.uniform(1, 8)));
    HilbertBasis hb = hilbert_basis(c);
    std::vector<IntVector> pts = sample_points(c, 2);
    for (int k = 0; k < 10; ++k, ++pairs) {
      const IntVector& z1 = pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pts.size()) - 1))];
      const IntVector& z2 = pts[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pts.size()) - 1))];
      OracleReport a = min_terms(c, z1), b = min_terms(c, z2), s = min_terms(c, z1 + z2);
      for (const OracleReport* r : {&a, &b, &s}) {
        if (r->status != OracleReport::Status::Exact) {
          ++inconclusive;
          continue;
        }
        IntVector sum(n, Int(0));
        bool ok = r->witness.terms.size() == r->min_terms;
        for (const Term& t : r->witness.terms) {
          sum = sum + t.coeff * t.vector;
          ok = ok && sgn(t.coeff) > 0 && hb.contains(t.vector);
        }
        if (!ok || sum != r->target) ++bad_witness;
      }
      if (a.status == OracleReport::Status::Exact && b.status == OracleReport::Status::Exact &&
          s.status == OracleReport::Status::Exact && s.min_terms > a.min_terms + b.min_terms)
        ++bad_sub;
    }
  }
  return {bad_witness + bad_sub + inconclusive == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(bad_witness) + " invalid witnesses, " +
              std::to_string(bad_sub) + " subadditivity failures, " + std::to_string(inconclusive) + " inconclusive"};
}

// Criterion 10: rerun 4 and 6 and compare bytes.
Outcome determinism() {
  if (csv4.empty() || csv6.empty()) return {false, "criteria 4 and 6 produced no CSV"};
  bool same4 = to_csv(small_det_rows()) == csv4;
  bool same6 = to_csv(mid_det_rows()) == csv6;
  return {same4 && same6, std::string("criterion 4 CSV ") + (same4 ? "identical" : "differs") + " (" +
                              std::to_string(csv4.size()) + " bytes), criterion 6 CSV " + (same6 ? "identical" : "differs") +
                              " (" + std::to_string(csv6.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";
  report(1, "multiplicity identity", multiplicity_identity);
  report(2, "coefficient-difference lemma", lemma_equivalence);
  report(3, "projection lemmas", projection_lemmas);
  report(4, "bound n for det <= 5 on samples", [&] { return small_det(dir); });
  report(5, "det-5 cover certificate", cover_certificate);
  report(6, "bound n + det - 3 on samples", [&] { return mid_det(dir); });
  report(7, "skew-vector proposition", skew_vector);
  report(8, "Gorenstein proposition and p,q example", gorenstein);
  report(9, "oracle self-consistency", oracle_consistency);
  report(10, "determinism", determinism);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
