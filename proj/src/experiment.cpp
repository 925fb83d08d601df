#include "icr/experiment.hpp"

#include "icr/cosets.hpp"
#include "icr/decomposition.hpp"
#include "icr/errors.hpp"
#include "icr/oracle.hpp"
#include "icr/random_cones.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace icr {

const char* const kCsvHeader = "dim,det,cosets,engine_max,oracle_max,bound,method,seed,elapsed_ms";

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t seed, std::size_t dim, long det, std::size_t index) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ dim);
  h = splitmix(h ^ static_cast<std::uint64_t>(det));
  return splitmix(h ^ index);
}

SimplicialCone cone_for_seed(std::uint64_t seed, std::size_t dim, long det) {
  Rng rng(seed);
  return SimplicialCone(random_cone_matrix(rng, dim, det));
}

ExperimentRow measure_cone(const SimplicialCone& cone, long dilation, std::uint64_t seed, bool timing) {
  auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.dim = cone.dim();
  row.det = multiplicity(cone);
  row.cosets = coset_profile(cone).nontrivial_class_count;
  IcrBound b = icr_upper_bound(cone);
  row.bound = b.value;
  row.method = b.method;
  row.seed = seed;

  SampleReport s = sample_icp(cone, dilation);
  row.oracle_max = s.max_min_terms;
  row.points = s.points.size();
  DecompositionEngine eng(cone);
  try {
    std::size_t best = 0;
    for (const SamplePoint& p : s.points) {
      Decomposition d = eng.decompose(p.z);
      Decomposition h = eng.reduce_to_hilbert(d);
      best = std::max(best, h.term_count());
      row.raw_max = std::max(row.raw_max, d.term_count());
      if (!d.all_hilbert) ++row.raw_not_hilbert;
      if (h.term_count() < p.min_terms) ++row.engine_below_oracle;
    }
    row.engine_max = best;
  } catch (const Unresolved&) {
    row.engine_max.reset();
  }
  if (timing)
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  if (c.dim_lo < 1 || c.dim_lo > c.dim_hi) throw InvalidArgument("bad dimension range");
  if (c.min_det < 1) throw InvalidArgument("determinants must be >= 1");
  if (c.dilation < 1) throw InvalidArgument("dilation must be >= 1");
  ExperimentResult res;
  for (std::size_t dim = c.dim_lo; dim <= c.dim_hi; ++dim)
    for (long det = c.min_det; det <= c.max_det; ++det)
      for (std::size_t i = 0; i < c.count; ++i) {
        std::uint64_t s = cell_seed(c.seed, dim, det, i);
        ExperimentRow row = measure_cone(cone_for_seed(s, dim, det), c.dilation, s, c.timing);
        res.points += row.points;
        if (row.engine_below_oracle > 0) ++res.violations;
        if (Int(row.oracle_max) > row.bound) ++res.violations;
        res.rows.push_back(std::move(row));
      }
  return res;
}

std::string csv_line(const ExperimentRow& r) {
  std::string s = std::to_string(r.dim) + "," + r.det.get_str() + "," + std::to_string(r.cosets) + ",";
  s += r.engine_max ? std::to_string(*r.engine_max) : std::string("unresolved");
  s += "," + std::to_string(r.oracle_max) + "," + r.bound.get_str() + "," + r.method + "," + std::to_string(r.seed) + ",";
  if (r.elapsed_ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.elapsed_ms);
    s += buf;
  }
  return s;
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ExperimentRow& r : rows) out += csv_line(r) + "\n";
  return out;
}

}  // namespace icr
