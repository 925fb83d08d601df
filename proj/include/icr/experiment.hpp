#pragma once

// Randomized sweeps: per (dim, det) cell, random cones of that multiplicity,
// engine and oracle maxima over the dilated sample, one CSV row per cone.

#include "icr/cone.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace icr {

struct ExperimentConfig {
  std::size_t dim_lo = 3, dim_hi = 4;
  long min_det = 1, max_det = 5;
  std::size_t count = 5;
  long dilation = 2;
  std::uint64_t seed = 1;
  bool timing = false;
};

struct ExperimentRow {
  std::size_t dim = 0;
  Int det;
  std::size_t cosets = 0;  // nontrivial classes
  std::optional<std::size_t> engine_max;  // empty when the engine gave up
  std::size_t oracle_max = 0;
  Int bound;
  std::string method;
  std::uint64_t seed = 0;  // reproduces the cone via cone_for_seed
  std::optional<double> elapsed_ms;
  // Not written to CSV.
  std::size_t points = 0;
  std::size_t engine_below_oracle = 0;  // points where the engine beat the exact minimum
  std::size_t raw_max = 0;              // before reduce_to_hilbert
  std::size_t raw_not_hilbert = 0;      // points whose raw terms were not all Hilbert
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::size_t points = 0;
  std::size_t violations = 0;  // engine < oracle, or oracle above a bound
};

// Cone seed for cone `index` of cell (dim, det).
std::uint64_t cell_seed(std::uint64_t seed, std::size_t dim, long det, std::size_t index);
SimplicialCone cone_for_seed(std::uint64_t seed, std::size_t dim, long det);

// One row for a given cone; seed is copied into the row.
ExperimentRow measure_cone(const SimplicialCone& cone, long dilation, std::uint64_t seed, bool timing);

ExperimentResult run_experiment(const ExperimentConfig& config);

extern const char* const kCsvHeader;  // without newline
std::string csv_line(const ExperimentRow& row);
std::string to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace icr
