#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rtasim/config.hpp"
#include "rtasim/metrics.hpp"

namespace rtasim {

// Experiment grid: the cartesian product algorithm x copies x noise x
// lambda over a shared base config. Cells run in a fixed nested order
// (algorithm outermost, lambda innermost), all with the same base seed so
// the comparison across algorithms uses common random numbers.
struct SweepGrid {
  SimConfig base;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint32_t> copies;
  std::vector<double> noise_probs;
  std::vector<double> lambdas;

  std::size_t cell_count() const {
    return algorithms.size() * copies.size() * noise_probs.size() *
           lambdas.size();
  }
  // Cell configs in emission order.
  std::vector<SimConfig> cells() const;
};

struct SweepOptions {
  std::uint32_t reps = 8;
  std::uint64_t seed = 1;
  std::uint32_t jobs = 1;
  std::ostream* progress = nullptr;  // one line per completed cell
};

struct SweepOutcome {
  std::size_t completed_cells = 0;
  std::size_t resumed_cells = 0;  // found already done in the output file
  bool ok = false;
  std::string error;
};

std::string csv_header();
std::string csv_row(const SimConfig& cell, const RunResult& result);

// Runs every grid cell, appending one CSV row per cell to `csv_path`
// (header written for a fresh file) and flushing after each so an
// interrupted sweep can be resumed: existing data rows are counted and
// that many leading cells are skipped on the next invocation.
SweepOutcome run_sweep(const SweepGrid& grid, const SweepOptions& options,
                       const std::string& csv_path);

// Default lambda axis when none is given: log-spaced points per decade
// over [0.5, 50] packets/second per STA (a repo choice, see docs).
std::vector<double> default_lambda_axis();

}  // namespace rtasim
