#include "rtasim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rtasim/engine.hpp"

namespace rtasim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Counts non-header lines already present, for resumption.
std::size_t existing_data_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::size_t rows = 0;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;  // header
    }
    if (!line.empty()) ++rows;
  }
  return rows;
}

}  // namespace

std::vector<SimConfig> SweepGrid::cells() const {
  std::vector<SimConfig> out;
  for (Algorithm algo : algorithms)
    for (std::uint32_t f : copies)
      for (double p : noise_probs)
        for (double lambda : lambdas) {
          SimConfig cfg = base;
          cfg.algorithm = algo;
          cfg.copies = f;
          cfg.noise_prob = p;
          cfg.arrival_rate = lambda;
          out.push_back(cfg);
        }
  return out;
}

std::string csv_header() {
  return "algorithm,f,p,lambda,plr,plr_ci_low,plr_ci_high,nonrta_share,"
         "share_ci_low,share_ci_high,generated,slots,seed";
}

std::string csv_row(const SimConfig& cell, const RunResult& r) {
  std::ostringstream out;
  out << to_string(cell.algorithm) << ',' << cell.copies << ','
      << fmt(cell.noise_prob) << ',' << fmt(cell.arrival_rate) << ','
      << fmt(r.plr) << ',' << fmt(r.plr_ci.low) << ',' << fmt(r.plr_ci.high)
      << ',' << fmt(r.nonrta_share) << ',' << fmt(r.share_ci.low) << ','
      << fmt(r.share_ci.high) << ',' << r.generated << ',' << r.slots << ','
      << r.seed;
  return out.str();
}

std::vector<double> default_lambda_axis() {
  // 6 points per decade from 0.5 to 50.
  std::vector<double> axis;
  const double lo = std::log10(0.5), hi = std::log10(50.0);
  const int steps = 12;
  for (int i = 0; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    axis.push_back(std::pow(10.0, x));
  }
  return axis;
}

SweepOutcome run_sweep(const SweepGrid& grid, const SweepOptions& options,
                       const std::string& csv_path) {
  SweepOutcome outcome;
  const std::vector<SimConfig> cells = grid.cells();

  const std::size_t done = existing_data_rows(csv_path);
  outcome.resumed_cells = std::min(done, cells.size());

  std::ofstream out;
  if (done == 0) {
    out.open(csv_path, std::ios::trunc);
    if (out) out << csv_header() << '\n' << std::flush;
  } else {
    out.open(csv_path, std::ios::app);
  }
  if (!out) {
    outcome.error = "cannot open output file: " + csv_path;
    return outcome;
  }

  for (std::size_t i = outcome.resumed_cells; i < cells.size(); ++i) {
    const SimConfig& cell = cells[i];
    RunResult r =
        run_replications(cell, options.reps, options.seed, options.jobs);
    out << csv_row(cell, r) << '\n' << std::flush;
    if (!out) {
      outcome.error = "write failed after " +
                      std::to_string(outcome.completed_cells) + " cells";
      return outcome;
    }
    ++outcome.completed_cells;
    if (options.progress) {
      *options.progress << "[" << (i + 1) << "/" << cells.size() << "] "
                        << csv_row(cell, r) << std::endl;
    }
  }
  outcome.ok = true;
  return outcome;
}

}  // namespace rtasim
