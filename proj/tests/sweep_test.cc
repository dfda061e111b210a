#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rtasim/sweep.hpp"

using namespace rtasim;

namespace {

SweepGrid tiny_grid() {
  SweepGrid grid;
  grid.base.n_stas = 4;
  grid.base.total_rus = 4;
  grid.base.max_rta_rus = 4;
  grid.base.horizon = {500, 0};
  grid.algorithms = {Algorithm::Nuora, Algorithm::Ncra};
  grid.copies = {1, 2};
  grid.noise_probs = {0.0, 0.2};
  grid.lambdas = {5.0, 50.0};
  return grid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path(std::string("rtasim_test_") + name + ".csv") {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("grid cells enumerate in deterministic nested order") {
  SweepGrid grid = tiny_grid();
  auto cells = grid.cells();
  REQUIRE(cells.size() == 16);
  CHECK(cells[0].algorithm == Algorithm::Nuora);
  CHECK(cells[0].copies == 1);
  CHECK(cells[0].noise_prob == 0.0);
  CHECK(cells[0].arrival_rate == 5.0);
  CHECK(cells[1].arrival_rate == 50.0);  // lambda is the innermost axis
  CHECK(cells[8].algorithm == Algorithm::Ncra);
}

TEST_CASE("single-cell sweep writes a header and one row") {
  SweepGrid grid = tiny_grid();
  grid.algorithms = {Algorithm::Ngra};
  grid.copies = {2};
  grid.noise_probs = {0.1};
  grid.lambdas = {10.0};
  TempFile tmp("single");
  SweepOptions opt;
  opt.reps = 2;
  opt.seed = 3;
  auto outcome = run_sweep(grid, opt, tmp.path);
  CHECK(outcome.ok);
  CHECK(outcome.completed_cells == 1);

  std::ifstream in(tmp.path);
  std::string header, row, extra;
  REQUIRE(std::getline(in, header));
  CHECK(header == csv_header());
  REQUIRE(std::getline(in, row));
  CHECK(row.substr(0, 5) == "ngra,");
  CHECK_FALSE(std::getline(in, extra));
}

TEST_CASE("reruns with the same seed are byte-identical") {
  SweepGrid grid = tiny_grid();
  SweepOptions opt;
  opt.reps = 2;
  opt.seed = 77;
  TempFile a("rerun_a"), b("rerun_b");
  CHECK(run_sweep(grid, opt, a.path).ok);
  CHECK(run_sweep(grid, opt, b.path).ok);
  CHECK(read_file(a.path) == read_file(b.path));
}

TEST_CASE("interrupted sweeps resume by completed cell count") {
  SweepGrid grid = tiny_grid();
  SweepOptions opt;
  opt.reps = 2;
  opt.seed = 77;
  TempFile full("resume_full"), partial("resume_partial");
  CHECK(run_sweep(grid, opt, full.path).ok);

  // Simulate an interruption: keep the header and the first 5 data rows.
  {
    std::ifstream in(full.path);
    std::ofstream out(partial.path);
    std::string line;
    for (int i = 0; i < 6 && std::getline(in, line); ++i) out << line << '\n';
  }
  auto outcome = run_sweep(grid, opt, partial.path);
  CHECK(outcome.ok);
  CHECK(outcome.resumed_cells == 5);
  CHECK(outcome.completed_cells == 11);
  CHECK(read_file(partial.path) == read_file(full.path));
}

TEST_CASE("PLR grows with arrival rate along a congested series") {
  // Sanity property on the CSV contents: for NUORA f=1 at p=0, PLR is
  // monotone nondecreasing in lambda once rates are high enough to matter.
  SweepGrid grid;
  grid.base.n_stas = 6;
  grid.base.total_rus = 4;
  grid.base.max_rta_rus = 4;
  grid.base.horizon = {4000, 0};
  grid.algorithms = {Algorithm::Nuora};
  grid.copies = {1};
  grid.noise_probs = {0.0};
  grid.lambdas = {50.0, 200.0, 800.0};
  TempFile tmp("monotone");
  SweepOptions opt;
  opt.reps = 4;
  opt.seed = 9;
  REQUIRE(run_sweep(grid, opt, tmp.path).ok);

  std::ifstream in(tmp.path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> plr;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(ss, field, ',');
    plr.push_back(std::stod(field));
  }
  REQUIRE(plr.size() == 3);
  CHECK(plr[0] <= plr[1]);
  CHECK(plr[1] <= plr[2]);
}

TEST_CASE("default lambda axis spans 0.5 to 50") {
  auto axis = default_lambda_axis();
  REQUIRE(axis.size() >= 10);
  CHECK(axis.front() == doctest::Approx(0.5));
  CHECK(axis.back() == doctest::Approx(50.0));
  for (std::size_t i = 1; i < axis.size(); ++i) CHECK(axis[i] > axis[i - 1]);
}
