#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtasim/engine.hpp"
#include "rtasim/oracle.hpp"
#include "rtasim/sweep.hpp"

namespace {

using rtasim::SimConfig;

struct ConfigFlags {
  std::string algorithm = "nuora";
  std::vector<std::string> errors;
};

// Scalar scenario parameters, shared by all subcommands. Defaults are the
// evaluation scenario: 18 STAs on a 40 MHz channel (18 26-tone RUs, up to 9
// for RTA), 270 us slots, delay budget of 5 slots.
void add_scenario_flags(CLI::App& app, SimConfig& cfg, ConfigFlags& flags) {
  app.add_option("--n-stas", cfg.n_stas, "RTA stations in the BSS")
      ->capture_default_str();
  app.add_option("--total-rus", cfg.total_rus, "Channel width in 26-tone RUs")
      ->capture_default_str();
  app.add_option("--max-rta-rus", cfg.max_rta_rus,
                 "RUs the AP may allocate to RTA traffic")
      ->capture_default_str();
  app.add_option("--slot-duration", cfg.slot_duration, "Slot length, seconds")
      ->capture_default_str();
  app.add_option("--delay-budget", cfg.delay_budget,
                 "Per-packet deadline, seconds")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--horizon-packets", cfg.horizon.packets,
                 "Stop after this many generated packets (0 = unbounded)")
      ->capture_default_str();
  app.add_option("--horizon-slots", cfg.horizon.slots,
                 "Stop after this many slots (0 = unbounded)")
      ->capture_default_str();
  app.set_config("--config", "", "Read defaults from a key=value file");
}

int fail_validation(const std::vector<std::string>& errors) {
  for (const std::string& e : errors)
    std::cerr << "config error: " << e << "\n";
  return 2;
}

void warn_large_copies(const std::vector<std::uint32_t>& copies) {
  for (std::uint32_t f : copies)
    if (f >= 4) {
      std::cerr << "note: f = " << f
                << " accepted, but 4+ copies per slot typically raises PLR "
                   "in the evaluated traffic range\n";
      return;
    }
}

std::string default_output_dir() {
  if (const char* env = std::getenv("RTASIM_OUTPUT_DIR")) return env;
  return ".";
}

int parse_algorithms(const std::vector<std::string>& names,
                     std::vector<rtasim::Algorithm>& out) {
  for (const std::string& name : names) {
    auto algo = rtasim::algorithm_from_string(name);
    if (!algo) {
      std::cerr << "config error: algorithm: unknown value '" << name
                << "' (expected nuora, ngra or ncra)\n";
      return 2;
    }
    out.push_back(*algo);
  }
  return 0;
}

void print_result(const SimConfig& cfg, const rtasim::RunResult& r) {
  std::printf("algorithm      %s (f=%u, p=%g, lambda=%g)\n",
              rtasim::to_string(cfg.algorithm), cfg.copies, cfg.noise_prob,
              cfg.arrival_rate);
  std::printf("slots          %llu\n", (unsigned long long)r.slots);
  std::printf("packets        generated=%llu delivered=%llu dropped=%llu "
              "in-flight=%llu\n",
              (unsigned long long)r.generated, (unsigned long long)r.delivered,
              (unsigned long long)r.dropped, (unsigned long long)r.in_flight);
  std::printf("plr            %.6g  [%.6g, %.6g] (95%%)\n", r.plr, r.plr_ci.low,
              r.plr_ci.high);
  std::printf("nonrta_share   %.6g  [%.6g, %.6g] (95%%)\n", r.nonrta_share,
              r.share_ci.low, r.share_ci.high);
}

// Optional per-STA forced arrivals: a JSON array of arrays of seconds.
int load_arrival_plan(const std::string& path, rtasim::ArrivalPlan& plan) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read arrivals file: " << path << "\n";
    return 1;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    plan.per_sta = j.get<std::vector<std::vector<double>>>();
  } catch (const std::exception& e) {
    std::cerr << "arrivals file: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Slot-level simulator of uplink OFDMA resource allocation for "
      "real-time traffic in a Wi-Fi 7 BSS (NUORA / NGRA / NCRA)"};
  app.require_subcommand(1);

  // ---- run ----------------------------------------------------------
  SimConfig run_cfg;
  ConfigFlags run_flags;
  std::uint32_t run_reps = 8;
  std::uint32_t run_jobs = 1;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run one configuration and print metrics");
  add_scenario_flags(*run_cmd, run_cfg, run_flags);
  run_cmd->add_option("--lambda,--arrival-rate", run_cfg.arrival_rate,
                      "Packet arrival rate per STA, packets/second")
      ->capture_default_str();
  run_cmd->add_option("-p,--noise-prob", run_cfg.noise_prob,
                      "Per-RU noise/interference loss probability")
      ->capture_default_str();
  run_cmd->add_option("-f,--copies", run_cfg.copies,
                      "Frame copies per slot during resolution")
      ->capture_default_str();
  run_cmd->add_option("--algo,--algorithm", run_flags.algorithm,
                      "Scheduler: nuora, ngra or ncra")
      ->capture_default_str();
  run_cmd->add_option("--reps", run_reps, "Independent replications")
      ->capture_default_str();
  run_cmd->add_option("--jobs", run_jobs, "Worker threads")
      ->capture_default_str();

  // ---- sweep --------------------------------------------------------
  SimConfig sweep_cfg;
  ConfigFlags sweep_flags;
  std::vector<double> sweep_lambdas;
  std::vector<double> sweep_ps{0.0};
  std::vector<std::uint32_t> sweep_fs{1};
  std::vector<std::string> sweep_algos{"nuora"};
  std::uint32_t sweep_reps = 8;
  std::uint32_t sweep_jobs = 1;
  std::string sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a parameter grid and write one CSV row per cell");
  add_scenario_flags(*sweep_cmd, sweep_cfg, sweep_flags);
  sweep_cmd
      ->add_option("--lambda", sweep_lambdas,
                   "Arrival-rate axis (default: log-spaced 0.5..50)")
      ->expected(-1);
  sweep_cmd->add_option("-p,--noise-prob", sweep_ps, "Noise probability axis")
      ->expected(-1);
  sweep_cmd->add_option("-f,--copies", sweep_fs, "Copy-count axis")
      ->expected(-1);
  sweep_cmd->add_option("--algo,--algorithm", sweep_algos, "Algorithm axis")
      ->expected(-1);
  sweep_cmd->add_option("--reps", sweep_reps, "Replications per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out,
                        "Output CSV path (default: $RTASIM_OUTPUT_DIR/"
                        "sweep.csv); appended to when resuming");

  // ---- trace --------------------------------------------------------
  SimConfig trace_cfg;
  ConfigFlags trace_flags;
  std::uint64_t trace_slots = 100;
  std::string trace_out;
  std::string trace_arrivals;
  CLI::App* trace_cmd = app.add_subcommand(
      "trace", "Emit a per-slot JSONL trace of a short run");
  add_scenario_flags(*trace_cmd, trace_cfg, trace_flags);
  trace_cmd->add_option("--lambda,--arrival-rate", trace_cfg.arrival_rate,
                        "Packet arrival rate per STA, packets/second")
      ->capture_default_str();
  trace_cmd->add_option("-p,--noise-prob", trace_cfg.noise_prob,
                        "Per-RU noise/interference loss probability")
      ->capture_default_str();
  trace_cmd->add_option("-f,--copies", trace_cfg.copies,
                        "Frame copies per slot during resolution")
      ->capture_default_str();
  trace_cmd->add_option("--algo,--algorithm", trace_flags.algorithm,
                        "Scheduler: nuora, ngra or ncra")
      ->capture_default_str();
  trace_cmd->add_option("--slots", trace_slots, "Slots to trace (max 10000)")
      ->capture_default_str();
  trace_cmd->add_option("--out", trace_out,
                        "Output path (default: stdout)");
  trace_cmd->add_option("--arrivals", trace_arrivals,
                        "JSON file with per-STA forced arrival times");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      auto algo = rtasim::algorithm_from_string(run_flags.algorithm);
      if (!algo)
        return fail_validation({"algorithm: unknown value '" +
                                run_flags.algorithm + "'"});
      run_cfg.algorithm = *algo;
      warn_large_copies({run_cfg.copies});
      auto errors = rtasim::validate_config(run_cfg);
      if (!errors.empty()) return fail_validation(errors);
      rtasim::RunResult r =
          rtasim::run_replications(run_cfg, run_reps, run_cfg.seed, run_jobs);
      print_result(run_cfg, r);
      return 0;
    }

    if (sweep_cmd->parsed()) {
      rtasim::SweepGrid grid;
      grid.base = sweep_cfg;
      if (int rc = parse_algorithms(sweep_algos, grid.algorithms)) return rc;
      grid.copies = sweep_fs;
      grid.noise_probs = sweep_ps;
      grid.lambdas =
          sweep_lambdas.empty() ? rtasim::default_lambda_axis() : sweep_lambdas;
      warn_large_copies(grid.copies);
      for (const SimConfig& cell : grid.cells()) {
        auto errors = rtasim::validate_config(cell);
        if (!errors.empty()) return fail_validation(errors);
      }
      if (sweep_out.empty())
        sweep_out =
            (std::filesystem::path(default_output_dir()) / "sweep.csv")
                .string();
      rtasim::SweepOptions options;
      options.reps = sweep_reps;
      options.seed = sweep_cfg.seed;
      options.jobs = sweep_jobs;
      options.progress = &std::cerr;
      rtasim::SweepOutcome outcome =
          rtasim::run_sweep(grid, options, sweep_out);
      if (!outcome.ok) {
        std::cerr << "sweep aborted: " << outcome.error << " ("
                  << outcome.completed_cells << " cells completed this run, "
                  << outcome.resumed_cells << " resumed)\n";
        return 1;
      }
      std::cerr << "sweep done: " << outcome.completed_cells
                << " cells written, " << outcome.resumed_cells
                << " resumed, output " << sweep_out << "\n";
      return 0;
    }

    if (trace_cmd->parsed()) {
      auto algo = rtasim::algorithm_from_string(trace_flags.algorithm);
      if (!algo)
        return fail_validation({"algorithm: unknown value '" +
                                trace_flags.algorithm + "'"});
      trace_cfg.algorithm = *algo;
      if (trace_slots == 0 || trace_slots > 10000)
        return fail_validation({"slots: must be in [1, 10000]"});
      trace_cfg.horizon = {0, trace_slots};
      auto errors = rtasim::validate_config(trace_cfg);
      if (!errors.empty()) return fail_validation(errors);

      rtasim::ArrivalPlan plan;
      rtasim::RunOptions options;
      if (!trace_arrivals.empty()) {
        if (int rc = load_arrival_plan(trace_arrivals, plan)) return rc;
        options.arrivals = &plan;
      }
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!trace_out.empty()) {
        file.open(trace_out);
        if (!file) {
          std::cerr << "cannot open output file: " << trace_out << "\n";
          return 1;
        }
        out = &file;
      }
      rtasim::JsonlTraceSink sink(*out);
      options.trace = &sink;
      rtasim::run(trace_cfg, options);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
