// SPDX-License-Identifier: Apache-2.0
//
// beamsim CLI: Monte Carlo sweeps, beam power profiles and beam-budget
// planning for the wideband beamspace MIMO simulator.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "beamsim/channel.hpp"
#include "beamsim/metrics.hpp"
#include "beamsim/runner.hpp"
#include "beamsim/selection.hpp"

namespace {

void print_error(const std::string& message) {
  std::cerr << "{\"error\": \"" << message << "\"}\n";
}

std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("BEAMSIM_OUT_DIR");
  if (dir && *dir && !std::filesystem::path(path).is_absolute())
    return (std::filesystem::path(dir) / path).string();
  return path;
}

void apply_env_seed(beamsim::SweepSpec& spec) {
  const char* env = std::getenv("BEAMSIM_SEED");
  if (env && *env) spec.seed = std::strtoull(env, nullptr, 10);
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  long long seed, int trials, int threads) {
  beamsim::SweepSpec spec = beamsim::load_spec(config_path);
  apply_env_seed(spec);
  if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
  if (trials > 0) spec.trials = trials;
  const beamsim::SweepResult result = beamsim::run_sweep(spec, threads);
  beamsim::emit_csv(result, resolve_out(out_path));
  return 0;
}

int run_beam_profile(const std::string& config_path, std::vector<int> subcarriers,
                     const std::string& out_path) {
  beamsim::SweepSpec spec = beamsim::load_spec(config_path);
  apply_env_seed(spec);
  spec.system.validate();
  spec.channel.validate();

  beamsim::Rng rng(beamsim::mix_seed(spec.seed, 0));
  const auto paths = beamsim::sample_paths(spec.system, spec.channel, rng);
  const auto pulse =
      beamsim::raised_cosine(1.0 / spec.system.bandwidth_hz, spec.channel.pulse_rolloff);
  const auto ch = beamsim::beamspace_direct(paths, spec.system, spec.channel, pulse);

  std::ofstream os(resolve_out(out_path), std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  os << "subcarrier,beam,power\n";
  for (int k : subcarriers) {
    const beamsim::RVec profile = beamsim::beam_power_profile(ch, k);
    for (int b = 0; b < profile.size(); ++b) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.9g", profile[b]);
      os << k << ',' << (b + 1) << ',' << buf << '\n';
    }
  }
  return 0;
}

int run_plan(const std::string& config_path) {
  beamsim::SweepSpec spec = beamsim::load_spec(config_path);
  spec.system.validate();
  spec.channel.validate();
  const auto& cfg = spec.system;
  const auto budget = beamsim::beam_budget(cfg, spec.channel, spec.n_beams);

  const double ops_sic = beamsim::complexity_sic(cfg.n_streams, budget.padded_tx,
                                                 cfg.n_rf_tx, budget.padded_rx,
                                                 cfg.n_subcarriers);
  const double ops_svd_rf =
      beamsim::complexity_svd(cfg.n_rf_rx, cfg.n_rf_tx, cfg.n_subcarriers);
  const double ops_svd_beams =
      beamsim::complexity_svd(budget.padded_rx, budget.padded_tx, cfg.n_subcarriers);
  const double rho = cfg.transmit_power_w;

  std::printf("config: %s\n", config_path.c_str());
  std::printf("n_tx: %d\nn_rx: %d\nn_rf_tx: %d\nn_rf_rx: %d\nn_streams: %d\n", cfg.n_tx,
              cfg.n_rx, cfg.n_rf_tx, cfg.n_rf_rx, cfg.n_streams);
  std::printf("carrier_hz: %.9g\nbandwidth_hz: %.9g\n", cfg.carrier_hz, cfg.bandwidth_hz);
  std::printf("beams_raw_tx: %d\nbeams_padded_tx: %d\n", budget.raw_tx, budget.padded_tx);
  std::printf("beams_raw_rx: %d\nbeams_padded_rx: %d\n", budget.raw_rx, budget.padded_rx);
  std::printf("subarray_size_tx: %d\n", budget.padded_tx / cfg.n_rf_tx);
  std::printf("complexity_sic_ops: %.9g\n", ops_sic);
  std::printf("complexity_svd_matched_rf_ops: %.9g\n", ops_svd_rf);
  std::printf("complexity_svd_matched_beams_ops: %.9g\n", ops_svd_beams);
  std::printf("power_sic_w: %.9g\n",
              beamsim::total_power(spec.power, rho, cfg.n_rf_tx, budget.padded_tx, ops_sic,
                                   beamsim::Architecture::sic_phase_network));
  std::printf("power_svd_matched_rf_w: %.9g\n",
              beamsim::total_power(spec.power, rho, cfg.n_rf_tx, cfg.n_rf_tx, ops_svd_rf,
                                   beamsim::Architecture::traditional_switch));
  std::printf("power_svd_matched_beams_w: %.9g\n",
              beamsim::total_power(spec.power, rho, budget.padded_tx, budget.padded_tx,
                                   ops_svd_beams, beamsim::Architecture::traditional_switch));
  std::printf("power_fully_digital_w: %.9g\n",
              beamsim::total_power(spec.power, rho, cfg.n_tx, 0,
                                   beamsim::complexity_svd(cfg.n_rx, cfg.n_tx,
                                                           cfg.n_subcarriers),
                                   beamsim::Architecture::fully_digital));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wideband beamspace MIMO link simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long long seed = -1;
  int trials = 0;
  int threads = 0;
  std::vector<int> subcarriers;

  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo parameter sweep");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--seed", seed, "override the sweep seed");
  sweep->add_option("--trials", trials, "override the trial count");
  sweep->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* profile = app.add_subcommand("beam-profile",
                                     "Per-beam power of one channel realization");
  profile->add_option("--config", config_path, "JSON config file")->required();
  profile->add_option("--subcarriers", subcarriers, "1-based subcarrier indices")
      ->required()
      ->delimiter(',');
  profile->add_option("--out", out_path, "output CSV path")->required();

  auto* plan = app.add_subcommand("plan", "Print beam budget, power and complexity");
  plan->add_option("--config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(e.what());
    return 2;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(config_path, out_path, seed, trials, threads);
    if (profile->parsed()) return run_beam_profile(config_path, subcarriers, out_path);
    if (plan->parsed()) return run_plan(config_path);
  } catch (const std::exception& e) {
    print_error(e.what());
    return 2;
  }
  return 0;
}
