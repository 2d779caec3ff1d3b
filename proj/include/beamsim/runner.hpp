// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beamsim/channel.hpp"
#include "beamsim/metrics.hpp"
#include "beamsim/selection.hpp"

namespace beamsim {

enum class SweepAxis { snr_db, transmit_power_w, bandwidth_hz, n_streams, n_beams };

enum class Scheme {
  sic,               // phase shifter-aided network, SIC beamspace precoding
  svd_matched_rf,    // traditional selection, one beam per RF chain
  svd_matched_beams, // traditional selection with RF chains = beam budget
  svd_three_rf,      // traditional selection with 3 RF chains per stream
  fully_digital      // water-filled SVD on the full beamspace channel
};

std::string to_string(SweepAxis axis);
std::string to_string(Scheme scheme);
SweepAxis axis_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);

struct SweepSpec {
  SweepAxis axis = SweepAxis::snr_db;
  std::vector<double> values;
  int trials = 50;
  SystemConfig system;
  ChannelConfig channel;
  PowerModel power;
  std::vector<Scheme> schemes;
  std::uint64_t seed = 1;
  int n_beams = 0;  // beam budget; 0 derives it from the bandwidth rule

  void validate() const;
};

struct SweepRow {
  double axis_value = 0.0;
  Scheme scheme = Scheme::sic;
  int seed_index = 0;
  double mi_bits = 0.0;
  double ee = 0.0;
  double power_w = 0.0;
  int n_beams = 0;
  int n_rf = 0;
  std::string error;  // nonempty marks an infeasible row; metrics are NaN
};

struct SweepResult {
  SweepAxis axis = SweepAxis::snr_db;
  std::vector<SweepRow> rows;
};

/// Deterministic Monte Carlo sweep: trial t draws its channel from
/// mix_seed(spec.seed, t) regardless of axis value or worker count, and rows
/// come out sorted by (axis_value, scheme, seed_index).
SweepResult run_sweep(const SweepSpec& spec, int n_threads = 0);

/// CSV with the fixed header
/// axis,axis_value,scheme,seed_index,mi_bits_per_s_per_hz,ee_bits_per_hz_per_w,power_w,n_beams,n_rf
/// and floats printed to 9 significant digits.
void emit_csv(const SweepResult& result, const std::string& path);
std::string csv_string(const SweepResult& result);

/// Strict JSON config: sections system/channel/power/sweep, unknown keys are
/// rejected, missing keys keep their defaults.
SweepSpec load_spec(const std::string& path);
SweepSpec parse_spec(const std::string& json_text);

/// Beam budget at one operating point: Eq.-of-required-beams raw value and
/// the sub-array padded value actually wired.
struct BeamBudget {
  int raw_tx = 0;
  int padded_tx = 0;
  int raw_rx = 0;
  int padded_rx = 0;
};
BeamBudget beam_budget(const SystemConfig& cfg, const ChannelConfig& ch, int requested);

}  // namespace beamsim
