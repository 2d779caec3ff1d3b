// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

namespace beamsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// OFDM MIMO link dimensions and per-device constants.
struct SystemConfig {
  int n_tx = 64;            // transmit antennas N_t
  int n_rx = 64;            // receive antennas N_r
  int n_rf_tx = 8;          // transmit RF chains
  int n_rf_rx = 8;          // receive RF chains
  int n_streams = 8;        // data streams N_s
  int n_subcarriers = 128;  // K
  double carrier_hz = 28e9;
  double bandwidth_hz = 2e9;
  double antenna_spacing_m = 0.0;  // 0 => half wavelength at carrier
  double noise_power_w = 0.01;
  double transmit_power_w = 1.0;

  double spacing() const {
    return antenna_spacing_m > 0.0 ? antenna_spacing_m
                                   : kSpeedOfLight / (2.0 * carrier_hz);
  }

  void validate() const {
    if (n_tx < 1 || n_rx < 1 || n_rf_tx < 1 || n_rf_rx < 1 || n_streams < 1 ||
        n_subcarriers < 1)
      throw std::invalid_argument("SystemConfig: dimensions must be positive");
    if (n_streams > n_rf_tx || n_streams > n_rf_rx)
      throw std::invalid_argument("SystemConfig: n_streams must not exceed RF chains");
    if (n_rf_tx > n_tx || n_rf_rx > n_rx)
      throw std::invalid_argument("SystemConfig: RF chains must not exceed antennas");
    if (carrier_hz <= 0.0 || bandwidth_hz <= 0.0 || noise_power_w <= 0.0 ||
        transmit_power_w <= 0.0)
      throw std::invalid_argument("SystemConfig: physical parameters must be positive");
    if (bandwidth_hz >= carrier_hz)
      throw std::invalid_argument("SystemConfig: bandwidth must be below the carrier");
    if (antenna_spacing_m < 0.0)
      throw std::invalid_argument("SystemConfig: antenna spacing must be non-negative");
  }
};

/// Multipath cluster sampling parameters.
struct ChannelConfig {
  int n_clusters = 10;                 // L
  int n_subpaths = 20;                 // subpaths per cluster
  double delay_window_s = 20e-9;       // cluster delays uniform on [0, window]
  double subpath_delay_offset_s = 0.1e-9;
  double angle_spread_rad = 5.0 * 3.14159265358979323846 / 180.0;
  double pulse_rolloff = 0.8;
  int max_taps = 8192;  // cap on the delay-tap count D

  void validate() const {
    if (n_clusters < 1 || n_subpaths < 1)
      throw std::invalid_argument("ChannelConfig: need at least one cluster and subpath");
    if (delay_window_s < 0.0 || subpath_delay_offset_s < 0.0 ||
        angle_spread_rad < 0.0)
      throw std::invalid_argument("ChannelConfig: windows and spread must be non-negative");
    if (pulse_rolloff < 0.0 || pulse_rolloff > 1.0)
      throw std::invalid_argument("ChannelConfig: pulse roll-off must be in [0, 1]");
    if (max_taps < 1) throw std::invalid_argument("ChannelConfig: max_taps must be positive");
  }
};

/// Per-device power constants in watts.
struct PowerModel {
  double p_rf_w = 0.25;
  double p_ps_w = 0.01;
  double p_switch_w = 0.005;
  double p_c_per_mops_w = 0.0141;

  void validate() const {
    if (p_rf_w < 0.0 || p_ps_w < 0.0 || p_switch_w < 0.0 || p_c_per_mops_w < 0.0)
      throw std::invalid_argument("PowerModel: constants must be non-negative");
  }
};

/// Seeded random source with a pinned draw discipline: uniforms map the top
/// 53 bits of the mt19937_64 output, normals come from one Box-Muller pair
/// per call. Consumers document their draw order so seeds reproduce.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Box-Muller; u1 is kept strictly positive so log() is finite.
  std::pair<double, double> normal_pair() {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace beamsim
