// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "beamsim/channel.hpp"
#include "beamsim/config.hpp"

namespace testsup {

using beamsim::CMat;
using beamsim::Complex;
using beamsim::RVec;

inline CMat rand_cmat(beamsim::Rng& rng, int rows, int cols) {
  CMat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const auto [re, im] = rng.normal_pair();
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return m;
}

inline CMat rand_hermitian_psd(beamsim::Rng& rng, int n) {
  const CMat a = rand_cmat(rng, n, n);
  return (a.adjoint() * a).eval();
}

inline std::vector<CMat> rand_stack(beamsim::Rng& rng, int k, int rows, int cols) {
  std::vector<CMat> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(rand_cmat(rng, rows, cols));
  return out;
}

/// Small wideband setup used across the suites.
inline beamsim::SystemConfig small_system(int n = 16, int k = 8) {
  beamsim::SystemConfig cfg;
  cfg.n_tx = n;
  cfg.n_rx = n;
  cfg.n_rf_tx = 4;
  cfg.n_rf_rx = 4;
  cfg.n_streams = 4;
  cfg.n_subcarriers = k;
  cfg.carrier_hz = 28e9;
  cfg.bandwidth_hz = 2e9;
  cfg.noise_power_w = 0.01;
  cfg.transmit_power_w = 1.0;
  return cfg;
}

inline beamsim::ChannelConfig small_channel(int clusters = 3, int subpaths = 5) {
  beamsim::ChannelConfig ch;
  ch.n_clusters = clusters;
  ch.n_subpaths = subpaths;
  return ch;
}

/// Single deterministic path at the given physical angles with unit gain.
inline beamsim::PathSet single_path(double aod_rad, double aoa_rad, double delay_s = 0.0) {
  beamsim::PathSet paths;
  beamsim::Cluster c;
  c.center_delay_s = delay_s;
  c.center_aod_rad = aod_rad;
  c.center_aoa_rad = aoa_rad;
  c.subpaths.push_back(beamsim::Subpath{Complex(1.0, 0.0), delay_s, aod_rad, aoa_rad});
  paths.clusters.push_back(c);
  return paths;
}

struct MeanCi {
  double mean;
  double half_width;  // 95% normal half width
};

inline MeanCi mean_ci(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() > 1 ? (xs.size() - 1) : 1;
  return {mean, 1.96 * std::sqrt(var / xs.size())};
}

}  // namespace testsup
