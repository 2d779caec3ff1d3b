// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "beamsim/config.hpp"

namespace beamsim {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Complex = std::complex<double>;

/// One propagation subpath of a scattering cluster.
struct Subpath {
  Complex gain;      // alpha
  double delay_s;    // tau
  double aod_rad;    // physical departure angle
  double aoa_rad;    // physical arrival angle
};

struct Cluster {
  double center_delay_s;
  double center_aod_rad;
  double center_aoa_rad;
  std::vector<Subpath> subpaths;
};

/// One sampled multipath channel realization.
struct PathSet {
  std::vector<Cluster> clusters;

  std::size_t subpath_count() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.subpaths.size();
    return n;
  }
};

/// Per-subcarrier beamspace matrices H_b[k], n_rx x n_tx each.
struct BeamspaceChannel {
  std::vector<CMat> mats;
  std::vector<double> per_subcarrier_freq_hz;
};

/// Truncated raised-cosine pulse sampled against period ts; rolloff 0 is the
/// ideal sinc. Zero outside +/- support_periods * ts.
struct Pulse {
  double ts;
  double rolloff = 0.8;
  double support_periods = 4.0;

  double operator()(double t) const;
};

Pulse raised_cosine(double ts, double rolloff = 0.8);

/// Number of delay taps D covering the delay window plus the pulse tail.
/// Throws when the count exceeds cfg.max_taps.
int tap_count(const ChannelConfig& ch, const Pulse& pulse);

/// Draw a multipath realization. Per cluster the draw order is pinned:
/// center delay, center AoD, center AoA, then per subpath delay offset,
/// gain (one normal pair), AoD offset, AoA offset. Gains are CN(0,1),
/// centers uniform on [0, window] x [-pi/2, pi/2]^2, offsets uniform within
/// the configured spread.
PathSet sample_paths(const SystemConfig& cfg, const ChannelConfig& ch, Rng& rng);

/// f_k = f_c + (B/K) * (k - 1 - (K-1)/2), k being 1-based.
double subcarrier_frequency(int k, const SystemConfig& cfg);

/// Dimensionless spatial angle (d * f / c) * sin(theta).
double spatial_angle(double physical_angle_rad, double freq_hz, double spacing_m);

/// ULA response; entry m is exp(-j 2 pi m phi) / sqrt(n).
CVec array_response(double phi, int n);

/// Normalized Dirichlet kernel Xi_N(x) = sum_m exp(j 2 pi m x) / N. The
/// removable singularity at integer x is evaluated via its limit.
Complex dirichlet_kernel(double x, int n);

/// Subcarrier gain beta = sum_d alpha * p(d Ts - tau) * exp(-j 2 pi d k / K).
Complex frequency_gain(const Subpath& path, int k, const SystemConfig& cfg,
                       const ChannelConfig& ch, const Pulse& pulse);

/// Spatial channel H[k] for k = 1..K, each n_rx x n_tx.
std::vector<CMat> spatial_channel(const PathSet& paths, const SystemConfig& cfg,
                                  const ChannelConfig& ch, const Pulse& pulse);

/// Beamspace transform H_b[k] = U_r^H H[k] U_t over the square DFT grids.
BeamspaceChannel beamspace_transform(const std::vector<CMat>& spatial,
                                     const SystemConfig& cfg);

/// Closed-form beamspace channel built from Dirichlet-kernel responses;
/// agrees with beamspace_transform(spatial_channel(...)).
BeamspaceChannel beamspace_direct(const PathSet& paths, const SystemConfig& cfg,
                                  const ChannelConfig& ch, const Pulse& pulse);

/// DFT grid matrix with columns a(phibar_n), phibar_n = (n - (N+1)/2) / N.
CMat beamspace_grid(int n);

/// Squared column norms of H_b[k]; k is 1-based.
RVec beam_power_profile(const BeamspaceChannel& ch, int k);

}  // namespace beamsim
