// SPDX-License-Identifier: Apache-2.0
#include "beamsim/channel.hpp"

#include <cmath>
#include <numbers>

namespace beamsim {

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}
}  // namespace

double Pulse::operator()(double t) const {
  const double x = t / ts;
  if (std::abs(x) > support_periods) return 0.0;
  if (rolloff <= 0.0) return sinc(x);
  const double g = 2.0 * rolloff * x;
  if (std::abs(std::abs(g) - 1.0) < 1e-9) {
    // removable singularity of the cosine factor
    return (kPi / 4.0) * sinc(1.0 / (2.0 * rolloff));
  }
  return sinc(x) * std::cos(kPi * rolloff * x) / (1.0 - g * g);
}

Pulse raised_cosine(double ts, double rolloff) { return Pulse{ts, rolloff, 4.0}; }

int tap_count(const ChannelConfig& ch, const Pulse& pulse) {
  const double window =
      ch.delay_window_s + ch.subpath_delay_offset_s + pulse.support_periods * pulse.ts;
  const int d = static_cast<int>(std::ceil(window / pulse.ts)) + 1;
  if (d > ch.max_taps)
    throw std::invalid_argument("tap_count: delay window needs more taps than max_taps");
  return d;
}

PathSet sample_paths(const SystemConfig& cfg, const ChannelConfig& ch, Rng& rng) {
  cfg.validate();
  ch.validate();
  PathSet out;
  out.clusters.reserve(ch.n_clusters);
  for (int l = 0; l < ch.n_clusters; ++l) {
    Cluster c;
    c.center_delay_s = rng.uniform(0.0, ch.delay_window_s);
    c.center_aod_rad = rng.uniform(-kPi / 2.0, kPi / 2.0);
    c.center_aoa_rad = rng.uniform(-kPi / 2.0, kPi / 2.0);
    c.subpaths.reserve(ch.n_subpaths);
    const double half = ch.angle_spread_rad / 2.0;
    for (int s = 0; s < ch.n_subpaths; ++s) {
      Subpath p;
      const double off =
          rng.uniform(-ch.subpath_delay_offset_s, ch.subpath_delay_offset_s);
      p.delay_s = std::max(0.0, c.center_delay_s + off);
      const auto [re, im] = rng.normal_pair();
      p.gain = Complex(re, im) / std::sqrt(2.0);
      p.aod_rad = c.center_aod_rad + rng.uniform(-half, half);
      p.aoa_rad = c.center_aoa_rad + rng.uniform(-half, half);
      c.subpaths.push_back(p);
    }
    out.clusters.push_back(std::move(c));
  }
  return out;
}

double subcarrier_frequency(int k, const SystemConfig& cfg) {
  if (k < 1 || k > cfg.n_subcarriers)
    throw std::out_of_range("subcarrier_frequency: k outside 1..K");
  const double kk = static_cast<double>(k);
  const double half = (static_cast<double>(cfg.n_subcarriers) - 1.0) / 2.0;
  return cfg.carrier_hz + cfg.bandwidth_hz / cfg.n_subcarriers * (kk - 1.0 - half);
}

double spatial_angle(double physical_angle_rad, double freq_hz, double spacing_m) {
  if (freq_hz <= 0.0) throw std::invalid_argument("spatial_angle: frequency must be positive");
  return spacing_m * freq_hz / kSpeedOfLight * std::sin(physical_angle_rad);
}

CVec array_response(double phi, int n) {
  CVec a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) a[m] = std::polar(scale, -2.0 * kPi * m * phi);
  return a;
}

Complex dirichlet_kernel(double x, int n) {
  const double s = std::sin(kPi * x);
  if (std::abs(s) < 1e-12) {
    // near-integer x: the sin ratio tends to +/-1 and cancels the sign of the
    // phase factor, leaving exp(j pi eps (n-1)) with eps the integer residual
    const double eps = x - std::round(x);
    return std::polar(1.0, kPi * eps * (n - 1));
  }
  const double mag = std::sin(n * kPi * x) / (n * s);
  return std::polar(mag, kPi * x * (n - 1));
}

namespace {

// Per-path pulse taps; shared by the gain evaluations at every subcarrier.
std::vector<double> pulse_taps(const Subpath& p, const Pulse& pulse, int n_taps) {
  std::vector<double> taps(n_taps);
  for (int d = 0; d < n_taps; ++d) taps[d] = pulse(d * pulse.ts - p.delay_s);
  return taps;
}

Complex gain_from_taps(Complex alpha, const std::vector<double>& taps, int k, int n_sub) {
  Complex acc(0.0, 0.0);
  for (int d = 0; d < static_cast<int>(taps.size()); ++d) {
    acc += taps[d] * std::polar(1.0, -2.0 * kPi * d * k / static_cast<double>(n_sub));
  }
  return alpha * acc;
}

struct FlatPaths {
  std::vector<Subpath> paths;
  std::vector<std::vector<double>> taps;
};

FlatPaths flatten(const PathSet& set, const SystemConfig& cfg, const ChannelConfig& ch,
                  const Pulse& pulse) {
  FlatPaths f;
  const int d = tap_count(ch, pulse);
  for (const auto& c : set.clusters)
    for (const auto& p : c.subpaths) {
      f.paths.push_back(p);
      f.taps.push_back(pulse_taps(p, pulse, d));
    }
  return f;
}

}  // namespace

Complex frequency_gain(const Subpath& path, int k, const SystemConfig& cfg,
                       const ChannelConfig& ch, const Pulse& pulse) {
  const int d = tap_count(ch, pulse);
  return gain_from_taps(path.gain, pulse_taps(path, pulse, d), k, cfg.n_subcarriers);
}

std::vector<CMat> spatial_channel(const PathSet& paths, const SystemConfig& cfg,
                                  const ChannelConfig& ch, const Pulse& pulse) {
  const FlatPaths flat = flatten(paths, cfg, ch, pulse);
  const int n_paths = static_cast<int>(flat.paths.size());
  const double d_m = cfg.spacing();

  std::vector<CMat> out(cfg.n_subcarriers);
  CMat ar(cfg.n_rx, n_paths), at(cfg.n_tx, n_paths);
  for (int k = 1; k <= cfg.n_subcarriers; ++k) {
    const double fk = subcarrier_frequency(k, cfg);
    CVec beta(n_paths);
    for (int p = 0; p < n_paths; ++p) {
      const auto& sp = flat.paths[p];
      beta[p] = gain_from_taps(sp.gain, flat.taps[p], k, cfg.n_subcarriers);
      ar.col(p) = array_response(spatial_angle(sp.aoa_rad, fk, d_m), cfg.n_rx);
      at.col(p) = array_response(spatial_angle(sp.aod_rad, fk, d_m), cfg.n_tx);
    }
    out[k - 1] = ar * beta.asDiagonal() * at.adjoint();
    if (n_paths == 0) out[k - 1] = CMat::Zero(cfg.n_rx, cfg.n_tx);
  }
  return out;
}

CMat beamspace_grid(int n) {
  CMat u(n, n);
  for (int col = 1; col <= n; ++col) {
    const double phibar = (col - (n + 1) / 2.0) / n;
    u.col(col - 1) = array_response(phibar, n);
  }
  return u;
}

BeamspaceChannel beamspace_transform(const std::vector<CMat>& spatial,
                                     const SystemConfig& cfg) {
  const CMat ut = beamspace_grid(cfg.n_tx);
  const CMat ur = beamspace_grid(cfg.n_rx);
  BeamspaceChannel out;
  out.mats.reserve(spatial.size());
  for (int k = 1; k <= static_cast<int>(spatial.size()); ++k) {
    out.mats.push_back(ur.adjoint() * spatial[k - 1] * ut);
    out.per_subcarrier_freq_hz.push_back(subcarrier_frequency(k, cfg));
  }
  return out;
}

BeamspaceChannel beamspace_direct(const PathSet& paths, const SystemConfig& cfg,
                                  const ChannelConfig& ch, const Pulse& pulse) {
  const FlatPaths flat = flatten(paths, cfg, ch, pulse);
  const int n_paths = static_cast<int>(flat.paths.size());
  const double d_m = cfg.spacing();

  std::vector<double> grid_t(cfg.n_tx), grid_r(cfg.n_rx);
  for (int n = 1; n <= cfg.n_tx; ++n) grid_t[n - 1] = (n - (cfg.n_tx + 1) / 2.0) / cfg.n_tx;
  for (int n = 1; n <= cfg.n_rx; ++n) grid_r[n - 1] = (n - (cfg.n_rx + 1) / 2.0) / cfg.n_rx;

  BeamspaceChannel out;
  out.mats.reserve(cfg.n_subcarriers);
  CMat abar_r(cfg.n_rx, n_paths), abar_t_conj(cfg.n_tx, n_paths);
  for (int k = 1; k <= cfg.n_subcarriers; ++k) {
    const double fk = subcarrier_frequency(k, cfg);
    CVec beta(n_paths);
    for (int p = 0; p < n_paths; ++p) {
      const auto& sp = flat.paths[p];
      beta[p] = gain_from_taps(sp.gain, flat.taps[p], k, cfg.n_subcarriers);
      const double phi_t = spatial_angle(sp.aod_rad, fk, d_m);
      const double phi_r = spatial_angle(sp.aoa_rad, fk, d_m);
      // abar = U^H a(phi); with a_m = exp(-j2pi m phi)/sqrt(N) the entries
      // come out as Xi_N(phibar_i - phi), and the adjoint row picks up
      // Xi_N(phi - phibar_j) on the transmit side.
      for (int i = 0; i < cfg.n_rx; ++i)
        abar_r(i, p) = dirichlet_kernel(grid_r[i] - phi_r, cfg.n_rx);
      for (int j = 0; j < cfg.n_tx; ++j)
        abar_t_conj(j, p) = dirichlet_kernel(phi_t - grid_t[j], cfg.n_tx);
    }
    CMat hb = abar_r * beta.asDiagonal() * abar_t_conj.transpose();
    if (n_paths == 0) hb = CMat::Zero(cfg.n_rx, cfg.n_tx);
    out.mats.push_back(std::move(hb));
    out.per_subcarrier_freq_hz.push_back(fk);
  }
  return out;
}

RVec beam_power_profile(const BeamspaceChannel& ch, int k) {
  if (k < 1 || k > static_cast<int>(ch.mats.size()))
    throw std::out_of_range("beam_power_profile: k outside 1..K");
  const CMat& hb = ch.mats[k - 1];
  RVec out(hb.cols());
  for (Eigen::Index j = 0; j < hb.cols(); ++j) out[j] = hb.col(j).squaredNorm();
  return out;
}

}  // namespace beamsim
