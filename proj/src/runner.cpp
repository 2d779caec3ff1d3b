// SPDX-License-Identifier: Apache-2.0
#include "beamsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "beamsim/precoding.hpp"

namespace beamsim {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::snr_db: return "snr_db";
    case SweepAxis::transmit_power_w: return "transmit_power_w";
    case SweepAxis::bandwidth_hz: return "bandwidth_hz";
    case SweepAxis::n_streams: return "n_streams";
    case SweepAxis::n_beams: return "n_beams";
  }
  return "?";
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::sic: return "sic";
    case Scheme::svd_matched_rf: return "svd_matched_rf";
    case Scheme::svd_matched_beams: return "svd_matched_beams";
    case Scheme::svd_three_rf: return "svd_three_rf";
    case Scheme::fully_digital: return "fully_digital";
  }
  return "?";
}

SweepAxis axis_from_string(const std::string& s) {
  for (auto a : {SweepAxis::snr_db, SweepAxis::transmit_power_w, SweepAxis::bandwidth_hz,
                 SweepAxis::n_streams, SweepAxis::n_beams})
    if (to_string(a) == s) return a;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

Scheme scheme_from_string(const std::string& s) {
  for (auto sc : {Scheme::sic, Scheme::svd_matched_rf, Scheme::svd_matched_beams,
                  Scheme::svd_three_rf, Scheme::fully_digital})
    if (to_string(sc) == s) return sc;
  throw std::invalid_argument("unknown scheme: " + s);
}

void SweepSpec::validate() const {
  system.validate();
  channel.validate();
  power.validate();
  if (values.empty()) throw std::invalid_argument("SweepSpec: values must be nonempty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw std::invalid_argument("SweepSpec: values must be strictly ascending");
  if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be positive");
  if (schemes.empty()) throw std::invalid_argument("SweepSpec: schemes must be nonempty");
  if (n_beams < 0) throw std::invalid_argument("SweepSpec: n_beams must be non-negative");
}

BeamBudget beam_budget(const SystemConfig& cfg, const ChannelConfig& ch, int requested) {
  BeamBudget b;
  if (requested > 0) {
    b.raw_tx = b.raw_rx = requested;
  } else {
    b.raw_tx = required_beam_count(ch.n_clusters, cfg.n_tx, cfg.bandwidth_hz, cfg.carrier_hz);
    b.raw_rx = required_beam_count(ch.n_clusters, cfg.n_rx, cfg.bandwidth_hz, cfg.carrier_hz);
  }
  b.padded_tx = pad_to_subarrays(b.raw_tx, cfg.n_rf_tx);
  b.padded_rx = pad_to_subarrays(b.raw_rx, cfg.n_rf_rx);
  return b;
}

namespace {

struct PointSetup {
  SystemConfig cfg;
  int budget_tx = 0;  // padded beam budget for the phase-network scheme
  int budget_rx = 0;
};

PointSetup resolve_point(const SweepSpec& spec, double value) {
  PointSetup p;
  p.cfg = spec.system;
  int requested = spec.n_beams;
  switch (spec.axis) {
    case SweepAxis::snr_db:
      p.cfg.transmit_power_w = p.cfg.noise_power_w * std::pow(10.0, value / 10.0);
      break;
    case SweepAxis::transmit_power_w:
      p.cfg.transmit_power_w = value;
      break;
    case SweepAxis::bandwidth_hz:
      p.cfg.bandwidth_hz = value;
      break;
    case SweepAxis::n_streams: {
      const int ns = static_cast<int>(std::lround(value));
      p.cfg.n_streams = ns;
      p.cfg.n_rf_tx = ns;
      p.cfg.n_rf_rx = ns;
      break;
    }
    case SweepAxis::n_beams:
      requested = static_cast<int>(std::lround(value));
      break;
  }
  p.cfg.validate();
  const BeamBudget b = beam_budget(p.cfg, spec.channel, requested);
  p.budget_tx = b.padded_tx;
  p.budget_rx = b.padded_rx;
  return p;
}

SweepRow evaluate_scheme(Scheme scheme, const PointSetup& p, const SweepSpec& spec,
                         const BeamspaceChannel& ch) {
  const SystemConfig& cfg = p.cfg;
  const double rho = cfg.transmit_power_w;
  const double sigma2 = cfg.noise_power_w;
  const int k = cfg.n_subcarriers;
  SweepRow row;
  row.scheme = scheme;
  double ops = 0.0;

  switch (scheme) {
    case Scheme::sic: {
      if (cfg.n_streams != cfg.n_rf_tx || cfg.n_streams != cfg.n_rf_rx)
        throw std::invalid_argument("sic scheme needs one RF chain per stream");
      if (p.budget_tx > cfg.n_tx || p.budget_rx > cfg.n_rx)
        throw std::invalid_argument("beam budget exceeds the array size");
      const double s = rho / (sigma2 * cfg.n_streams);
      const SelectionPlan plan =
          energy_max_plan(ch, p.budget_tx, p.budget_rx, cfg.n_rf_tx, cfg.n_rf_rx);
      const auto reduced = reduce_channel(ch, plan);
      const CMat r = average_gram(reduced);
      const PhasePrecoder fps =
          sic_precoder(r, SicLayout{cfg.n_streams, plan.subarray_size_tx}, s);
      const BasebandPrecoder fbb = baseband_precoder(reduced, fps, s);
      row.mi_bits = mutual_information(reduced, fps, fbb, rho, sigma2, cfg.n_streams);
      ops = complexity_sic(cfg.n_streams, p.budget_tx, cfg.n_rf_tx, p.budget_rx, k);
      row.power_w = total_power(spec.power, rho, cfg.n_rf_tx, p.budget_tx, ops,
                                Architecture::sic_phase_network);
      row.n_beams = p.budget_tx;
      row.n_rf = cfg.n_rf_tx;
      break;
    }
    case Scheme::svd_matched_rf:
    case Scheme::svd_matched_beams:
    case Scheme::svd_three_rf: {
      int n_rf = cfg.n_rf_tx;
      if (scheme == Scheme::svd_matched_beams) n_rf = p.budget_tx;
      if (scheme == Scheme::svd_three_rf) n_rf = 3 * cfg.n_streams;
      if (n_rf > cfg.n_tx || n_rf > cfg.n_rx)
        throw std::invalid_argument("svd scheme RF chains exceed the array size");
      const SelectionPlan plan = energy_max_plan(ch, n_rf, n_rf, n_rf, n_rf);
      const auto reduced = reduce_channel(ch, plan);
      const BasebandPrecoder fbb = svd_baseline(reduced, n_rf);
      row.mi_bits = mutual_information_svd(reduced, fbb, rho, sigma2, n_rf);
      ops = complexity_svd(n_rf, n_rf, k);
      row.power_w =
          total_power(spec.power, rho, n_rf, n_rf, ops, Architecture::traditional_switch);
      row.n_beams = n_rf;
      row.n_rf = n_rf;
      break;
    }
    case Scheme::fully_digital: {
      row.mi_bits = capacity_fully_digital(ch.mats, rho, sigma2);
      ops = complexity_svd(cfg.n_rx, cfg.n_tx, k);
      row.power_w =
          total_power(spec.power, rho, cfg.n_tx, 0, ops, Architecture::fully_digital);
      row.n_beams = cfg.n_tx;
      row.n_rf = cfg.n_tx;
      break;
    }
  }
  const MetricsRecord rec = make_record(row.mi_bits, row.power_w, ops);
  row.ee = rec.ee;
  return row;
}

std::vector<SweepRow> evaluate_trial(const SweepSpec& spec, double value, int trial) {
  std::vector<SweepRow> rows;
  rows.reserve(spec.schemes.size());
  PointSetup p;
  BeamspaceChannel ch;
  std::string setup_error;
  try {
    p = resolve_point(spec, value);
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    const PathSet paths = sample_paths(p.cfg, spec.channel, rng);
    const Pulse pulse = raised_cosine(1.0 / p.cfg.bandwidth_hz, spec.channel.pulse_rolloff);
    ch = beamspace_direct(paths, p.cfg, spec.channel, pulse);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  for (Scheme scheme : spec.schemes) {
    SweepRow row;
    if (setup_error.empty()) {
      try {
        row = evaluate_scheme(scheme, p, spec, ch);
      } catch (const std::exception& e) {
        row = SweepRow{};
        row.scheme = scheme;
        row.error = e.what();
      }
    } else {
      row.scheme = scheme;
      row.error = setup_error;
    }
    if (!row.error.empty()) {
      row.mi_bits = kNan;
      row.ee = kNan;
      row.power_w = kNan;
    }
    row.axis_value = value;
    row.seed_index = trial;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int n_threads) {
  spec.validate();
  const int n_values = static_cast<int>(spec.values.size());
  const int n_tasks = n_values * spec.trials;
  std::vector<std::vector<SweepRow>> slots(n_tasks);

  int workers = n_threads > 0 ? n_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, n_tasks);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    for (;;) {
      const int task = next.fetch_add(1);
      if (task >= n_tasks || failed.load()) break;
      const int value_idx = task / spec.trials;
      const int trial = task % spec.trials;
      try {
        slots[task] = evaluate_trial(spec, spec.values[value_idx], trial);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_sweep: " + failure);

  SweepResult result;
  result.axis = spec.axis;
  result.rows.reserve(static_cast<std::size_t>(n_tasks) * spec.schemes.size());
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.axis_value != b.axis_value) return a.axis_value < b.axis_value;
                     const std::string sa = to_string(a.scheme), sb = to_string(b.scheme);
                     if (sa != sb) return sa < sb;
                     return a.seed_index < b.seed_index;
                   });
  return result;
}

namespace {
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}
}  // namespace

std::string csv_string(const SweepResult& result) {
  std::ostringstream os;
  os << "axis,axis_value,scheme,seed_index,mi_bits_per_s_per_hz,ee_bits_per_hz_per_w,"
        "power_w,n_beams,n_rf\n";
  const std::string axis = to_string(result.axis);
  for (const SweepRow& r : result.rows) {
    os << axis << ',' << fmt_double(r.axis_value) << ',' << to_string(r.scheme) << ','
       << r.seed_index << ',' << fmt_double(r.mi_bits) << ',' << fmt_double(r.ee) << ','
       << fmt_double(r.power_w) << ',' << r.n_beams << ',' << r.n_rf << '\n';
  }
  return os.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
  os << csv_string(result);
  if (!os) throw std::runtime_error("emit_csv: write failed for " + path);
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const char* section,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) ok = true;
    if (!ok)
      throw std::invalid_argument(std::string("config: unknown key '") + it.key() +
                                  "' in section '" + section + "'");
  }
}

template <typename T>
void maybe(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

SweepSpec parse_spec(const std::string& json_text) {
  json root = json::parse(json_text);
  reject_unknown(root, "<top>", {"system", "channel", "power", "sweep"});
  SweepSpec spec;

  if (root.contains("system")) {
    const json& s = root["system"];
    reject_unknown(s, "system",
                   {"n_tx", "n_rx", "n_rf_tx", "n_rf_rx", "n_streams", "n_subcarriers",
                    "carrier_hz", "bandwidth_hz", "antenna_spacing_m", "noise_power_w",
                    "transmit_power_w"});
    maybe(s, "n_tx", spec.system.n_tx);
    maybe(s, "n_rx", spec.system.n_rx);
    maybe(s, "n_rf_tx", spec.system.n_rf_tx);
    maybe(s, "n_rf_rx", spec.system.n_rf_rx);
    maybe(s, "n_streams", spec.system.n_streams);
    maybe(s, "n_subcarriers", spec.system.n_subcarriers);
    maybe(s, "carrier_hz", spec.system.carrier_hz);
    maybe(s, "bandwidth_hz", spec.system.bandwidth_hz);
    maybe(s, "antenna_spacing_m", spec.system.antenna_spacing_m);
    maybe(s, "noise_power_w", spec.system.noise_power_w);
    maybe(s, "transmit_power_w", spec.system.transmit_power_w);
  }
  if (root.contains("channel")) {
    const json& c = root["channel"];
    reject_unknown(c, "channel",
                   {"n_clusters", "n_subpaths", "delay_window_s", "subpath_delay_offset_s",
                    "angle_spread_rad", "pulse_rolloff", "max_taps"});
    maybe(c, "n_clusters", spec.channel.n_clusters);
    maybe(c, "n_subpaths", spec.channel.n_subpaths);
    maybe(c, "delay_window_s", spec.channel.delay_window_s);
    maybe(c, "subpath_delay_offset_s", spec.channel.subpath_delay_offset_s);
    maybe(c, "angle_spread_rad", spec.channel.angle_spread_rad);
    maybe(c, "pulse_rolloff", spec.channel.pulse_rolloff);
    maybe(c, "max_taps", spec.channel.max_taps);
  }
  if (root.contains("power")) {
    const json& p = root["power"];
    reject_unknown(p, "power", {"p_rf_w", "p_ps_w", "p_switch_w", "p_c_per_mops_w"});
    maybe(p, "p_rf_w", spec.power.p_rf_w);
    maybe(p, "p_ps_w", spec.power.p_ps_w);
    maybe(p, "p_switch_w", spec.power.p_switch_w);
    maybe(p, "p_c_per_mops_w", spec.power.p_c_per_mops_w);
  }
  if (root.contains("sweep")) {
    const json& w = root["sweep"];
    reject_unknown(w, "sweep", {"axis", "values", "trials", "schemes", "seed", "n_beams"});
    if (w.contains("axis")) spec.axis = axis_from_string(w.at("axis").get<std::string>());
    maybe(w, "values", spec.values);
    maybe(w, "trials", spec.trials);
    if (w.contains("schemes")) {
      spec.schemes.clear();
      for (const auto& name : w.at("schemes"))
        spec.schemes.push_back(scheme_from_string(name.get<std::string>()));
    }
    maybe(w, "seed", spec.seed);
    if (w.contains("n_beams")) {
      const json& nb = w.at("n_beams");
      if (nb.is_string()) {
        if (nb.get<std::string>() != "auto")
          throw std::invalid_argument("config: sweep.n_beams must be an integer or \"auto\"");
        spec.n_beams = 0;
      } else {
        spec.n_beams = nb.get<int>();
      }
    }
  }
  return spec;
}

SweepSpec load_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace beamsim
