// SPDX-License-Identifier: Apache-2.0
#include "beamsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace beamsim {

int required_beam_count(int n_paths, int n_antennas, double bandwidth_hz,
                        double carrier_hz) {
  if (n_paths < 1 || n_antennas < 1 || bandwidth_hz <= 0.0 || carrier_hz <= 0.0)
    throw std::invalid_argument("required_beam_count: inputs must be positive");
  const double raw = static_cast<double>(n_paths) * n_antennas * bandwidth_hz /
                     (2.0 * carrier_hz);
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

int pad_to_subarrays(int raw_count, int n_rf) {
  if (raw_count < 1 || n_rf < 1)
    throw std::invalid_argument("pad_to_subarrays: inputs must be positive");
  return n_rf * ((raw_count + n_rf - 1) / n_rf);
}

RVec tx_beam_energies(const BeamspaceChannel& ch) {
  if (ch.mats.empty()) throw std::invalid_argument("tx_beam_energies: empty channel");
  const Eigen::Index n_tx = ch.mats.front().cols();
  RVec acc = RVec::Zero(n_tx);
  for (const CMat& hb : ch.mats)
    for (Eigen::Index j = 0; j < n_tx; ++j) acc[j] += hb.col(j).squaredNorm();
  return acc / static_cast<double>(ch.mats.size());
}

RVec rx_beam_energies(const BeamspaceChannel& ch, const std::vector<int>& tx_beams) {
  if (ch.mats.empty()) throw std::invalid_argument("rx_beam_energies: empty channel");
  const Eigen::Index n_rx = ch.mats.front().rows();
  const Eigen::Index n_tx = ch.mats.front().cols();
  for (int b : tx_beams)
    if (b < 1 || b > n_tx)
      throw std::invalid_argument("rx_beam_energies: tx beam index out of range");
  RVec acc = RVec::Zero(n_rx);
  for (const CMat& hb : ch.mats)
    for (Eigen::Index i = 0; i < n_rx; ++i)
      for (int b : tx_beams) acc[i] += std::norm(hb(i, b - 1));
  return acc / static_cast<double>(ch.mats.size());
}

std::vector<int> top_indices(const RVec& energies, int n_beams) {
  const int n = static_cast<int>(energies.size());
  if (n_beams < 1 || n_beams > n)
    throw std::invalid_argument("top_indices: n_beams outside 1..N");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // stable under ties: larger energy first, lower index wins ties
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return energies[a] > energies[b]; });
  std::vector<int> picked(order.begin(), order.begin() + n_beams);
  std::sort(picked.begin(), picked.end());
  for (int& b : picked) b += 1;
  return picked;
}

std::vector<int> select_tx(const BeamspaceChannel& ch, int n_beams) {
  return top_indices(tx_beam_energies(ch), n_beams);
}

std::vector<int> select_rx(const BeamspaceChannel& ch, const std::vector<int>& tx_beams,
                           int n_beams) {
  return top_indices(rx_beam_energies(ch, tx_beams), n_beams);
}

SelectionPlan energy_max_plan(const BeamspaceChannel& ch, int n_beams_tx,
                              int n_beams_rx, int n_rf_tx, int n_rf_rx) {
  if (n_rf_tx < 1 || n_rf_rx < 1 || n_beams_tx % n_rf_tx != 0 || n_beams_rx % n_rf_rx != 0)
    throw std::invalid_argument(
        "energy_max_plan: beam counts must be positive multiples of the RF chain counts");
  SelectionPlan plan;
  plan.tx_beams = select_tx(ch, n_beams_tx);
  plan.rx_beams = select_rx(ch, plan.tx_beams, n_beams_rx);
  plan.subarray_size_tx = n_beams_tx / n_rf_tx;
  plan.subarray_size_rx = n_beams_rx / n_rf_rx;
  return plan;
}

std::vector<CMat> reduce_channel(const BeamspaceChannel& ch, const SelectionPlan& plan) {
  std::vector<CMat> out;
  out.reserve(ch.mats.size());
  for (const CMat& hb : ch.mats) {
    CMat r(plan.rx_beams.size(), plan.tx_beams.size());
    for (std::size_t i = 0; i < plan.rx_beams.size(); ++i)
      for (std::size_t j = 0; j < plan.tx_beams.size(); ++j)
        r(i, j) = hb(plan.rx_beams[i] - 1, plan.tx_beams[j] - 1);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

long long n_choose_k(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1LL << 62) / n) return 1LL << 62;  // saturate, caller compares to cap
  }
  return r;
}

// advance a strictly-ascending 1-based combination; false when exhausted
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - 1 - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 1);
  return idx;
}

}  // namespace

SelectionPlan exhaustive_select(const BeamspaceChannel& ch, int n_beams_tx,
                                int n_beams_rx,
                                const std::function<double(const SelectionPlan&)>& evaluator,
                                const ExhaustiveOptions& opts) {
  if (ch.mats.empty()) throw std::invalid_argument("exhaustive_select: empty channel");
  const int n_tx = static_cast<int>(ch.mats.front().cols());
  const int n_rx = static_cast<int>(ch.mats.front().rows());
  if (n_beams_tx < 1 || n_beams_tx > n_tx || n_beams_rx < 1 || n_beams_rx > n_rx)
    throw std::invalid_argument("exhaustive_select: beam counts out of range");

  const long long combos = n_choose_k(n_tx, n_beams_tx) * n_choose_k(n_rx, n_beams_rx);
  if (combos > opts.max_combinations)
    throw std::invalid_argument(
        "exhaustive_select: candidate count " + std::to_string(combos) +
        " exceeds the cap of " + std::to_string(opts.max_combinations));

  if ((opts.n_rf_tx > 0 && n_beams_tx % opts.n_rf_tx != 0) ||
      (opts.n_rf_rx > 0 && n_beams_rx % opts.n_rf_rx != 0))
    throw std::invalid_argument("exhaustive_select: beams not divisible by RF chains");
  SelectionPlan plan;
  plan.subarray_size_tx = opts.n_rf_tx > 0 ? n_beams_tx / opts.n_rf_tx : n_beams_tx;
  plan.subarray_size_rx = opts.n_rf_rx > 0 ? n_beams_rx / opts.n_rf_rx : n_beams_rx;

  SelectionPlan best;
  double best_value = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  plan.tx_beams = first_combination(n_beams_tx);
  do {
    plan.rx_beams = first_combination(n_beams_rx);
    do {
      const double v = evaluator(plan);
      if (!have_best || v > best_value) {
        best = plan;
        best_value = v;
        have_best = true;
      }
    } while (next_combination(plan.rx_beams, n_rx));
  } while (next_combination(plan.tx_beams, n_tx));

  return best;
}

}  // namespace beamsim
