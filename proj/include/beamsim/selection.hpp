// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "beamsim/channel.hpp"

namespace beamsim {

/// Selected beam index sets. Indices are 1-based and strictly ascending.
struct SelectionPlan {
  std::vector<int> tx_beams;
  std::vector<int> rx_beams;
  int subarray_size_tx = 1;  // beams driven per transmit RF chain
  int subarray_size_rx = 1;
};

/// ceil(L * N * B / (2 f_c)), clamped to at least one beam.
int required_beam_count(int n_paths, int n_antennas, double bandwidth_hz,
                        double carrier_hz);

/// Round the beam count up to a multiple of n_rf so every RF chain drives an
/// equal-size sub-array.
int pad_to_subarrays(int raw_count, int n_rf);

/// Diagonal of (1/K) sum_k H_b^H[k] H_b[k]: per-transmit-beam band-average energy.
RVec tx_beam_energies(const BeamspaceChannel& ch);

/// Diagonal of (1/K) sum_k H_b[k] S_t S_t^H H_b^H[k] with S_t restricted to
/// tx_beams (1-based).
RVec rx_beam_energies(const BeamspaceChannel& ch, const std::vector<int>& tx_beams);

/// Indices (1-based, ascending) of the n_beams largest entries; ties go to
/// the lower index.
std::vector<int> top_indices(const RVec& energies, int n_beams);

std::vector<int> select_tx(const BeamspaceChannel& ch, int n_beams);
std::vector<int> select_rx(const BeamspaceChannel& ch, const std::vector<int>& tx_beams,
                           int n_beams);

/// Energy-max plan: transmit beams first, then receive beams conditioned on
/// them. Beam counts must be multiples of the respective RF chain counts.
SelectionPlan energy_max_plan(const BeamspaceChannel& ch, int n_beams_tx,
                              int n_beams_rx, int n_rf_tx, int n_rf_rx);

/// Rows rx_beams, columns tx_beams of every H_b[k].
std::vector<CMat> reduce_channel(const BeamspaceChannel& ch, const SelectionPlan& plan);

struct ExhaustiveOptions {
  long long max_combinations = 200000;
  int n_rf_tx = 0;  // 0: one sub-array per plan (subarray_size = n_beams)
  int n_rf_rx = 0;
};

/// Enumerate all C(N_t, n_tx) x C(N_r, n_rx) index-set pairs in lexicographic
/// order and return the plan maximizing the evaluator; ties keep the first
/// plan enumerated. Refuses when the combination count exceeds the cap.
SelectionPlan exhaustive_select(const BeamspaceChannel& ch, int n_beams_tx,
                                int n_beams_rx,
                                const std::function<double(const SelectionPlan&)>& evaluator,
                                const ExhaustiveOptions& opts = {});

}  // namespace beamsim
