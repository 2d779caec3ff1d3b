// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "beamsim/config.hpp"
#include "beamsim/precoding.hpp"

namespace beamsim {

enum class Architecture { sic_phase_network, traditional_switch, fully_digital };

struct MetricsRecord {
  double mi_bits = 0.0;
  double power_w = 0.0;
  double ee = 0.0;  // always mi_bits / power_w
  double complexity_ops = 0.0;
};

MetricsRecord make_record(double mi_bits, double power_w, double complexity_ops);

/// Band-averaged log-det rate of the phase-network chain, evaluated through
/// the smaller-dimension determinant identity |I + AB| = |I + BA|.
double mutual_information(const std::vector<CMat>& reduced, const PhasePrecoder& fps,
                          const BasebandPrecoder& fbb, double rho, double sigma2,
                          int n_streams);

/// Same rate without a phase network (traditional SVD chain).
double mutual_information_svd(const std::vector<CMat>& reduced,
                              const BasebandPrecoder& fbb, double rho, double sigma2,
                              int n_streams);

/// Per-subcarrier capacity of the unconstrained full channel: water-filled
/// SVD precoding over every mode at total power rho.
double capacity_fully_digital(const std::vector<CMat>& full, double rho, double sigma2);

/// Elementary-operation count of the SIC precoding chain.
double complexity_sic(int n_streams, int n_beams, int n_rf, int n_rx_beams, int k);

/// Documented per-subcarrier SVD cost model: K * 4 * n_rx_beams * n_dim^2.
double complexity_svd(int n_rx_beams, int n_dim, int k);

double total_power(const PowerModel& model, double rho_w, int n_rf, int n_beams,
                   double complexity_ops, Architecture arch);

double energy_efficiency(double mi, double power);

}  // namespace beamsim
