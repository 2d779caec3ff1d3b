// SPDX-License-Identifier: Apache-2.0
#include "beamsim/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace beamsim {

namespace {

// log2|I + s B B^H| evaluated on the smaller side via singular values.
double logdet_bits(const CMat& b, double s) {
  Eigen::JacobiSVD<CMat> svd(b);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()[i];
    bits += std::log2(1.0 + s * sv * sv);
  }
  if (!std::isfinite(bits)) throw std::runtime_error("mutual_information: non-finite log-det");
  return bits;
}

double snr_scale(double rho, double sigma2, int n_streams) {
  if (rho < 0.0 || sigma2 <= 0.0 || n_streams < 1)
    throw std::invalid_argument("mutual_information: bad SNR parameters");
  return rho / (sigma2 * n_streams);
}

}  // namespace

double mutual_information(const std::vector<CMat>& reduced, const PhasePrecoder& fps,
                          const BasebandPrecoder& fbb, double rho, double sigma2,
                          int n_streams) {
  if (reduced.size() != fbb.mats.size())
    throw std::invalid_argument("mutual_information: channel/precoder length mismatch");
  const double s = snr_scale(rho, sigma2, n_streams);
  double acc = 0.0;
  for (std::size_t k = 0; k < reduced.size(); ++k)
    acc += logdet_bits(reduced[k] * fps.mat * fbb.mats[k], s);
  return acc / static_cast<double>(reduced.size());
}

double mutual_information_svd(const std::vector<CMat>& reduced,
                              const BasebandPrecoder& fbb, double rho, double sigma2,
                              int n_streams) {
  if (reduced.size() != fbb.mats.size())
    throw std::invalid_argument("mutual_information_svd: channel/precoder length mismatch");
  const double s = snr_scale(rho, sigma2, n_streams);
  double acc = 0.0;
  for (std::size_t k = 0; k < reduced.size(); ++k)
    acc += logdet_bits(reduced[k] * fbb.mats[k], s);
  return acc / static_cast<double>(reduced.size());
}

double capacity_fully_digital(const std::vector<CMat>& full, double rho, double sigma2) {
  if (full.empty()) throw std::invalid_argument("capacity_fully_digital: empty channel");
  if (rho < 0.0 || sigma2 <= 0.0)
    throw std::invalid_argument("capacity_fully_digital: bad SNR parameters");
  double acc = 0.0;
  for (const CMat& h : full) {
    // eigenvalues of H^H H are the squared singular values
    const CMat gram = (h.adjoint() * h).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
    RVec gains = es.eigenvalues().cwiseMax(0.0) / sigma2;
    const RVec p = waterfill(gains, rho);
    for (Eigen::Index i = 0; i < gains.size(); ++i)
      acc += std::log2(1.0 + gains[i] * p[i]);
  }
  return acc / static_cast<double>(full.size());
}

double complexity_sic(int n_streams, int n_beams, int n_rf, int n_rx_beams, int k) {
  if (n_streams < 1 || n_beams < 1 || n_rf < 1 || n_rx_beams < 1 || k < 1)
    throw std::invalid_argument("complexity_sic: inputs must be positive");
  const double nb = n_beams, ns = n_streams;
  const double sub = nb / n_rf;
  return 4.0 * ns * nb * nb * nb + ns * (ns + 1.0) * nb * nb + ns * sub * sub * sub +
         static_cast<double>(k) * n_rx_beams * n_rf * n_rf;
}

double complexity_svd(int n_rx_beams, int n_dim, int k) {
  if (n_rx_beams < 1 || n_dim < 1 || k < 1)
    throw std::invalid_argument("complexity_svd: inputs must be positive");
  constexpr double c_svd = 4.0;
  return static_cast<double>(k) * c_svd * n_rx_beams * static_cast<double>(n_dim) * n_dim;
}

double total_power(const PowerModel& model, double rho_w, int n_rf, int n_beams,
                   double complexity_ops, Architecture arch) {
  if (rho_w < 0.0 || n_rf < 0 || n_beams < 0 || complexity_ops < 0.0)
    throw std::invalid_argument("total_power: inputs must be non-negative");
  const double p_c = model.p_c_per_mops_w * complexity_ops / 1e6;
  switch (arch) {
    case Architecture::sic_phase_network:
      return rho_w + p_c + n_rf * model.p_rf_w + 2.0 * n_beams * model.p_ps_w +
             n_beams * model.p_switch_w;
    case Architecture::traditional_switch:
      return rho_w + p_c + n_rf * model.p_rf_w + n_rf * model.p_switch_w;
    case Architecture::fully_digital:
      return rho_w + p_c + n_rf * model.p_rf_w;
  }
  throw std::invalid_argument("total_power: unknown architecture");
}

double energy_efficiency(double mi, double power) {
  if (power <= 0.0) throw std::invalid_argument("energy_efficiency: power must be positive");
  return mi / power;
}

MetricsRecord make_record(double mi_bits, double power_w, double complexity_ops) {
  return MetricsRecord{mi_bits, power_w, energy_efficiency(mi_bits, power_w),
                       complexity_ops};
}

}  // namespace beamsim
