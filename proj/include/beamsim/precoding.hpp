// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "beamsim/channel.hpp"

namespace beamsim {

/// Block-diagonal phase-shifter precoder F_PS (n_beams x n_streams). Column n
/// is nonzero exactly on rows n*m .. (n+1)*m-1 (0-based) with m the sub-array
/// size, and every nonzero entry is realized by a pair of phase shifters.
struct PhasePrecoder {
  CMat mat;
  int subarray_size = 1;
  /// phases (beta1, beta2) for entry (row r, col n) of the support, stored
  /// per column then per row within the block
  std::vector<std::pair<double, double>> phase_pairs;
  /// per-subproblem rate terms log2(1 + s f^H G_n f) from the SIC recursion
  std::vector<double> subproblem_bits;

  int n_streams() const { return static_cast<int>(mat.cols()); }
  int n_beams() const { return static_cast<int>(mat.rows()); }
};

/// Per-subcarrier baseband precoders F_BB[k] (n_streams x n_streams).
struct BasebandPrecoder {
  std::vector<CMat> mats;
  std::vector<RVec> power_alloc;  // diagonal of Gamma_eff[k]
  bool rank_deficient = false;    // some effective channel lost rank
};

enum class PowerAllocation { identity_high_snr, waterfill };

/// R = (1/K) sum_k H^H[k] H[k]; Hermitian PSD by construction.
CMat average_gram(const std::vector<CMat>& reduced);

/// Factor R = Q^H Q via the eigendecomposition square root. Eigenvalues below
/// eps = 1e-10 tr(R)/dim are lifted by eps; an eigenvalue below -1e-8 ||R||
/// is rejected as indefinite.
CMat factor(const CMat& r);

struct SicLayout {
  int n_streams;
  int subarray_size;
};

/// SIC beamspace precoder: solves the per-column subproblems successively,
/// each column's block set to the leading eigenvector of the corresponding
/// principal block of G_n = Q^H T_n^{-1} Q, with
/// T_{n+1} = T_n + s (Q f_n)(Q f_n)^H and T_1 = I.
PhasePrecoder sic_precoder(const CMat& r, const SicLayout& layout, double snr_scale);

/// Phases (beta1, beta2) with e^{j beta1} + e^{j beta2} = c; requires |c| <= 2.
std::pair<double, double> phase_pair(Complex c);

/// F_BB[k] = (F^H F)^{-1/2} V_eff[k] Gamma_eff[k], with V_eff[k] the top
/// right singular vectors of H[k] F (F^H F)^{-1/2} and Gamma the identity or
/// the water-filling allocation at total power n_streams. A final scalar
/// rescale pins trace(F_BB^H F^H F F_BB) = n_streams exactly.
BasebandPrecoder baseband_precoder(const std::vector<CMat>& reduced,
                                   const PhasePrecoder& fps, double snr_scale,
                                   PowerAllocation mode = PowerAllocation::identity_high_snr);

/// SVD baseline: top-n right singular vectors of H[k], scaled to
/// trace(F^H F) = n_streams.
BasebandPrecoder svd_baseline(const std::vector<CMat>& reduced, int n_streams);

/// Water-filling: maximize sum log2(1 + g_i q_i) subject to sum q_i = total,
/// q >= 0. Returns the allocation q.
RVec waterfill(const RVec& gains, double total);

/// Rebuild the precoder matrix from its stored phase pairs.
CMat reconstruct_from_phases(const PhasePrecoder& fps);

}  // namespace beamsim
