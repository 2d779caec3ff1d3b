// SPDX-License-Identifier: Apache-2.0
#include "beamsim/precoding.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beamsim {

namespace {

// Deterministic across backends: rotate so the largest-magnitude entry is
// real positive.
void fix_phase(Eigen::Ref<CVec> v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best + 1e-15) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  v *= std::conj(v[imax]) / std::abs(v[imax]);
}

CMat hermitian_inv_sqrt(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_inv_sqrt: eigendecomposition failed");
  RVec vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals[i] = vals[i] > 1e-14 ? 1.0 / std::sqrt(vals[i]) : 0.0;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMat average_gram(const std::vector<CMat>& reduced) {
  if (reduced.empty()) throw std::invalid_argument("average_gram: empty stack");
  const Eigen::Index n = reduced.front().cols();
  CMat r = CMat::Zero(n, n);
  for (const CMat& h : reduced) r.noalias() += h.adjoint() * h;
  r /= static_cast<double>(reduced.size());
  // enforce exact Hermitian symmetry against accumulation round-off
  return (r + r.adjoint()) / 2.0;
}

CMat factor(const CMat& r) {
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("factor: eigendecomposition failed");
  RVec vals = es.eigenvalues();
  const double scale = vals.size() ? std::abs(vals[vals.size() - 1]) : 0.0;
  if (vals.size() && vals[0] < -1e-8 * std::max(scale, 1e-300))
    throw std::runtime_error("factor: matrix is indefinite");
  const double eps = 1e-10 * r.trace().real() / static_cast<double>(r.rows());
  if (vals.size() && vals[0] < eps)
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] += std::max(eps, 0.0);
  RVec roots(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) roots[i] = std::sqrt(std::max(vals[i], 0.0));
  // Q = sqrt(Lambda) V^H satisfies Q^H Q = V Lambda V^H = R
  return roots.asDiagonal() * es.eigenvectors().adjoint();
}

PhasePrecoder sic_precoder(const CMat& r, const SicLayout& layout, double snr_scale) {
  const int n_s = layout.n_streams;
  const int m = layout.subarray_size;
  if (n_s < 1 || m < 1) throw std::invalid_argument("sic_precoder: bad layout");
  const int n_b = n_s * m;
  if (r.rows() != n_b || r.cols() != n_b)
    throw std::invalid_argument("sic_precoder: R must be (n_streams * subarray_size) square");

  const CMat q = factor(r);
  const double g_floor = 1e-14 * std::max(1.0, r.trace().real() / n_b);

  PhasePrecoder out;
  out.mat = CMat::Zero(n_b, n_s);
  out.subarray_size = m;
  CMat t = CMat::Identity(n_b, n_b);

  for (int n = 0; n < n_s; ++n) {
    // G_n = Q^H T_n^{-1} Q via Hermitian solve; T_n >= I keeps LLT well posed
    const CMat g = q.adjoint() * t.llt().solve(q);
    CMat gbar = g.block(n * m, n * m, m, m);
    gbar = (gbar + gbar.adjoint()) / 2.0;

    CVec v;
    if (gbar.norm() < g_floor) {
      v = CVec::Zero(m);
      v[0] = 1.0;  // any unit vector is optimal on a vanishing block
    } else {
      Eigen::SelfAdjointEigenSolver<CMat> es(gbar);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("sic_precoder: block eigendecomposition failed");
      v = es.eigenvectors().col(m - 1);
      fix_phase(v);
    }
    out.mat.block(n * m, n, m, 1) = v;

    const CVec qf = q * out.mat.col(n);
    const double gain = (out.mat.col(n).adjoint() * g * out.mat.col(n)).value().real();
    out.subproblem_bits.push_back(std::log2(1.0 + snr_scale * gain));
    t.noalias() += snr_scale * qf * qf.adjoint();
  }

  out.phase_pairs.reserve(static_cast<std::size_t>(n_s) * m);
  for (int n = 0; n < n_s; ++n)
    for (int i = 0; i < m; ++i) out.phase_pairs.push_back(phase_pair(out.mat(n * m + i, n)));
  return out;
}

std::pair<double, double> phase_pair(Complex c) {
  const double a = std::abs(c);
  if (a > 2.0 + 1e-12)
    throw std::invalid_argument("phase_pair: magnitude above 2 is not realizable");
  const double beta = std::arg(c);
  const double delta = std::acos(std::clamp(a / 2.0, 0.0, 1.0));
  return {beta + delta, beta - delta};
}

CMat reconstruct_from_phases(const PhasePrecoder& fps) {
  CMat out = CMat::Zero(fps.mat.rows(), fps.mat.cols());
  const int m = fps.subarray_size;
  std::size_t idx = 0;
  for (int n = 0; n < fps.n_streams(); ++n)
    for (int i = 0; i < m; ++i, ++idx) {
      const auto& [b1, b2] = fps.phase_pairs[idx];
      out(n * m + i, n) = std::polar(1.0, b1) + std::polar(1.0, b2);
    }
  return out;
}

RVec waterfill(const RVec& gains, double total) {
  const Eigen::Index n = gains.size();
  RVec q = RVec::Zero(n);
  if (n == 0 || total <= 0.0) return q;
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return gains[a] > gains[b]; });

  // largest active set whose water level clears the weakest active mode
  double inv_sum = 0.0;
  int active = 0;
  double level = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (gains[order[i]] <= 0.0) break;
    inv_sum += 1.0 / gains[order[i]];
    const double mu = (total + inv_sum) / static_cast<double>(i + 1);
    if (mu < 1.0 / gains[order[i]]) break;
    active = static_cast<int>(i + 1);
    level = mu;
  }
  for (int i = 0; i < active; ++i)
    q[order[i]] = std::max(0.0, level - 1.0 / gains[order[i]]);
  return q;
}

BasebandPrecoder baseband_precoder(const std::vector<CMat>& reduced,
                                   const PhasePrecoder& fps, double snr_scale,
                                   PowerAllocation mode) {
  if (reduced.empty()) throw std::invalid_argument("baseband_precoder: empty channel");
  const int n_s = fps.n_streams();
  const CMat gram = fps.mat.adjoint() * fps.mat;
  const CMat gram_inv_sqrt = hermitian_inv_sqrt(gram);

  BasebandPrecoder out;
  out.mats.reserve(reduced.size());
  out.power_alloc.reserve(reduced.size());
  for (const CMat& h : reduced) {
    const CMat eff = h * fps.mat * gram_inv_sqrt;
    Eigen::JacobiSVD<CMat> svd(eff, Eigen::ComputeFullV);
    CMat v = svd.matrixV().leftCols(n_s);
    for (Eigen::Index c = 0; c < v.cols(); ++c) fix_phase(v.col(c));
    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    if (svd.singularValues().size() < static_cast<Eigen::Index>(n_s) ||
        svd.singularValues()[n_s - 1] <= 1e-12 * std::max(smax, 1e-300))
      out.rank_deficient = true;

    RVec alloc;
    if (mode == PowerAllocation::identity_high_snr) {
      alloc = RVec::Ones(n_s);
    } else {
      RVec g(n_s);
      for (int i = 0; i < n_s; ++i) {
        const double s = static_cast<Eigen::Index>(i) < svd.singularValues().size()
                             ? svd.singularValues()[i]
                             : 0.0;
        g[i] = snr_scale * s * s;
      }
      alloc = waterfill(g, static_cast<double>(n_s)).cwiseSqrt();
    }

    CMat fbb = gram_inv_sqrt * v * alloc.asDiagonal();
    const double power = (fps.mat * fbb).squaredNorm();
    if (power > 0.0) fbb *= std::sqrt(static_cast<double>(n_s) / power);
    out.mats.push_back(std::move(fbb));
    out.power_alloc.push_back(std::move(alloc));
  }
  return out;
}

BasebandPrecoder svd_baseline(const std::vector<CMat>& reduced, int n_streams) {
  if (reduced.empty()) throw std::invalid_argument("svd_baseline: empty channel");
  if (n_streams < 1 ||
      n_streams > std::min(reduced.front().rows(), reduced.front().cols()))
    throw std::invalid_argument("svd_baseline: n_streams exceeds channel rank bound");

  BasebandPrecoder out;
  out.mats.reserve(reduced.size());
  for (const CMat& h : reduced) {
    Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeFullV);
    CMat v = svd.matrixV().leftCols(n_streams);
    for (Eigen::Index c = 0; c < v.cols(); ++c) fix_phase(v.col(c));
    const double power = v.squaredNorm();
    if (power > 0.0) v *= std::sqrt(static_cast<double>(n_streams) / power);
    out.mats.push_back(std::move(v));
    out.power_alloc.push_back(RVec::Ones(n_streams));
  }
  return out;
}

}  // namespace beamsim
