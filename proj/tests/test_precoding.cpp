// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "beamsim/metrics.hpp"
#include "beamsim/precoding.hpp"
#include "test_support.hpp"

using namespace beamsim;

namespace {
constexpr double kPi = 3.14159265358979323846;

double logdet2_direct(const CMat& m) {
  // naive route for oracles: eigenvalues of the full Hermitian matrix
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    bits += std::log2(es.eigenvalues()[i]);
  return bits;
}

double sic_objective(const CMat& r, const CMat& fps, double s) {
  const Eigen::Index n = fps.cols();
  return logdet2_direct(CMat::Identity(n, n) + s * fps.adjoint() * r * fps);
}

// bisection water-filling oracle
RVec waterfill_bisect(const RVec& gains, double total) {
  double lo = 0.0, hi = total + 1.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i)
    if (gains[i] > 0.0) hi = std::max(hi, total + 1.0 / gains[i]);
  for (int it = 0; it < 200; ++it) {
    const double mu = (lo + hi) / 2.0;
    double used = 0.0;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
      if (gains[i] > 0.0) used += std::max(0.0, mu - 1.0 / gains[i]);
    (used < total ? lo : hi) = mu;
  }
  RVec q = RVec::Zero(gains.size());
  for (Eigen::Index i = 0; i < gains.size(); ++i)
    if (gains[i] > 0.0) q[i] = std::max(0.0, (lo + hi) / 2.0 - 1.0 / gains[i]);
  return q;
}

PhasePrecoder identity_fps(int n) {
  PhasePrecoder fps;
  fps.mat = CMat::Identity(n, n);
  fps.subarray_size = 1;
  for (int i = 0; i < n; ++i) fps.phase_pairs.push_back(phase_pair(Complex(1.0, 0.0)));
  return fps;
}

}  // namespace

TEST_CASE("average_gram basics and loop oracle") {
  std::vector<CMat> id{CMat::Identity(3, 3)};
  CHECK((average_gram(id) - CMat::Identity(3, 3)).norm() == 0.0);

  std::vector<CMat> zeros(4, CMat::Zero(3, 3));
  CHECK(average_gram(zeros).norm() == 0.0);

  Rng rng(1);
  const auto stack = testsup::rand_stack(rng, 4, 5, 3);
  const CMat r = average_gram(stack);
  CMat expect = CMat::Zero(3, 3);
  for (const CMat& h : stack)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int q = 0; q < 5; ++q) expect(i, j) += std::conj(h(q, i)) * h(q, j) / 4.0;
  CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("factor reconstructs Hermitian PSD matrices") {
  const CMat qi = factor(CMat::Identity(4, 4));
  CHECK((qi.adjoint() * qi - CMat::Identity(4, 4)).norm() < 1e-12);

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  const CMat qd = factor(d);
  CHECK((qd.adjoint() * qd - d).norm() < 1e-12);

  // rank-1 case passes through the epsilon lift
  Rng rng(3);
  CMat v = testsup::rand_cmat(rng, 4, 1);
  v.normalize();
  const CMat r1 = (v * v.adjoint()).eval();
  const CMat q1 = factor(r1);
  CHECK((q1.adjoint() * q1 - r1).norm() <= 4 * 1e-10 * r1.trace().real() + 1e-12);

  CMat indef = CMat::Identity(2, 2);
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(factor(indef), std::runtime_error);
}

TEST_CASE("phase_pair endpoints and reconstruction") {
  auto [a1, a2] = phase_pair(Complex(2.0, 0.0));
  CHECK(a1 == doctest::Approx(0.0));
  CHECK(a2 == doctest::Approx(0.0));

  auto [b1, b2] = phase_pair(Complex(0.0, 0.0));
  CHECK(b1 == doctest::Approx(kPi / 2));
  CHECK(b2 == doctest::Approx(-kPi / 2));

  auto [c1, c2] = phase_pair(Complex(1.0, 0.0));
  CHECK(c1 == doctest::Approx(kPi / 3));
  CHECK(c2 == doctest::Approx(-kPi / 3));

  CHECK_THROWS_AS(phase_pair(Complex(2.5, 0.0)), std::invalid_argument);

  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const double mag = rng.uniform(0.0, 2.0);
    const double arg = rng.uniform(-kPi, kPi);
    const Complex c = std::polar(mag, arg);
    const auto [p1, p2] = phase_pair(c);
    const Complex back = std::polar(1.0, p1) + std::polar(1.0, p2);
    CHECK(std::abs(back - c) < 1e-12);
  }
}

TEST_CASE("sic_precoder with one stream attains the top eigenvalue of R") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat r = testsup::rand_hermitian_psd(rng, 6);
    const double s = 2.0;
    const PhasePrecoder fps = sic_precoder(r, SicLayout{1, 6}, s);
    Eigen::SelfAdjointEigenSolver<CMat> es(r);
    const double best = std::log2(1.0 + s * es.eigenvalues().maxCoeff());
    const double got = sic_objective(r, fps.mat, s);
    CHECK(got == doctest::Approx(best).epsilon(1e-8));
    CHECK(fps.subproblem_bits.size() == 1);
    CHECK(fps.subproblem_bits[0] == doctest::Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("sic_precoder on R = I matches the closed-form block sum") {
  const int n_s = 3, m = 2;
  const double s = 1.5;
  const PhasePrecoder fps = sic_precoder(CMat::Identity(n_s * m, n_s * m),
                                         SicLayout{n_s, m}, s);
  const double expect = n_s * std::log2(1.0 + s);
  double sum = 0.0;
  for (double b : fps.subproblem_bits) {
    CHECK(b == doctest::Approx(std::log2(1.0 + s)).epsilon(1e-10));
    sum += b;
  }
  CHECK(sum == doctest::Approx(expect).epsilon(1e-10));
  CHECK(sic_objective(CMat::Identity(n_s * m, n_s * m), fps.mat, s) ==
        doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("sic decomposition identity holds for the produced precoder") {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const CMat r = testsup::rand_hermitian_psd(rng, 8);
    const double s = std::exp(rng.uniform(-2.0, 3.0));
    const PhasePrecoder fps = sic_precoder(r, SicLayout{4, 2}, s);
    double sum = 0.0;
    for (double b : fps.subproblem_bits) sum += b;
    CHECK(sic_objective(r, fps.mat, s) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("phase precoder contracts: orthonormal, block support, realizable") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n_s = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    const int m = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    const CMat r = testsup::rand_hermitian_psd(rng, n_s * m);
    const PhasePrecoder fps = sic_precoder(r, SicLayout{n_s, m}, 3.0);

    const CMat gram = fps.mat.adjoint() * fps.mat;
    CHECK((gram - CMat::Identity(n_s, n_s)).cwiseAbs().maxCoeff() < 1e-10);

    for (int n = 0; n < n_s; ++n)
      for (int row = 0; row < n_s * m; ++row) {
        const bool in_block = row >= n * m && row < (n + 1) * m;
        if (!in_block) CHECK(fps.mat(row, n) == Complex(0.0, 0.0));
        else CHECK(std::abs(fps.mat(row, n)) <= 1.0 + 1e-12);
      }

    CHECK((reconstruct_from_phases(fps) - fps.mat).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("zero blocks fall back to the first basis vector") {
  const PhasePrecoder fps = sic_precoder(CMat::Zero(4, 4), SicLayout{2, 2}, 1.0);
  CHECK(fps.mat(0, 0) == Complex(1.0, 0.0));
  CHECK(fps.mat(2, 1) == Complex(1.0, 0.0));
  CHECK((fps.mat.adjoint() * fps.mat - CMat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("sic objective is near the dense random-search optimum at toy size") {
  // N_s = 2, m = 2; frozen floor calibrated against the sampled search
  Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const CMat r = testsup::rand_hermitian_psd(rng, 4);
    const double s = 2.0;
    const PhasePrecoder fps = sic_precoder(r, SicLayout{2, 2}, s);
    const double got = sic_objective(r, fps.mat, s);

    Rng search(100 + trial);
    double best = 0.0;
    for (int i = 0; i < 100000; ++i) {
      CMat cand = CMat::Zero(4, 2);
      CVec v1 = testsup::rand_cmat(search, 2, 1);
      CVec v2 = testsup::rand_cmat(search, 2, 1);
      v1.normalize();
      v2.normalize();
      cand.block(0, 0, 2, 1) = v1;
      cand.block(2, 1, 2, 1) = v2;
      best = std::max(best, sic_objective(r, cand, s));
    }
    CHECK(got >= 0.95 * best);
  }
}

TEST_CASE("Jensen bound: band average never exceeds the averaged-Gram bound") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto stack = testsup::rand_stack(rng, 6, 6, 4);
    const CMat r = average_gram(stack);
    const double s = std::exp(rng.uniform(-1.0, 2.0));
    const PhasePrecoder fps = sic_precoder(r, SicLayout{2, 2}, s);

    double avg = 0.0;
    for (const CMat& h : stack)
      avg += logdet2_direct(CMat::Identity(2, 2) +
                            s * fps.mat.adjoint() * h.adjoint() * h * fps.mat);
    avg /= static_cast<double>(stack.size());
    CHECK(avg <= sic_objective(r, fps.mat, s) + 1e-9);
  }
}

TEST_CASE("waterfill matches the bisection oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
    RVec g(n);
    for (int i = 0; i < n; ++i) g[i] = std::exp(rng.uniform(-3.0, 3.0));
    const double total = rng.uniform(0.1, 10.0);
    const RVec q = waterfill(g, total);
    const RVec oracle = waterfill_bisect(g, total);
    CHECK((q - oracle).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(q.sum() == doctest::Approx(total).epsilon(1e-9));
    CHECK(q.minCoeff() >= 0.0);
  }
}

TEST_CASE("baseband_precoder is the identity on an identity effective channel") {
  std::vector<CMat> reduced{CMat::Identity(2, 2)};
  const BasebandPrecoder fbb = baseband_precoder(reduced, identity_fps(2), 10.0);
  CHECK((fbb.mats[0] - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_FALSE(fbb.rank_deficient);
}

TEST_CASE("identity power allocation meets the combined power trace exactly") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto stack = testsup::rand_stack(rng, 3, 8, 6);
    const CMat r = average_gram(stack);
    const PhasePrecoder fps = sic_precoder(r, SicLayout{3, 2}, 2.0);
    const BasebandPrecoder fbb = baseband_precoder(stack, fps, 2.0);
    for (const CMat& f : fbb.mats) {
      const double power = (fps.mat * f).squaredNorm();
      CHECK(power == doctest::Approx(3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("waterfill mode allocates like the oracle and never loses rate") {
  // effective singular values {2, 1}: gains {4, 1} at snr_scale 1, power 2
  std::vector<CMat> reduced{(CMat(2, 2) << 2.0, 0.0, 0.0, 1.0).finished()};
  const PhasePrecoder fps = identity_fps(2);
  const double s = 1.0;

  const BasebandPrecoder wf =
      baseband_precoder(reduced, fps, s, PowerAllocation::waterfill);
  const RVec oracle = waterfill_bisect((RVec(2) << 4.0, 1.0).finished(), 2.0);
  CHECK(wf.power_alloc[0][0] * wf.power_alloc[0][0] ==
        doctest::Approx(oracle[0]).epsilon(1e-8));
  CHECK(wf.power_alloc[0][1] * wf.power_alloc[0][1] ==
        doctest::Approx(oracle[1]).epsilon(1e-8));

  const BasebandPrecoder id = baseband_precoder(reduced, fps, s);
  const double mi_wf = mutual_information(reduced, fps, wf, 2.0, 1.0, 2);
  const double mi_id = mutual_information(reduced, fps, id, 2.0, 1.0, 2);
  CHECK(mi_wf >= mi_id - 1e-12);
}

TEST_CASE("svd_baseline keeps the dominant modes") {
  CMat d = CMat::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;
  d(2, 2) = 1.0;
  std::vector<CMat> reduced{d};
  const BasebandPrecoder fbb = svd_baseline(reduced, 2);
  REQUIRE(fbb.mats[0].rows() == 3);
  REQUIRE(fbb.mats[0].cols() == 2);
  // columns span e1, e2 with unit columns after the power scaling
  CHECK(std::abs(fbb.mats[0](0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(fbb.mats[0](1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(fbb.mats[0](2, 0)) < 1e-12);
  CHECK(std::abs(fbb.mats[0](2, 1)) < 1e-12);
  CHECK(fbb.mats[0].squaredNorm() == doctest::Approx(2.0));
}

TEST_CASE("svd_baseline on a unitary channel hits the equal-power closed form") {
  Rng rng(23);
  CMat a = testsup::rand_cmat(rng, 4, 4);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMat u = (svd.matrixU() * svd.matrixV().adjoint()).eval();  // unitary
  std::vector<CMat> reduced{u};
  const int n_streams = 4;
  const BasebandPrecoder fbb = svd_baseline(reduced, n_streams);
  const double rho = 2.0, sigma2 = 0.5;
  const double s = rho / (sigma2 * n_streams);
  const double mi = mutual_information_svd(reduced, fbb, rho, sigma2, n_streams);
  CHECK(mi == doctest::Approx(n_streams * std::log2(1.0 + s)).epsilon(1e-10));
}

TEST_CASE("full-beam SVD outrates the stream-constrained SIC chain on average") {
  // SVD with RF chains on every selected beam vs SIC combining them into
  // fewer streams; stochastic ordering over seeds
  int svd_wins = 0;
  const int seeds = 50;
  double mean_svd = 0.0, mean_sic = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(1000 + seed);
    const auto stack = testsup::rand_stack(rng, 4, 8, 8);
    const CMat r = average_gram(stack);
    const double rho = 10.0, sigma2 = 1.0;

    const int n_s = 2;  // SIC: 2 streams over 8 beams
    const double s_sic = rho / (sigma2 * n_s);
    const PhasePrecoder fps = sic_precoder(r, SicLayout{n_s, 4}, s_sic);
    const BasebandPrecoder fbb_sic = baseband_precoder(stack, fps, s_sic);
    const double mi_sic = mutual_information(stack, fps, fbb_sic, rho, sigma2, n_s);

    const int n_full = 8;  // SVD: one RF chain per beam
    const BasebandPrecoder fbb_svd = svd_baseline(stack, n_full);
    const double mi_svd = mutual_information_svd(stack, fbb_svd, rho, sigma2, n_full);

    mean_svd += mi_svd;
    mean_sic += mi_sic;
    if (mi_svd >= mi_sic) ++svd_wins;
  }
  CHECK(mean_svd / seeds > mean_sic / seeds);
  CHECK(svd_wins >= 45);
}
