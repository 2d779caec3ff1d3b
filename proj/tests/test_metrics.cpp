// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/LU>
#include <cmath>

#include "beamsim/metrics.hpp"
#include "test_support.hpp"

using namespace beamsim;

namespace {

PhasePrecoder identity_fps(int n) {
  PhasePrecoder fps;
  fps.mat = CMat::Identity(n, n);
  fps.subarray_size = 1;
  for (int i = 0; i < n; ++i) fps.phase_pairs.push_back(phase_pair(Complex(1.0, 0.0)));
  return fps;
}

BasebandPrecoder fixed_fbb(const CMat& m, int k) {
  BasebandPrecoder fbb;
  fbb.mats.assign(k, m);
  fbb.power_alloc.assign(k, RVec::Ones(m.cols()));
  return fbb;
}

// naive oracle: log2 det(I + s B B^H) on the full receive dimension
double logdet_full_oracle(const CMat& b, double s) {
  const Eigen::Index n = b.rows();
  const CMat m = CMat::Identity(n, n) + s * b * b.adjoint();
  return std::log2(std::abs(Eigen::FullPivLU<CMat>(m).determinant()));
}

}  // namespace

TEST_CASE("mutual_information zero power and scalar chain") {
  std::vector<CMat> reduced{CMat::Identity(1, 1)};
  const PhasePrecoder fps = identity_fps(1);
  const BasebandPrecoder fbb = fixed_fbb(CMat::Identity(1, 1), 1);
  CHECK(mutual_information(reduced, fps, fbb, 0.0, 1.0, 1) == 0.0);
  // rho / (sigma2 N_s) = 3 on a unit scalar chain: log2(4) = 2
  CHECK(mutual_information(reduced, fps, fbb, 3.0, 1.0, 1) == doctest::Approx(2.0));
}

TEST_CASE("mutual_information matches the full-size determinant oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3;
    const auto reduced = testsup::rand_stack(rng, k, 6, 4);
    const CMat r = average_gram(reduced);
    const double rho = std::exp(rng.uniform(-1.0, 3.0));
    const double sigma2 = 0.5;
    const int n_s = 2;
    const double s = rho / (sigma2 * n_s);
    const PhasePrecoder fps = sic_precoder(r, SicLayout{n_s, 2}, s);
    const BasebandPrecoder fbb = baseband_precoder(reduced, fps, s);

    double oracle = 0.0;
    for (int i = 0; i < k; ++i)
      oracle += logdet_full_oracle(reduced[i] * fps.mat * fbb.mats[i], s);
    oracle /= k;
    const double got = mutual_information(reduced, fps, fbb, rho, sigma2, n_s);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("mutual_information_svd equals mutual_information with identity F_PS") {
  Rng rng(4);
  const auto reduced = testsup::rand_stack(rng, 4, 4, 4);
  const BasebandPrecoder fbb = svd_baseline(reduced, 4);
  const double a = mutual_information_svd(reduced, fbb, 2.0, 0.1, 4);
  const double b = mutual_information(reduced, identity_fps(4), fbb, 2.0, 0.1, 4);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(mutual_information_svd(reduced, fbb, 0.0, 0.1, 4) == 0.0);

  // identity channel and precoder at snr_scale 1 gives N_s bits
  std::vector<CMat> id{CMat::Identity(3, 3)};
  const BasebandPrecoder idp = fixed_fbb(CMat::Identity(3, 3), 1);
  CHECK(mutual_information_svd(id, idp, 3.0, 1.0, 3) == doctest::Approx(3.0));
}

TEST_CASE("MI is monotone non-decreasing in the transmit power") {
  Rng rng(6);
  const auto reduced = testsup::rand_stack(rng, 3, 5, 4);
  const CMat r = average_gram(reduced);
  const PhasePrecoder fps = sic_precoder(r, SicLayout{2, 2}, 1.0);
  const BasebandPrecoder fbb = baseband_precoder(reduced, fps, 1.0);
  double prev = -1.0;
  for (double rho : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double mi = mutual_information(reduced, fps, fbb, rho, 1.0, 2);
    CHECK(mi >= prev);
    prev = mi;
  }
}

TEST_CASE("fully digital water-filling dominates constrained schemes") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto full = testsup::rand_stack(rng, 3, 6, 6);
    const double rho = 2.0, sigma2 = 0.2;
    const double cap = capacity_fully_digital(full, rho, sigma2);

    const CMat r = average_gram(full);
    const int n_s = 2;
    const double s = rho / (sigma2 * n_s);
    const PhasePrecoder fps = sic_precoder(r, SicLayout{n_s, 3}, s);
    const BasebandPrecoder fbb = baseband_precoder(full, fps, s);
    CHECK(cap >= mutual_information(full, fps, fbb, rho, sigma2, n_s) - 1e-9);

    const BasebandPrecoder svd = svd_baseline(full, 6);
    CHECK(cap >= mutual_information_svd(full, svd, rho, sigma2, 6) - 1e-9);
  }
}

TEST_CASE("complexity_sic matches the counted model") {
  CHECK(complexity_sic(8, 24, 8, 24, 1024) == doctest::Approx(2056920.0));
  CHECK(complexity_sic(1, 1, 1, 1, 1) == doctest::Approx(8.0));
  // cubic leading term: doubling the beam count scales it by ~8
  const double lo = complexity_sic(1, 256, 256, 1, 1);
  const double hi = complexity_sic(1, 512, 512, 1, 1);
  CHECK(hi / lo == doctest::Approx(8.0).epsilon(0.02));
  CHECK_THROWS_AS(complexity_sic(0, 24, 8, 24, 1024), std::invalid_argument);
}

TEST_CASE("complexity_svd matches the documented model") {
  CHECK(complexity_svd(1, 1, 1) == doctest::Approx(4.0));
  CHECK(complexity_svd(24, 24, 1024) == doctest::Approx(56623104.0));
  CHECK(complexity_svd(3, 10, 7) == doctest::Approx(4.0 * complexity_svd(3, 5, 7)));
}

TEST_CASE("total_power per architecture") {
  PowerModel pm;  // defaults carry the published constants
  CHECK(total_power(pm, 1.0, 8, 24, 0.0, Architecture::sic_phase_network) ==
        doctest::Approx(3.6));
  CHECK(total_power(pm, 1.0, 24, 0, 0.0, Architecture::traditional_switch) ==
        doctest::Approx(7.12));
  PowerModel zero{0.0, 0.0, 0.0, 0.0};
  CHECK(total_power(zero, 1.5, 8, 24, 1e9, Architecture::sic_phase_network) ==
        doctest::Approx(1.5));
  // MOps term: 2e6 ops = 2 MOps at 14.1 mW/MOps
  CHECK(total_power(pm, 0.0, 0, 0, 2e6, Architecture::fully_digital) ==
        doctest::Approx(0.0282));
}

TEST_CASE("energy_efficiency definition") {
  CHECK(energy_efficiency(0.0, 1.0) == 0.0);
  CHECK(energy_efficiency(2.0, 4.0) == doctest::Approx(0.5));
  const double mi = 3.7, power = 2.9;
  CHECK(energy_efficiency(mi, power) * power == doctest::Approx(mi).epsilon(1e-12));
  CHECK_THROWS_AS(energy_efficiency(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(energy_efficiency(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("metrics records store a consistent efficiency") {
  const MetricsRecord rec = make_record(4.2, 3.5, 1e6);
  CHECK(rec.ee * rec.power_w == doctest::Approx(rec.mi_bits).epsilon(1e-12));
  CHECK(rec.complexity_ops == 1e6);
  CHECK_THROWS_AS(make_record(1.0, 0.0, 0.0), std::invalid_argument);
}
