#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "charfn.hpp"
#include "generators.hpp"
#include "test_util.hpp"

using namespace lqid;
using namespace lqid::test;

namespace {

constexpr double kPi = std::numbers::pi;

struct PhasePipeline {
  TorusGrid phi;
  TorusGrid psi;
  ZeroFreeCertificate cert;
};

// certify -> unwrap at a fixed grid size; the caller picks an adequate M.
PhasePipeline run_pipeline(const LatticePmf& p, int m) {
  TorusGrid phi = sample_grid(p, m);
  CertificationOutcome c = certify_zero_free(p, phi);
  REQUIRE(c.status == CertificationOutcome::Status::Certified);
  TorusGrid psi = distinguished_log(phi, c.certificate);
  return {std::move(phi), std::move(psi), c.certificate};
}

// Independent loop-phase accumulator used to test psi~ periodicity.
double loop_phase_oracle(const TorusGrid& phi, std::size_t base, std::size_t stride, int m) {
  double total = 0.0;
  for (int t = 0; t < m; ++t) {
    std::size_t cur = base + stride * static_cast<std::size_t>(t);
    std::size_t nxt = (t + 1 < m) ? cur + stride : base;
    total += std::arg(phi.values[nxt] * std::conj(phi.values[cur]));
  }
  return total;
}

}  // namespace

TEST_CASE("eval_charfn: examples") {
  CHECK(std::abs(eval_charfn(LatticePmf::dirac(Index{0}), {1.234}) - 1.0) < 1e-15);
  CHECK(std::abs(eval_charfn(bernoulli(0.3), {kPi}) - 0.4) < 1e-14);
  CHECK(std::abs(eval_charfn(LatticePmf::dirac(Index{2, -1}), {kPi / 2, kPi}) - 1.0) < 1e-14);
  CHECK(std::abs(eval_charfn(bernoulli(0.5), {0.0}) - 1.0) < 1e-14);
}

TEST_CASE("sample_grid: closed forms") {
  TorusGrid ones = sample_grid(LatticePmf::dirac(Index{0}), 4);
  for (const auto& v : ones.values) CHECK(std::abs(v - 1.0) < 1e-15);

  TorusGrid roots = sample_grid(LatticePmf::dirac(Index{1}), 4);
  const std::complex<double> expect[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(roots.values[static_cast<std::size_t>(i)] - expect[i]) < 1e-15);

  TorusGrid half = sample_grid(bernoulli(0.5), 2);
  CHECK(std::abs(half.values[0] - 1.0) < 1e-15);
  CHECK(std::abs(half.values[1]) < 1e-15);
}

TEST_CASE("sample_grid matches pointwise evaluation") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 12; ++rep) {
    int dim = 1 + rep % 3;
    int m = dim == 3 ? 16 : (dim == 2 ? 32 : 256);
    LatticePmf p = random_origin_dominant(rng, dim, 3, 6, false);
    TorusGrid g = sample_grid(p, m);
    std::uniform_int_distribution<std::size_t> pick(0, g.values.size() - 1);
    for (int probe = 0; probe < 50; ++probe) {
      std::size_t f = pick(rng);
      CHECK(std::abs(g.values[f] - eval_charfn(p, g.point(f))) < 1e-13);
    }
  }
}

TEST_CASE("sample_grid rejects bad sizes and budget overruns") {
  CHECK_THROWS_AS(sample_grid(bernoulli(0.5), 3), Error);
  CHECK_THROWS_AS(sample_grid(bernoulli(0.5), 0), Error);
  CHECK_THROWS_AS(sample_grid(bernoulli(0.5), 1024, 512), Error);
}

TEST_CASE("certify_zero_free: bernoulli(0.5) has a zero at pi") {
  CertificationOutcome c = certify_zero_free(bernoulli(0.5), 8);
  CHECK(c.status == CertificationOutcome::Status::ZeroFound);
  CHECK(std::abs(c.min_point[0] - kPi) < 1e-12);
  CHECK(c.certificate.min_modulus < 1e-13);
}

TEST_CASE("certify_zero_free: dirac") {
  CertificationOutcome c0 = certify_zero_free(LatticePmf::dirac(Index{0}), 2);
  CHECK(c0.status == CertificationOutcome::Status::Certified);
  CHECK(c0.certificate.min_modulus == doctest::Approx(1.0));
  CHECK(c0.certificate.lipschitz_bound == doctest::Approx(0.0));

  // |phi| = 1 but L = |k|_2 needs margin > 0 before the certificate is valid
  CertificationOutcome c1 = certify_zero_free(LatticePmf::dirac(Index{3}), 2);
  CHECK(c1.certificate.min_modulus == doctest::Approx(1.0));
  CHECK(c1.certificate.lipschitz_bound == doctest::Approx(3.0));
  CHECK(c1.status == CertificationOutcome::Status::Inconclusive);
  CertificationOutcome c2 = certify_zero_free(LatticePmf::dirac(Index{3}), 16);
  CHECK(c2.status == CertificationOutcome::Status::Certified);
}

TEST_CASE("certify_zero_free: truncated poisson(1) bottoms out at e^-2") {
  // |phi(z)| = e^{cos z - 1} for the exact law, minimum e^{-2} at z = pi.
  LatticePmf p = generate_poisson(1.0, 1e-12).pmf;
  int m = 8;
  CertificationOutcome c = certify_zero_free(p, m);
  while (c.status == CertificationOutcome::Status::Inconclusive && m < 1024) {
    m *= 2;
    c = certify_zero_free(p, m);
  }
  CHECK(c.status == CertificationOutcome::Status::Certified);
  CHECK(std::abs(c.certificate.min_modulus - std::exp(-2.0)) < 1e-9);
  CHECK(std::abs(c.min_point[0] - kPi) < 1e-12);
}

TEST_CASE("distinguished_log: phi == 1 gives psi == 0") {
  PhasePipeline pl = run_pipeline(LatticePmf::dirac(Index{0}), 8);
  for (const auto& v : pl.psi.values) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("distinguished_log: dirac(1) at M=4 walks the continuous branch") {
  PhasePipeline pl = run_pipeline(LatticePmf::dirac(Index{1}), 4);
  const double expect[4] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(pl.psi.values[static_cast<std::size_t>(i)].real()) < 1e-14);
    CHECK(pl.psi.values[static_cast<std::size_t>(i)].imag() == doctest::Approx(expect[i]));
  }
}

TEST_CASE("distinguished_log: right half-plane law equals the principal branch") {
  // phi from bernoulli(0.3) stays in Re > 0 since 0.7 > 0.3.
  PhasePipeline pl = run_pipeline(bernoulli(0.3), 8);
  for (std::size_t f = 0; f < pl.phi.values.size(); ++f) {
    std::complex<double> principal = std::log(pl.phi.values[f]);
    CHECK(std::abs(pl.psi.values[f] - principal) < 1e-13);
  }
}

TEST_CASE("exp(psi) reproduces phi on random fixtures") {
  std::mt19937_64 rng(202);
  for (int rep = 0; rep < 15; ++rep) {
    int dim = 1 + rep % 3;
    int m = dim == 3 ? 16 : (dim == 2 ? 64 : 256);
    LatticePmf base = random_origin_dominant(rng, dim, 3, 6, false);
    LatticePmf p = shift(base, random_shift(rng, dim, 2));
    PhasePipeline pl = run_pipeline(p, m);
    for (std::size_t f = 0; f < pl.phi.values.size(); ++f)
      CHECK(std::abs(std::exp(pl.psi.values[f]) - pl.phi.values[f]) < 1e-12);
  }
}

TEST_CASE("psi~ closes periodically: every loop accumulates 2 pi k_j") {
  std::mt19937_64 rng(303);
  for (int rep = 0; rep < 8; ++rep) {
    int dim = 1 + rep % 2;
    int m = dim == 2 ? 32 : 128;
    LatticePmf base = random_origin_dominant(rng, dim, 2, 5, false);
    LatticePmf p = shift(base, random_shift(rng, dim, 3));
    PhasePipeline pl = run_pipeline(p, m);
    std::vector<std::int64_t> k = winding_vector(pl.phi);

    std::size_t stride = pl.phi.values.size() / static_cast<std::size_t>(m);
    for (int axis = 0; axis < dim; ++axis) {
      for (int trial = 0; trial < 3; ++trial) {
        // random base with coordinate `axis` equal to zero
        std::vector<int> j(static_cast<std::size_t>(dim), 0);
        for (int a2 = 0; a2 < dim; ++a2)
          if (a2 != axis) j[static_cast<std::size_t>(a2)] = static_cast<int>(rng() % static_cast<unsigned>(m));
        double total = loop_phase_oracle(pl.phi, pl.phi.flat(j), stride, m);
        CHECK(std::abs(total - 2.0 * kPi * static_cast<double>(k[static_cast<std::size_t>(axis)])) <
              1e-10);
      }
      stride /= static_cast<std::size_t>(m);
    }
  }
}

TEST_CASE("winding_vector: examples") {
  PhasePipeline pl = run_pipeline(LatticePmf::dirac(Index{2, -1}), 16);
  CHECK(winding_vector(pl.phi) == std::vector<std::int64_t>{2, -1});

  // mass above 1/2 at the origin pins the winding at zero
  std::mt19937_64 rng(404);
  for (int rep = 0; rep < 5; ++rep) {
    LatticePmf p = random_origin_dominant(rng, 2, 3, 6);
    PhasePipeline pl2 = run_pipeline(p, 32);
    CHECK(winding_vector(pl2.phi) == std::vector<std::int64_t>{0, 0});
  }

  // roots inside the unit disc wind: 0.3 delta_0 + 0.7 delta_1
  LatticePmf heavy = bernoulli(0.7);
  PhasePipeline pl3 = run_pipeline(heavy, 16);
  CHECK(winding_vector(pl3.phi) == std::vector<std::int64_t>{1});
}

TEST_CASE("winding_vector: shift covariance and convolution additivity") {
  std::mt19937_64 rng(505);
  for (int rep = 0; rep < 6; ++rep) {
    int dim = 1 + rep % 2;
    int m = dim == 2 ? 64 : 256;
    LatticePmf p = random_origin_dominant(rng, dim, 2, 4, false);
    LatticePmf q = random_origin_dominant(rng, dim, 2, 4, false);
    Index s = random_shift(rng, dim, 3);

    auto wind = [&](const LatticePmf& x) {
      PhasePipeline pl = run_pipeline(x, m);
      return winding_vector(pl.phi);
    };
    std::vector<std::int64_t> kp = wind(p);
    std::vector<std::int64_t> kq = wind(q);

    std::vector<std::int64_t> kshift = wind(shift(p, s));
    std::vector<std::int64_t> ksum = wind(convolve(p, q));
    for (int axis = 0; axis < dim; ++axis) {
      CHECK(kshift[static_cast<std::size_t>(axis)] ==
            kp[static_cast<std::size_t>(axis)] + s[static_cast<std::size_t>(axis)]);
      CHECK(ksum[static_cast<std::size_t>(axis)] ==
            kp[static_cast<std::size_t>(axis)] + kq[static_cast<std::size_t>(axis)]);
    }
  }
}

TEST_CASE("distinguished_log refuses grids with phase steps above pi/2") {
  // dirac(17) at M=64: margin 1 - 17 pi/64 > 0 but steps of 17*2pi/64 > pi/2
  LatticePmf p = LatticePmf::dirac(Index{17});
  TorusGrid phi = sample_grid(p, 64);
  CertificationOutcome c = certify_zero_free(p, phi);
  REQUIRE(c.status == CertificationOutcome::Status::Certified);
  CHECK_THROWS_AS(distinguished_log(phi, c.certificate), Error);
}
