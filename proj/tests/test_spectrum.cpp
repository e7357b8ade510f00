#include <doctest.h>

#include <cmath>
#include <random>

#include "soliton/error.hpp"
#include "soliton/signal.hpp"
#include "soliton/spectrum.hpp"

using namespace soliton;

namespace {

DiscreteSpectrum one(double sigma, double omega, double eta, double phi) {
  return DiscreteSpectrum({SpectrumEntry{{sigma, omega}, {eta, phi}}});
}

double phase_gap(double a, double b) {
  const double d = std::remainder(a - b, kTwoPi);
  return std::abs(d);
}

}  // namespace

TEST_CASE("qd_init of one eigenvalue is lambda - lambda*") {
  const std::vector<cplx> lam{{0.0, 0.5}};
  const cplx v = qd_init(lam, 0);
  CHECK(std::abs(v - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("qd_init for two imaginary eigenvalues") {
  const std::vector<cplx> lam{{0.0, 1.0}, {0.0, 0.5}};
  // 1j * (0.5j + 1j) / (0.5j - 1j) = -3j
  CHECK(std::abs(qd_init(lam, 1) - cplx(0.0, -3.0)) < 1e-14);
  CHECK(std::abs(qd_init(lam, 1)) == doctest::Approx(3.0));
}

TEST_CASE("qd_init for eigenvalues off the imaginary axis") {
  const std::vector<cplx> lam{{0.5, 0.5}, {-0.5, 0.5}};
  // 1j * (1 + 1j) / 1
  const cplx v = qd_init(lam, 0);
  CHECK(std::abs(v - cplx(-1.0, 1.0)) < 1e-14);
  CHECK(std::isfinite(std::abs(v)));
  CHECK(std::abs(v) > 0.0);
}

TEST_CASE("qd_init rejects bad input") {
  const std::vector<cplx> lam{{0.0, 0.5}, {0.0, 0.5}};
  CHECK_THROWS_AS(qd_init(lam, 0), DegenerateSpectrumError);
  CHECK_THROWS_AS(qd_init(lam, 5), ValidationError);
}

TEST_CASE("qd_value examples") {
  CHECK(std::abs(qd_value(one(0.5, 0, 1, 0), 0) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(qd_value(one(0.5, 0, 2, kPi / 2), 0) - cplx(0.0, 2.0)) < 1e-14);
  const DiscreteSpectrum two({SpectrumEntry{{1.0, 0.0}, {1.0, 0.0}}, SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  CHECK(std::abs(qd_value(two, 1) - cplx(3.0, 0.0)) < 1e-14);
  // same magnitude, phase of qd_init included
  CHECK(std::abs(qd_realized(two, 1) - cplx(0.0, -3.0)) < 1e-14);
}

TEST_CASE("delta_t and eta_of examples") {
  CHECK(delta_t({0.5, 0.0}, 1.0) == 0.0);
  CHECK(eta_of({0.5, 0.0}, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(delta_t({1.0, 0.0}, std::exp(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(delta_t({0.5, 0.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(delta_t({0.5, 0.0}, -1.0), ValidationError);
}

TEST_CASE("eta_of inverts delta_t") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(0.1, 5.0), ul(std::log(1e-6), std::log(1e6));
  for (int i = 0; i < 1000; ++i) {
    const Eigenvalue ev{us(rng), 0.0};
    const double eta = std::exp(ul(rng));
    const double back = eta_of(ev, delta_t(ev, eta));
    REQUIRE(std::abs(back - eta) / eta < 1e-12);
  }
}

TEST_CASE("spectrum validation") {
  CHECK_THROWS_AS(DiscreteSpectrum({}), ValidationError);
  CHECK_THROWS_AS(one(0.0, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(one(0.5, 0, 0, 0), ValidationError);
  CHECK_THROWS_AS(one(0.5, 0, 1, std::nan("")), ValidationError);
  CHECK_THROWS_AS(DiscreteSpectrum({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}, SpectrumEntry{{0.5 + 1e-7, 0.0}, {1.0, 0.0}}}),
                  DegenerateSpectrumError);
  const auto s = one(0.5, 0, 1, -kPi / 2);
  CHECK(s[0].amplitude.phi == doctest::Approx(1.5 * kPi));
}

TEST_CASE("evolution of an imaginary eigenvalue is a phase rotation") {
  const auto s = one(0.5, 0.0, 1.7, 0.3);
  for (double z : {0.0, 0.4, 3.0, -2.0}) {
    const auto e = evolve(s, z);
    CHECK(e[0].amplitude.eta == doctest::Approx(1.7).epsilon(1e-15));
    CHECK(phase_gap(e[0].amplitude.phi, 0.3 + z) < 1e-12);
  }
}

TEST_CASE("evolution off the imaginary axis scales eta") {
  const auto e = evolve(one(0.5, 0.5, 1.0, 0.0), 1.0);
  CHECK(e[0].amplitude.eta == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("evolution is a one-parameter group") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> us(0.2, 2.0), uw(-1.0, 1.0), uz(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const std::vector<SpectrumEntry> ent{SpectrumEntry{{us(rng), uw(rng)}, {std::exp(uw(rng)), 2.0 + uw(rng)}},
                                         SpectrumEntry{{us(rng) + 2.1, uw(rng)}, {1.0, 1.0}}};
    const DiscreteSpectrum s(ent);
    const double z1 = uz(rng), z2 = uz(rng);
    const auto a = evolve(evolve(s, z1), z2);
    const auto b = evolve(s, z1 + z2);
    const auto back = evolve(evolve(s, z1), -z1);
    for (std::size_t k = 0; k < s.size(); ++k) {
      REQUIRE(a[k].amplitude.eta == doctest::Approx(b[k].amplitude.eta).epsilon(1e-12));
      REQUIRE(phase_gap(a[k].amplitude.phi, b[k].amplitude.phi) < 1e-11);
      REQUIRE(back[k].amplitude.eta == doctest::Approx(s[k].amplitude.eta).epsilon(1e-12));
      REQUIRE(phase_gap(back[k].amplitude.phi, s[k].amplitude.phi) < 1e-11);
    }
    const auto imag = evolve(DiscreteSpectrum({SpectrumEntry{{0.7, 0.0}, {2.0, 0.0}}, SpectrumEntry{{0.3, 0.0}, {0.5, 1.0}}}), z1);
    REQUIRE(imag[0].amplitude.eta == 2.0);
    REQUIRE(imag[1].amplitude.eta == 0.5);
  }
}

TEST_CASE("transform examples") {
  const auto s = one(0.5, 0.0, 1.0, 0.0);
  CHECK(transform(s, TransformKind::time_shift, 0.0) == s);
  const auto t = transform(s, TransformKind::time_shift, 2.0);
  CHECK(t[0].amplitude.eta == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(t[0].amplitude.phi == 0.0);
  const auto r = one(0.7, 0.3, 2.5, 1.0);
  const auto rr = transform(transform(r, TransformKind::time_reverse), TransformKind::time_reverse);
  CHECK(rr[0].eigenvalue.omega == r[0].eigenvalue.omega);
  CHECK(rr[0].amplitude.eta == doctest::Approx(r[0].amplitude.eta).epsilon(1e-15));
  CHECK(rr[0].amplitude.phi == r[0].amplitude.phi);
  CHECK_THROWS_AS(transform(s, TransformKind::dilate, 0.0), ValidationError);
  CHECK_THROWS_AS(transform(s, TransformKind::dilate, -1.0), ValidationError);
}

TEST_CASE("physical scaling") {
  PhysicalScaling unit{-1.3e-3, 1.3e-3, 1.0};
  CHECK(unit.power() == doctest::Approx(1.0));
  SampledSignal q(TimeGrid{-1.0, 0.5, 4}, {cplx(0.5), cplx(1.0), cplx(0.5), cplx(0.0)});
  PhysicalScaling four{-4.0, 1.0, 1.0};
  const auto p = denormalize(q, four);
  CHECK(std::abs(p.samples[1]) == doctest::Approx(2.0));
  PhysicalScaling a{-21.7e-27, 1.3e-3, 1e-11};
  PhysicalScaling b = a;
  b.T0 *= 2.0;
  CHECK(b.power() == doctest::Approx(a.power() / 4.0));
  const auto pa = denormalize(q, a);
  CHECK(pa.dtau == doctest::Approx(0.5 * a.T0));
  CHECK(a.distance(1.0) == doctest::Approx(2.0 * a.T0 * a.T0 / 21.7e-27));
  CHECK_THROWS_AS((PhysicalScaling{1.0, 1.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((PhysicalScaling{-1.0, 0.0, 1.0}.validate()), ValidationError);
}
