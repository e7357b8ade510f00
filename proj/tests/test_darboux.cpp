#include <doctest.h>

#include <cmath>
#include <random>

#include "properties.hpp"
#include "soliton/darboux.hpp"
#include "soliton/error.hpp"

using namespace soliton;

TEST_CASE("first-order soliton matches the sech profile") {
  for (double sigma : {0.3, 0.5, 1.0, 1.7}) {
    for (double dt : {0.0, 1.5, -2.0}) {
      const auto s = make_spectrum(std::vector{sigma}, std::vector{0.0}, std::vector{dt}, std::vector{0.9});
      const TimeGrid g = auto_grid(s);
      const auto q = synthesize(s, g);
      double err = 0.0;
      for (std::size_t i = 0; i < g.n_samples; ++i) {
        const double want = 2.0 * sigma / std::cosh(2.0 * sigma * (g.t(i) - dt));
        err = std::max(err, std::abs(std::abs(q.samples[i]) - want));
      }
      CHECK(err < 1e-10);
    }
  }
}

TEST_CASE("first-order soliton at lambda = 0.5j peaks at magnitude 1") {
  const DiscreteSpectrum s({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  const auto q = synthesize(s, TimeGrid::centered(0.0, 0.05, 1024));
  CHECK(q.peak() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(std::abs(q.samples[512]) - 1.0) < 1e-12);
}

TEST_CASE("two-soliton with equal scalings is even") {
  const DiscreteSpectrum s({SpectrumEntry{{1.0, 0.0}, {1.0, 0.0}}, SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  CHECK(props::check_symmetric(s).empty());
  const auto q = synthesize(s, auto_grid(s));
  CHECK(q.energy() == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("energy equals 4 sum sigma for random spectra") {
  std::mt19937_64 rng(21);
  props::Ranges r;
  r.n_max = 4;
  r.sigma_hi = 2.0;
  for (int i = 0; i < 20; ++i) {
    const auto s = props::random_spectrum(rng, r);
    const auto msg = props::check_energy(s);
    REQUIRE_MESSAGE(msg.empty(), msg);
  }
}

TEST_CASE("transforms and ordering act on the signal as expected") {
  std::mt19937_64 rng(22);
  props::Ranges r;
  for (int i = 0; i < 20; ++i) {
    const auto s = props::random_spectrum(rng, r);
    auto msg = props::check_transforms(s, rng);
    REQUIRE_MESSAGE(msg.empty(), msg);
    msg = props::check_order_invariance(s, rng);
    REQUIRE_MESSAGE(msg.empty(), msg);
  }
}

TEST_CASE("auto_grid sizing") {
  const DiscreteSpectrum a({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  const DiscreteSpectrum b({SpectrumEntry{{1.0, 0.0}, {1.0, 0.0}}});
  const TimeGrid ga = auto_grid(a);
  const TimeGrid gb = auto_grid(b);
  CHECK(std::has_single_bit(ga.n_samples));
  // the window holds the 1e-6 energy duration with margin
  CHECK(ga.width() / 2.0 >= 0.75 * std::log(2.0 / 1e-6));
  CHECK(gb.width() < ga.width());
  CHECK(auto_grid(a, 1e-6).dt <= ga.dt);
  const auto q = synthesize_checked(a, ga);
  CHECK_FALSE(q.truncated());
}

TEST_CASE("narrow grids are reported as truncated") {
  const DiscreteSpectrum a({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  const auto r = synthesize_checked(a, TimeGrid::centered(0.0, 0.1, 64));
  CHECK(r.truncated());
  CHECK(r.edge_ratio > 1e-3);
}

TEST_CASE("far tails stay finite") {
  const DiscreteSpectrum s({SpectrumEntry{{1.0, 0.0}, {1.0, 0.0}}, SpectrumEntry{{0.5, 0.3}, {1.0, 1.0}}});
  const auto q = synthesize(s, TimeGrid{-512.0, 1.0, 1024});
  for (const auto& v : q.samples) REQUIRE(std::isfinite(std::abs(v)));
  CHECK(q.peak() > 1.0);
  CHECK(std::abs(q.samples.front()) < 1e-100);
}

TEST_CASE("synthesis plan renders every phase vector like synthesize") {
  const DiscreteSpectrum s({SpectrumEntry{{0.8, 0.2}, {2.0, 0.0}}, SpectrumEntry{{0.5, -0.4}, {0.7, 0.0}}});
  const TimeGrid g = auto_grid(s);
  const SynthesisPlan plan(s, g);
  for (double p : {0.0, 1.0, 4.0}) {
    const std::vector<double> phases{p, 0.5};
    const auto a = plan.render(phases);
    const auto b = synthesize(s.with_phases(phases), g);
    CHECK(props::max_diff(a, [&](std::size_t i) { return b.samples[i]; }) < 1e-12);
  }
}

TEST_CASE("synthesis rejects bad grids") {
  const DiscreteSpectrum a({SpectrumEntry{{0.5, 0.0}, {1.0, 0.0}}});
  CHECK_THROWS_AS(synthesize(a, TimeGrid{0.0, 0.0, 64}), ValidationError);
  CHECK_THROWS_AS(synthesize(a, TimeGrid{0.0, 0.1, 0}), ValidationError);
}
