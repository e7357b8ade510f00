#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "soliton/figures.hpp"

using namespace soliton;

TEST_CASE("equal shifts give the smallest T_max and the largest B_max") {
  MeasureConfig c;
  c.phase_points = 8;
  const auto t = delta_t_study(c, 3.0, 0.5);
  REQUIRE(t.columns.size() == 5);
  REQUIRE(t.rows.size() == 7);
  CHECK(t.rows.front()[0] == 0.0);
  CHECK(t.rows.back()[0] == doctest::Approx(3.0));
  for (std::size_t col : {1u, 3u}) {
    for (const auto& r : t.rows) CHECK(r[col] >= t.rows.front()[col] - 1e-9);
  }
  for (std::size_t col : {2u, 4u}) {
    for (const auto& r : t.rows) CHECK(r[col] <= t.rows.front()[col] + 1e-9);
  }
}

TEST_CASE("the two-soliton link optimum peaks at both ends") {
  MeasureConfig c;
  c.phase_points = 8;
  c.z_samples = 11;
  const auto t = propagation_study(c);
  std::vector<std::vector<double>> two;
  for (const auto& r : t.rows)
    if (r[0] == 2.0) two.push_back(r);
  REQUIRE(two.size() == 11);
  const double first = two.front()[2];
  const double last = two.back()[2];
  CHECK(std::abs(first - last) / first < 0.02);
  for (const auto& r : two) CHECK(r[2] <= std::max(first, last) + 1e-9);
  CHECK(two.back()[1] == doctest::Approx(6.0));
}

TEST_CASE("bound table") {
  MeasureConfig c;
  c.phase_points = 4;
  const auto t = bound_study(Constellation::real_axis, 4, c);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0][1] == 1.0);
  CHECK(t.rows[0][2] == 1.0);
  CHECK(std::isnan(t.rows[3][2]));
  CHECK(t.rows[1][1] <= t.rows[1][2]);
}
