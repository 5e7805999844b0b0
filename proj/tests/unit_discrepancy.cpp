#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/rng.hpp"

using namespace lowdisc;

namespace {

PointSet random_set(int n, int dim, SplitMix64& rng) {
  PointSet ps;
  ps.dim = dim;
  ps.n = n;
  ps.coords.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  for (double& c : ps.coords) c = rng.next_double();
  ps.general_position = in_general_position(ps);
  return ps;
}

PointSet single_point(double x, double y) {
  PointSet ps;
  ps.dim = 2;
  ps.n = 1;
  ps.coords = {x, y};
  ps.general_position = true;
  return ps;
}

}  // namespace

TEST_CASE("one-point analytic values") {
  CHECK(star_discrepancy(single_point(0.5, 0.5)).value == 0.75);
  CHECK(star_discrepancy(single_point(1.0, 1.0)).value == 1.0);
}

TEST_CASE("witness re-evaluates to the returned value") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(9));
    int dim = trial % 2 == 0 ? 2 : 3;
    PointSet ps = random_set(n, dim, rng);
    DiscrepancyValue d = star_discrepancy(ps);
    CHECK(reevaluate_witness(ps, d.witness) == d.value);
    CHECK(d.value >= 0.0);
    CHECK(d.value <= 1.0);
  }
}

TEST_CASE("star discrepancy is invariant under point order") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(7));
    PointSet ps = random_set(n, 2, rng);
    double base = star_discrepancy(ps).value;
    PointSet shuffled = ps;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      for (int k = 0; k < 2; ++k)
        std::swap(shuffled.coords[static_cast<std::size_t>(i) * 2 + k],
                  shuffled.coords[static_cast<std::size_t>(j) * 2 + k]);
    }
    CHECK(star_discrepancy(shuffled).value == base);
  }
}

TEST_CASE("sweep agrees with the oracle on small instances") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(8));
    int dim = trial % 2 == 0 ? 2 : 3;
    PointSet ps = random_set(n, dim, rng);
    CHECK(std::fabs(star_discrepancy(ps).value - oracle_star_discrepancy(ps)) <=
          1e-12);
  }
}

TEST_CASE("oracle handles duplicate coordinates") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(6));
    PointSet ps = random_set(n, 2, rng);
    for (double& c : ps.coords) c = std::floor(c * 4.0) / 4.0;
    ps.general_position = in_general_position(ps);
    CHECK(std::fabs(star_discrepancy(ps).value - oracle_star_discrepancy(ps)) <=
          1e-12);
  }
}

TEST_CASE("local map entries for the centered point") {
  LocalDiscrepancyMap map = local_discrepancy_map(single_point(0.5, 0.5));
  REQUIRE(map.grid_x == std::vector<double>{0.5, 1.0});
  REQUIRE(map.grid_y == std::vector<double>{0.5, 1.0});
  CHECK(map.closed_at(0, 0) == 0.75);
  CHECK(map.open_at(0, 0) == 0.25);
  CHECK(map.open_at(1, 1) == 0.0);
}

TEST_CASE("local map maximum equals the star discrepancy") {
  for (int n : {5, 20, 50}) {
    PointSet ps = fibonacci_set(n, 1);
    LocalDiscrepancyMap map = local_discrepancy_map(ps);
    double best = 0.0;
    for (double v : map.open) best = std::max(best, v);
    for (double v : map.closed) best = std::max(best, v);
    CHECK(std::fabs(best - star_discrepancy(ps).value) <= 1e-15);
  }
}

TEST_CASE("local map requires two dimensions") {
  SplitMix64 rng(37);
  PointSet ps = random_set(4, 3, rng);
  CHECK_THROWS_AS(local_discrepancy_map(ps), unsupported_dimension);
}

TEST_CASE("one-point optimum sits at the golden ratio point") {
  double t = (std::sqrt(5.0) - 1.0) / 2.0;
  double at_t = star_discrepancy(single_point(t, t)).value;
  CHECK(std::fabs(at_t - 0.618034) <= 1e-6);
  double grid_min = 1.0;
  for (int i = 1; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      double v = star_discrepancy(single_point(i / 100.0, j / 100.0)).value;
      grid_min = std::min(grid_min, v);
    }
  }
  CHECK(grid_min >= at_t - 1e-12);
  CHECK(grid_min <= at_t + 0.02);
}

TEST_CASE("table values for shifted Fibonacci sets") {
  CHECK(std::fabs(star_discrepancy(fibonacci_set(20, 1)).value - 0.105883) <= 5e-6);
  CHECK(std::fabs(star_discrepancy(fibonacci_set(100, 1)).value - 0.026105) <= 5e-6);
}

TEST_CASE("dimension guard") {
  PointSet ps;
  ps.dim = 4;
  ps.n = 1;
  ps.coords = {0.1, 0.2, 0.3, 0.4};
  CHECK_THROWS_AS(star_discrepancy(ps), unsupported_dimension);
}
