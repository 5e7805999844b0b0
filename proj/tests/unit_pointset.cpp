#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lowdisc/generators.hpp"
#include "lowdisc/pointset.hpp"
#include "lowdisc/rng.hpp"

using namespace lowdisc;

namespace {

PointSet make2d(std::vector<std::pair<double, double>> pts) {
  PointSet ps;
  ps.dim = 2;
  ps.n = static_cast<int>(pts.size());
  for (auto& [x, y] : pts) {
    ps.coords.push_back(x);
    ps.coords.push_back(y);
  }
  ps.general_position = in_general_position(ps);
  return ps;
}

}  // namespace

TEST_CASE("extract_permutation ranks second coordinates") {
  PointSet ps = make2d({{0.1, 0.3}, {0.5, 0.9}, {0.8, 0.2}});
  Permutation p = extract_permutation(ps);
  CHECK(p.map == std::vector<int>{2, 3, 1});
}

TEST_CASE("diagonal set gives the identity permutation") {
  int n = 7;
  PointSet ps;
  ps.dim = 2;
  ps.n = n;
  for (int i = 0; i < n; ++i) {
    ps.coords.push_back(i / static_cast<double>(n));
    ps.coords.push_back(i / static_cast<double>(n));
  }
  Permutation p = extract_permutation(ps);
  for (int i = 1; i <= n; ++i) CHECK(p(i) == i);
}

TEST_CASE("Fibonacci n=5 shift 0 permutation") {
  Permutation p = extract_permutation(fibonacci_set(5, 0));
  CHECK(p.map == std::vector<int>{1, 4, 2, 5, 3});
}

TEST_CASE("ties break by position in first-coordinate order") {
  PointSet ps = make2d({{0.2, 0.5}, {0.4, 0.5}, {0.6, 0.1}});
  Permutation p = extract_permutation(ps);
  CHECK(p.map == std::vector<int>{2, 3, 1});
}

TEST_CASE("extract_permutation3d on sorted triples") {
  PointSet ps;
  ps.dim = 3;
  ps.n = 3;
  ps.coords = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  Permutation3D pp = extract_permutation3d(ps);
  CHECK(pp.sigma.map == std::vector<int>{1, 2, 3});
  CHECK(pp.tau.map == std::vector<int>{1, 2, 3});
}

TEST_CASE("extract_permutation3d mixed ranks") {
  PointSet ps;
  ps.dim = 3;
  ps.n = 2;
  ps.coords = {0.1, 0.9, 0.2, 0.5, 0.1, 0.8};
  Permutation3D pp = extract_permutation3d(ps);
  CHECK(pp.sigma.map == std::vector<int>{2, 1});
  CHECK(pp.tau.map == std::vector<int>{1, 2});
}

TEST_CASE("cumulative counts for the identity") {
  Permutation p{3, {1, 2, 3}};
  CountTable c = cumulative_counts(p);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) CHECK(c.at(i, j) == std::min(i, j));
}

TEST_CASE("cumulative counts hand example") {
  Permutation p{3, {2, 3, 1}};
  CountTable c = cumulative_counts(p);
  CHECK(c.at(1, 1) == 0);
  CHECK(c.at(2, 2) == 1);
  CHECK(c.at(2, 3) == 2);
  CHECK(c.at(3, 3) == 3);
}

TEST_CASE("cumulative counts equal the direct double loop") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(8));
    Permutation p = random_permutation(n, rng.next_u64());
    CountTable c = cumulative_counts(p);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        int direct = 0;
        for (int u = 1; u <= i; ++u)
          if (p(u) <= j) ++direct;
        CHECK(c.at(i, j) == direct);
      }
    }
  }
}

TEST_CASE("3D cumulative counts equal the direct triple loop") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(6));
    Permutation3D pp{n, random_permutation(n, rng.next_u64()),
                     random_permutation(n, rng.next_u64())};
    CountTable3D c = cumulative_counts(pp);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        for (int k = 0; k <= n; ++k) {
          int direct = 0;
          for (int u = 1; u <= i; ++u)
            if (pp.sigma(u) <= j && pp.tau(u) <= k) ++direct;
          CHECK(c.at(i, j, k) == direct);
        }
      }
    }
  }
}

TEST_CASE("assemble places sorted coordinates by permutation") {
  CoordinateFamily x{2, {0.25, 0.75}};
  CoordinateFamily y{2, {0.25, 0.75}};
  PointSet a = assemble(x, y, Permutation{2, {1, 2}});
  CHECK(a.coords == std::vector<double>{0.25, 0.25, 0.75, 0.75});
  PointSet b = assemble(x, y, Permutation{2, {2, 1}});
  CHECK(b.coords == std::vector<double>{0.25, 0.75, 0.75, 0.25});
}

TEST_CASE("extract after assemble returns the same permutation") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(64));
    Permutation p = random_permutation(n, rng.next_u64());
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      xs[static_cast<std::size_t>(i)] = rng.next_double();
      ys[static_cast<std::size_t>(i)] = rng.next_double();
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    PointSet ps = assemble(CoordinateFamily{n, xs}, CoordinateFamily{n, ys}, p);
    CHECK(extract_permutation(ps).map == p.map);
  }
}

TEST_CASE("extract after assemble in 3D") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.next_below(16));
    Permutation3D pp{n, random_permutation(n, rng.next_u64()),
                     random_permutation(n, rng.next_u64())};
    std::vector<std::vector<double>> fam(3);
    for (auto& v : fam) {
      v.resize(static_cast<std::size_t>(n));
      for (double& t : v) t = rng.next_double();
      std::sort(v.begin(), v.end());
    }
    PointSet ps = assemble(CoordinateFamily{n, fam[0]}, CoordinateFamily{n, fam[1]},
                           CoordinateFamily{n, fam[2]}, pp);
    Permutation3D back = extract_permutation3d(ps);
    CHECK(back.sigma.map == pp.sigma.map);
    CHECK(back.tau.map == pp.tau.map);
  }
}

TEST_CASE("lift of a single value") {
  PointSet ps = lift(std::vector<double>{0.5});
  CHECK(ps.dim == 2);
  CHECK(ps.n == 1);
  CHECK(ps.coords == std::vector<double>{0.0, 0.5});
}

TEST_CASE("lift reproduces the Fibonacci set") {
  PointSet fib = fibonacci_set(5, 0);
  std::vector<double> seconds;
  for (int i = 0; i < 5; ++i) seconds.push_back(fib.at(i, 1));
  PointSet lifted = lift(seconds);
  CHECK(lifted.coords == fib.coords);
}

TEST_CASE("lift of 2D set prepends the uniform coordinate") {
  PointSet s2 = sobol(4, 2, 0);
  PointSet s3 = lift(s2);
  CHECK(s3.dim == 3);
  for (int i = 0; i < 4; ++i) {
    CHECK(s3.at(i, 0) == i / 4.0);
    CHECK(s3.at(i, 1) == s2.at(i, 0));
    CHECK(s3.at(i, 2) == s2.at(i, 1));
  }
}

TEST_CASE("general position detection") {
  CHECK(in_general_position(make2d({{0.1, 0.2}, {0.3, 0.4}})));
  CHECK_FALSE(in_general_position(make2d({{0.1, 0.2}, {0.1, 0.4}})));
  CHECK_FALSE(in_general_position(make2d({{0.1, 0.4}, {0.3, 0.4}})));
}

TEST_CASE("projection repairs duplicates with exact gaps") {
  double eps = 1e-6;
  CoordinateFamily f = project_to_gaps({0.5, 0.5, 0.5}, eps);
  REQUIRE(f.values.size() == 3);
  for (std::size_t i = 1; i < 3; ++i)
    CHECK(f.values[i] - f.values[i - 1] >= eps);
  for (double v : f.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  f.validate(eps);
}

TEST_CASE("projection clamps runs near the upper bound") {
  double eps = 1e-3;
  CoordinateFamily f = project_to_gaps({0.9999, 1.0, 1.0}, eps);
  CHECK(f.values.back() <= 1.0);
  for (std::size_t i = 1; i < 3; ++i)
    CHECK(f.values[i] - f.values[i - 1] >= eps);
}

TEST_CASE("projection keeps already-feasible input unchanged") {
  std::vector<double> v{0.1, 0.4, 0.9};
  CoordinateFamily f = project_to_gaps(v, 1e-6);
  CHECK(f.values == v);
}

TEST_CASE("projection rejects an impossible gap chain") {
  CHECK_THROWS_AS(project_to_gaps({0.1, 0.2, 0.3}, 0.6), invalid_input);
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS((Permutation{2, {1, 1}}).validate(), invalid_input);
  CHECK_THROWS_AS((Permutation{2, {0, 1}}).validate(), invalid_input);
  CHECK_NOTHROW((Permutation{2, {2, 1}}).validate());
}

TEST_CASE("pointset validation rejects out-of-range coordinates") {
  PointSet ps = make2d({{0.5, 1.5}});
  CHECK_THROWS_AS(ps.validate(), invalid_input);
}

TEST_CASE("permutation_pointset builds the grid embedding") {
  Permutation p{4, {2, 4, 1, 3}};
  PointSet ps = permutation_pointset(p);
  for (int i = 1; i <= 4; ++i) {
    CHECK(ps.at(i - 1, 0) == (i - 1) / 4.0);
    CHECK(ps.at(i - 1, 1) == (p(i) - 1) / 4.0);
  }
  CHECK(extract_permutation(ps).map == p.map);
}
