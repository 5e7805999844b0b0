#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lowdisc/pointset.hpp"

namespace lowdisc {

/// Lattice parameter r, either an exact reduced rational p/q with q <= n or a
/// real value (irrational parameter or interval midpoint).
struct KroneckerGenerator {
  int n = 0;
  bool rational = false;
  long long p = 0;
  long long q = 0;
  double r = 0.0;
  std::string origin;

  static KroneckerGenerator from_rational(int n, long long p, long long q);
  static KroneckerGenerator from_real(int n, double r);
};

/// Result of the consecutive-difference structure check. `observed` holds the
/// distinct values of (pi(i+1) - pi(i)) mod n; the check passes when at most
/// three distinct values occur. `reference` is the literal candidate triple
/// {pi(2), pi(2)+1, n - pi(2)}, compared informationally in matches_literal.
struct ThreeValueReport {
  bool passes = false;
  std::vector<int> observed;
  std::array<int, 3> reference{};
  bool matches_literal = false;
};

/// Points (i/n, {(i+s) * phi}), i = 0..n-1, phi = (1+sqrt(5))/2.
PointSet fibonacci_set(int n, long long shift);

/// Points (i/n, {i*r}), i = 0..n-1. Rational parameters use exact integer
/// arithmetic for the fractional parts, so ties are exact.
PointSet kronecker_lattice(const KroneckerGenerator& g);

/// Base-2 radical inverses of s, s+1, ..., s+n-1, lifted against i/n.
PointSet van_der_corput_lifted(int n, long long shift);

/// First n points of the Sobol' sequence in gray-code order after dropping
/// `skip` points; standard direction numbers, dimensions 2 and 3.
PointSet sobol(int n, int dim, long long skip);

/// Seeded Fisher-Yates shuffle; identical seeds give identical permutations on
/// every platform.
Permutation random_permutation(int n, std::uint64_t seed);

/// All reduced fractions p/q in (0,1] with q <= n, ascending, interleaved with
/// the midpoint of every consecutive interval (starting with (0, smallest)).
std::vector<KroneckerGenerator> enumerate_kronecker_generators(int n);

/// Materializes each generator's permutation and drops duplicates, keeping the
/// smallest r as representative; output stays sorted by r.
std::vector<std::pair<Permutation, KroneckerGenerator>> dedupe_permutations(
    const std::vector<KroneckerGenerator>& gens);

ThreeValueReport three_value_check(const Permutation& p);

}  // namespace lowdisc
