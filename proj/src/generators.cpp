#include "lowdisc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lowdisc/rng.hpp"

namespace lowdisc {

namespace {

constexpr double kPhi = 1.6180339887498948482;

double fractional(double v) { return v - std::floor(v); }

// 32-bit direction numbers for the first three Sobol' dimensions. Dimension 1
// uses m_k = 1; the others follow the primitive-polynomial recurrence
// m_k = 2 a_1 m_{k-1} ^ ... ^ 2^s m_{k-s} ^ m_{k-s}.
std::vector<std::uint32_t> sobol_directions(int dim_index) {
  constexpr int kBits = 32;
  std::vector<std::uint32_t> m(kBits + 1, 0);
  int s = 0;
  std::uint32_t a = 0;
  if (dim_index == 0) {
    for (int k = 1; k <= kBits; ++k) m[static_cast<std::size_t>(k)] = 1;
  } else if (dim_index == 1) {
    s = 1;
    a = 0;
    m[1] = 1;
  } else if (dim_index == 2) {
    s = 2;
    a = 1;
    m[1] = 1;
    m[2] = 3;
  } else {
    throw unsupported_dimension("sobol: direction numbers cover dimensions 1..3");
  }
  if (dim_index > 0) {
    for (int k = s + 1; k <= kBits; ++k) {
      std::uint32_t v = m[static_cast<std::size_t>(k - s)] ^
                        (m[static_cast<std::size_t>(k - s)] << s);
      for (int t = 1; t < s; ++t) {
        if ((a >> (s - 1 - t)) & 1u)
          v ^= m[static_cast<std::size_t>(k - t)] << t;
      }
      m[static_cast<std::size_t>(k)] = v;
    }
  }
  std::vector<std::uint32_t> dir(kBits);
  for (int k = 1; k <= kBits; ++k)
    dir[static_cast<std::size_t>(k - 1)] =
        m[static_cast<std::size_t>(k)] << (kBits - k);
  return dir;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

KroneckerGenerator KroneckerGenerator::from_rational(int n, long long p, long long q) {
  if (n < 1) throw invalid_input("kronecker: n must be >= 1");
  if (q < 1 || p < 1 || p > q)
    throw invalid_input("kronecker: rational parameter must satisfy 0 < p/q <= 1");
  long long g = gcd_ll(p, q);
  p /= g;
  q /= g;
  if (q > n)
    throw invalid_input("kronecker: rational denominator must not exceed n");
  KroneckerGenerator out;
  out.n = n;
  out.rational = true;
  out.p = p;
  out.q = q;
  out.r = static_cast<double>(p) / static_cast<double>(q);
  out.origin = "fraction(" + std::to_string(p) + "/" + std::to_string(q) + ")";
  return out;
}

KroneckerGenerator KroneckerGenerator::from_real(int n, double r) {
  if (n < 1) throw invalid_input("kronecker: n must be >= 1");
  if (!(r > 0.0 && r <= 1.0))
    throw invalid_input("kronecker: real parameter must lie in (0,1]");
  KroneckerGenerator out;
  out.n = n;
  out.rational = false;
  out.r = r;
  out.origin = "real";
  return out;
}

PointSet fibonacci_set(int n, long long shift) {
  if (n < 1) throw invalid_input("fibonacci_set: n must be >= 1");
  if (shift < 0) throw invalid_input("fibonacci_set: shift must be >= 0");
  PointSet ps;
  ps.dim = 2;
  ps.n = n;
  ps.coords.resize(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    ps.at(i, 0) = static_cast<double>(i) / n;
    ps.at(i, 1) = fractional(static_cast<double>(i + shift) * kPhi);
  }
  ps.provenance = "fibonacci(n=" + std::to_string(n) +
                  ",shift=" + std::to_string(shift) + ")";
  return ps;
}

PointSet kronecker_lattice(const KroneckerGenerator& g) {
  if (g.n < 1) throw invalid_input("kronecker_lattice: n must be >= 1");
  PointSet ps;
  ps.dim = 2;
  ps.n = g.n;
  ps.coords.resize(static_cast<std::size_t>(g.n) * 2);
  for (int i = 0; i < g.n; ++i) {
    ps.at(i, 0) = static_cast<double>(i) / g.n;
    if (g.rational) {
      long long num = (static_cast<long long>(i) * g.p) % g.q;
      ps.at(i, 1) = static_cast<double>(num) / static_cast<double>(g.q);
    } else {
      ps.at(i, 1) = fractional(static_cast<double>(i) * g.r);
    }
  }
  ps.provenance = "kronecker(n=" + std::to_string(g.n) + ",r=" + g.origin + ")";
  return ps;
}

PointSet van_der_corput_lifted(int n, long long shift) {
  if (n < 1) throw invalid_input("van_der_corput_lifted: n must be >= 1");
  if (shift < 0) throw invalid_input("van_der_corput_lifted: shift must be >= 0");
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::uint64_t idx = static_cast<std::uint64_t>(shift) + static_cast<std::uint64_t>(i);
    double v = 0.0;
    double base = 0.5;
    while (idx != 0) {
      if (idx & 1u) v += base;
      idx >>= 1;
      base *= 0.5;
    }
    values[static_cast<std::size_t>(i)] = v;
  }
  PointSet ps = lift(values);
  ps.provenance = "vdc(n=" + std::to_string(n) + ",shift=" + std::to_string(shift) + ")";
  return ps;
}

PointSet sobol(int n, int dim, long long skip) {
  if (n < 1) throw invalid_input("sobol: n must be >= 1");
  if (dim != 2 && dim != 3)
    throw unsupported_dimension("sobol: dimension must be 2 or 3");
  if (skip < 0) throw invalid_input("sobol: skip must be >= 0");
  std::vector<std::vector<std::uint32_t>> dirs;
  for (int k = 0; k < dim; ++k) dirs.push_back(sobol_directions(k));

  std::vector<std::uint32_t> state(static_cast<std::size_t>(dim), 0);
  std::uint64_t start = static_cast<std::uint64_t>(skip);
  std::uint64_t gray = start ^ (start >> 1);
  for (int b = 0; b < 32; ++b) {
    if ((gray >> b) & 1u) {
      for (int k = 0; k < dim; ++k)
        state[static_cast<std::size_t>(k)] ^= dirs[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
    }
  }

  PointSet ps;
  ps.dim = dim;
  ps.n = n;
  ps.coords.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k)
      ps.at(i, k) = static_cast<double>(state[static_cast<std::size_t>(k)]) * 0x1.0p-32;
    std::uint64_t c = start + static_cast<std::uint64_t>(i);
    int z = 0;
    while ((c >> z) & 1u) ++z;
    for (int k = 0; k < dim; ++k)
      state[static_cast<std::size_t>(k)] ^= dirs[static_cast<std::size_t>(k)][static_cast<std::size_t>(z)];
  }
  ps.provenance = "sobol(n=" + std::to_string(n) + ",dim=" + std::to_string(dim) +
                  ",skip=" + std::to_string(skip) + ")";
  return ps;
}

Permutation random_permutation(int n, std::uint64_t seed) {
  if (n < 1) throw invalid_input("random_permutation: n must be >= 1");
  Permutation p;
  p.n = n;
  p.map.resize(static_cast<std::size_t>(n));
  std::iota(p.map.begin(), p.map.end(), 1);
  SplitMix64 rng(seed);
  for (int i = n - 1; i >= 1; --i) {
    auto j = static_cast<std::size_t>(
        rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p.map[static_cast<std::size_t>(i)], p.map[j]);
  }
  return p;
}

std::vector<KroneckerGenerator> enumerate_kronecker_generators(int n) {
  if (n < 2) throw invalid_input("enumerate_kronecker_generators: n must be >= 2");
  std::vector<KroneckerGenerator> out;
  long long a = 0, b = 1, c = 1, d = n;
  double prev = 0.0;
  std::string prev_name = "0/1";
  while (a != 1 || b != 1) {
    double frac_val = static_cast<double>(c) / static_cast<double>(d);
    std::string name = std::to_string(c) + "/" + std::to_string(d);
    KroneckerGenerator mid;
    mid.n = n;
    mid.rational = false;
    mid.r = 0.5 * (prev + frac_val);
    mid.origin = "interval(" + prev_name + "," + name + ")";
    out.push_back(mid);
    out.push_back(KroneckerGenerator::from_rational(n, c, d));
    prev = frac_val;
    prev_name = name;
    long long k = (static_cast<long long>(n) + b) / d;
    long long c2 = k * c - a;
    long long d2 = k * d - b;
    a = c;
    b = d;
    c = c2;
    d = d2;
  }
  return out;
}

std::vector<std::pair<Permutation, KroneckerGenerator>> dedupe_permutations(
    const std::vector<KroneckerGenerator>& gens) {
  std::vector<std::pair<Permutation, KroneckerGenerator>> out;
  std::set<std::vector<int>> seen;
  for (const KroneckerGenerator& g : gens) {
    if (g.n != gens.front().n)
      throw invalid_input("dedupe_permutations: generators must share n");
    Permutation p = extract_permutation(kronecker_lattice(g));
    if (seen.insert(p.map).second) out.emplace_back(std::move(p), g);
  }
  return out;
}

ThreeValueReport three_value_check(const Permutation& p) {
  p.validate();
  if (p.n < 3) throw invalid_input("three_value_check: n must be >= 3");
  int n = p.n;
  ThreeValueReport rep;
  std::set<int> observed;
  for (int i = 1; i < n; ++i) {
    int d = p(i + 1) - p(i);
    int m = ((d % n) + n) % n;
    observed.insert(m);
  }
  rep.observed.assign(observed.begin(), observed.end());
  rep.passes = observed.size() <= 3;
  rep.reference = {p(2), p(2) + 1, n - p(2)};
  rep.matches_literal = true;
  for (int v : rep.observed) {
    if (v != rep.reference[0] && v != rep.reference[1] && v != rep.reference[2])
      rep.matches_literal = false;
  }
  return rep;
}

}  // namespace lowdisc
