#ifndef LQID_TEST_UTIL_HPP
#define LQID_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "measures.hpp"

namespace lqid::test {

inline LatticePmf make_pmf(int dim, std::initializer_list<std::pair<Index, double>> atoms) {
  std::map<Index, double> m;
  for (const auto& [n, mass] : atoms) m.emplace(n, mass);
  return LatticePmf(dim, std::move(m));
}

inline LatticePmf bernoulli(double p) {
  return make_pmf(1, {{Index{0}, 1.0 - p}, {Index{1}, p}});
}

inline SignedLatticeMeasure make_signed(int dim,
                                        std::initializer_list<std::pair<Index, double>> atoms) {
  std::map<Index, double> m;
  for (const auto& [n, mass] : atoms) m.emplace(n, mass);
  return SignedLatticeMeasure(dim, std::move(m));
}

/// Mercator oracle: log(1 + r w) = sum_{n>=1} (-1)^{n+1} r^n w^n / n, so
/// Bernoulli(p) with q = 1-p has nu({n}) = (-1)^{n+1} (p/q)^n / n.
inline double mercator_atom(double ratio, int n) {
  return (n % 2 == 1 ? 1.0 : -1.0) * std::pow(ratio, n) / n;
}

/// Max absolute difference over the union of supports.
inline double measure_distance(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
  double d = 0.0;
  for (const auto& [n, mass] : a.atoms()) d = std::max(d, std::abs(mass - b.at(n)));
  for (const auto& [n, mass] : b.atoms()) d = std::max(d, std::abs(mass - a.at(n)));
  return d;
}

inline double pmf_distance(const LatticePmf& a, const LatticePmf& b) {
  double d = 0.0;
  for (const auto& [n, mass] : a.atoms()) d = std::max(d, std::abs(mass - b.at(n)));
  for (const auto& [n, mass] : b.atoms()) d = std::max(d, std::abs(mass - a.at(n)));
  return d;
}

/// Random pmf with p(n) <= 0.8 h(n) 3^{-|n|_inf} off the origin (sum h = 1),
/// so p(0) >= 1 - 0.8/3 > 0.73. The pgf is then zero-free on a closed
/// polydisc/annulus containing the torus, hence phi is zero-free with
/// winding 0 and the log coefficients decay geometrically.
inline LatticePmf random_origin_dominant(std::mt19937_64& rng, int dim, int radius,
                                         int max_atoms, bool nonnegative_support = true) {
  std::uniform_int_distribution<std::int64_t> coord(nonnegative_support ? 0 : -radius, radius);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::uniform_int_distribution<int> natoms(1, max_atoms);

  const Index origin(static_cast<std::size_t>(dim), 0);
  std::map<Index, double> weight;
  const int want = natoms(rng);
  int guard = 0;
  while (static_cast<int>(weight.size()) < want && ++guard < 10000) {
    Index n(static_cast<std::size_t>(dim));
    for (auto& c : n) c = coord(rng);
    if (n != origin) weight.emplace(std::move(n), unit(rng));
  }

  double total_weight = 0.0;
  for (const auto& [n, w] : weight) {
    (void)n;
    total_weight += w;
  }
  std::map<Index, double> atoms;
  double off_origin = 0.0;
  for (const auto& [n, w] : weight) {
    std::int64_t sup = 0;
    for (std::int64_t c : n) sup = std::max(sup, std::abs(c));
    double mass = 0.8 * (w / total_weight) * std::pow(3.0, -static_cast<double>(sup));
    atoms.emplace(n, mass);
    off_origin += mass;
  }
  atoms.emplace(origin, 1.0 - off_origin);
  return LatticePmf(dim, std::move(atoms));
}

inline Index random_shift(std::mt19937_64& rng, int dim, int radius) {
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  Index m(static_cast<std::size_t>(dim));
  for (auto& c : m) c = coord(rng);
  return m;
}

}  // namespace lqid::test

#endif
