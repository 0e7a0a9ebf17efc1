#include "generators.hpp"

#include <cmath>
#include <random>
#include <set>

#include "json_io.hpp"

namespace lqid {

namespace {

void validate_tail(double tail) {
  if (!(tail > 0.0) || tail > 1e-6)
    throw Error(errc::invalid_argument, "tail must lie in (0, 1e-6]");
}

}  // namespace

GeneratedPmf generate_poisson(double lambda, double tail) {
  if (!(lambda > 0.0)) throw Error(errc::invalid_argument, "lambda must be positive");
  validate_tail(tail);

  std::vector<long double> term{std::exp(static_cast<long double>(-lambda))};
  while (true) {
    std::size_t m = term.size();
    long double t = term.back() * lambda / static_cast<long double>(m);
    term.push_back(t);
    if (static_cast<long double>(m) > 2.0L * lambda + 4.0L && 2.0L * t < tail * 1e-3L) break;
  }
  std::vector<long double> suffix(term.size() + 1, 0.0L);
  for (std::size_t i = term.size(); i-- > 0;) suffix[i] = suffix[i + 1] + term[i];
  std::size_t m_star = 0;
  while (suffix[m_star + 1] >= static_cast<long double>(tail)) ++m_star;

  long double kept = suffix[0] - suffix[m_star + 1];
  std::map<Index, double> atoms;
  for (std::size_t n = 0; n <= m_star; ++n)
    atoms.emplace(Index{static_cast<std::int64_t>(n)}, static_cast<double>(term[n] / kept));

  GeneratedPmf g{LatticePmf(1, std::move(atoms)), {}};
  g.meta = {{"family", "poisson"},
            {"lambda", lambda},
            {"tail", tail},
            {"truncated_mass", static_cast<double>(suffix[m_star + 1])},
            {"max_point", m_star}};
  return g;
}

GeneratedPmf generate_geometric(double ratio, double tail) {
  if (!(ratio > 0.0) || !(ratio < 1.0))
    throw Error(errc::invalid_argument, "ratio must lie in (0, 1)");
  validate_tail(tail);

  // smallest N with tail ratio^{N+1} < tail
  std::size_t top = 0;
  long double t = ratio;  // ratio^{top+1}
  while (t >= static_cast<long double>(tail)) {
    ++top;
    t *= ratio;
  }
  long double kept = 1.0L - t;
  std::map<Index, double> atoms;
  long double mass = 1.0L - static_cast<long double>(ratio);
  for (std::size_t n = 0; n <= top; ++n) {
    atoms.emplace(Index{static_cast<std::int64_t>(n)}, static_cast<double>(mass / kept));
    mass *= ratio;
  }
  GeneratedPmf g{LatticePmf(1, std::move(atoms)), {}};
  g.meta = {{"family", "geometric"},
            {"ratio", ratio},
            {"tail", tail},
            {"truncated_mass", static_cast<double>(t)},
            {"max_point", top}};
  return g;
}

GeneratedPmf generate_bernoulli(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw Error(errc::invalid_argument, "bernoulli parameter must lie in (0, 1)");
  std::map<Index, double> atoms{{Index{0}, 1.0 - p}, {Index{1}, p}};
  GeneratedPmf g{LatticePmf(1, std::move(atoms)), {}};
  g.meta = {{"family", "bernoulli"}, {"p", p}};
  return g;
}

GeneratedPmf generate_dirac(Index n) {
  GeneratedPmf g{LatticePmf::dirac(n), {}};
  g.meta = {{"family", "dirac"}};
  return g;
}

GeneratedPmf generate_random(int dim, int radius, int atoms, double origin_mass,
                             std::uint64_t seed) {
  if (dim < 1) throw Error(errc::invalid_argument, "dim must be >= 1");
  if (radius < 1) throw Error(errc::invalid_argument, "radius must be >= 1");
  if (atoms < 1) throw Error(errc::invalid_argument, "atoms must be >= 1");
  if (!(origin_mass > 0.0) || !(origin_mass < 1.0))
    throw Error(errc::invalid_argument, "origin mass must lie in (0, 1)");
  double ball = std::pow(2.0 * radius + 1.0, dim) - 1.0;
  if (static_cast<double>(atoms) > ball)
    throw Error(errc::invalid_argument, "more atoms than lattice points in the ball");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  std::uniform_real_distribution<double> unit(0.1, 1.0);

  const Index origin(static_cast<std::size_t>(dim), 0);
  std::set<Index> points;
  while (static_cast<int>(points.size()) < atoms) {
    Index n(static_cast<std::size_t>(dim));
    for (auto& c : n) c = coord(rng);
    if (n != origin) points.insert(std::move(n));
  }
  std::map<Index, double> raw;
  double total = 0.0;
  for (const Index& n : points) {
    double w = unit(rng);
    total += w;
    raw.emplace(n, w);
  }
  std::map<Index, double> out;
  out.emplace(origin, origin_mass);
  for (const auto& [n, w] : raw) out.emplace(n, (1.0 - origin_mass) * w / total);

  GeneratedPmf g{LatticePmf(dim, std::move(out)), {}};
  g.meta = {{"family", "random"}, {"dim", dim},        {"radius", radius},
            {"atoms", atoms},     {"origin_mass", origin_mass}, {"seed", seed}};
  return g;
}

nlohmann::json generated_to_json(const GeneratedPmf& g) {
  nlohmann::json j = to_json(g.pmf);
  j["meta"] = g.meta;
  return j;
}

}  // namespace lqid
