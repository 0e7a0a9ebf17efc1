#ifndef LQID_GENERATORS_HPP
#define LQID_GENERATORS_HPP

#include <cstdint>

#include "json.hpp"

#include "measures.hpp"

namespace lqid {

struct GeneratedPmf {
  LatticePmf pmf;
  nlohmann::json meta;  // generator family, parameters, recorded truncation
};

/// Poisson(lambda) truncated at the smallest m with upper tail below `tail`,
/// then renormalized.
GeneratedPmf generate_poisson(double lambda, double tail);

/// Geometric p_n = (1-ratio) ratio^n, truncated once the tail ratio^{N+1}
/// drops below `tail`, then renormalized.
GeneratedPmf generate_geometric(double ratio, double tail);

GeneratedPmf generate_bernoulli(double p);

GeneratedPmf generate_dirac(Index n);

/// Deterministic random fixture: `atoms` distinct nonzero points in the
/// sup-norm ball of the given radius, `origin_mass` at 0, remaining mass
/// spread uniformly at random.
GeneratedPmf generate_random(int dim, int radius, int atoms, double origin_mass,
                             std::uint64_t seed);

nlohmann::json generated_to_json(const GeneratedPmf& g);

}  // namespace lqid

#endif
