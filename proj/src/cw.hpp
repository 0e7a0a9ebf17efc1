#ifndef LQID_CW_HPP
#define LQID_CW_HPP

#include <optional>
#include <vector>

#include "oned.hpp"
#include "qid.hpp"

namespace lqid {

/// Finite truncation of the N_0^d direction family: gcd-reduced nonzero
/// vectors with sup-norm at most `bound`, lexicographically sorted. With
/// signed_directions, vectors range over {-B..B}^d with the first nonzero
/// entry positive.
struct DirectionFamily {
  int dim = 0;
  int bound = 0;
  bool signed_directions = false;
  std::vector<Index> directions;
};

DirectionFamily enumerate_directions(int dim, int bound, bool signed_directions = false);

struct DirectionRecord {
  Index direction;
  std::size_t projected_support = 0;

  bool katti_pass = false;
  double katti_min = 0.0;                       // smallest q_n seen
  std::optional<std::size_t> katti_witness;     // first n with q_n < -neg_tol

  enum class Quasi { InfinitelyDivisible, QuasiOnly, NotQuasi, Inconclusive };
  Quasi quasi = Quasi::Inconclusive;
  std::optional<std::pair<std::int64_t, double>> quasi_witness;  // negative 1-D atom
};

const char* to_string(DirectionRecord::Quasi q);

struct CWReport {
  int bound = 0;
  bool signed_directions = false;
  std::vector<DirectionRecord> records;

  enum class Aggregate { AllPass, FailAt };
  Aggregate aggregate = Aggregate::AllPass;
  std::optional<Index> fail_at;  // first failing direction in canonical order

  Verdict direct;
  bool consistent = false;
};

/// Projects p along every direction of the family, tests each projection for
/// 1-D infinite divisibility (Katti recursion on the shifted projection plus
/// the 1-D quasi-Levy pipeline), aggregates, and cross-checks against the
/// direct verdict of `classify`. Throws errc::inconclusive when no direction
/// fails but some projection could not be certified.
CWReport cw_test(const LatticePmf& p, const Options& opts = {});

}  // namespace lqid

#endif
