#ifndef LQID_QID_HPP
#define LQID_QID_HPP

#include <optional>
#include <utility>
#include <vector>

#include "charfn.hpp"
#include "measures.hpp"

namespace lqid {

/// nu atoms below -kNegAtomTolerance certify QuasiOnly; atoms in
/// [-kNegAtomTolerance, 0) are flagged marginal.
inline constexpr double kNegAtomTolerance = 1e-9;

struct Options {
  double tol = 1e-10;                         // in (0, 1e-6]
  std::uint64_t max_grid_points = kDefaultGridBudget;
  int direction_bound = 4;                    // sup-norm cap for cw directions
  bool signed_directions = false;             // extend directions to {-B..B}^d
};

/// Extracts (k, nu) from the distinguished logarithm: samples phi, unwraps,
/// removes the winding part, and reads the Fourier coefficients of psi~ off
/// an inverse transform, doubling the grid until the boundary-shell
/// coefficients and the reconstruction error fall below tol. Coefficients
/// with |c| < tol/10 are pruned after verification.
/// Throws ZeroFoundError when phi vanishes at a grid point, errc::inconclusive
/// when certification never succeeds within the budget, errc::budget_exceeded
/// when certified but not converged, errc::numerical_fault on violated
/// realness/consistency checks.
QLTriplet quasi_levy(const LatticePmf& p, double tol,
                     std::uint64_t max_grid_points = kDefaultGridBudget);

struct Verdict {
  enum class Kind { InfinitelyDivisible, QuasiOnly, NotQuasi };
  Kind kind = Kind::NotQuasi;
  std::optional<QLTriplet> triplet;  // absent iff NotQuasi

  /// QuasiOnly witness: the most negative nu atom.
  std::optional<std::pair<Index, double>> negative_atom;
  /// NotQuasi witness: grid point where phi vanishes.
  std::vector<double> zero_point;
  double zero_modulus = 0.0;
  int zero_grid_size = 0;

  /// nu atoms with mass in [-kNegAtomTolerance, 0).
  std::vector<Index> marginal_atoms;
};

const char* to_string(Verdict::Kind k);

/// Three-way divisibility verdict; throws errc::inconclusive when the grid
/// budget is exhausted without a decision.
Verdict classify(const LatticePmf& p, const Options& opts = {});

/// Splits v into its positive part and the absolute value of its negative
/// part; supports are disjoint and plus - minus = v.
std::pair<SignedLatticeMeasure, SignedLatticeMeasure> hahn_jordan(const SignedLatticeMeasure& v);

struct CompoundPoissonFactor {
  double rate = 0.0;       // lambda > 0
  LatticePmf jump_law;     // probability measure on Z^d \ {0}
};

struct TruncatedPmf {
  LatticePmf pmf;
  double truncated_mass = 0.0;  // Poisson tail mass dropped before renormalizing
  int max_convolutions = 0;     // m*: highest sigma power kept
};

/// e^{-lambda} sum_{m<=m*} lambda^m sigma^{*m} / m!, with m* the smallest
/// integer whose Poisson(lambda) upper tail is below `tail`; renormalized.
TruncatedPmf compound_poisson_pmf(const CompoundPoissonFactor& f, double tail);

struct Factorization {
  Index drift;
  LatticePmf mu1;
  LatticePmf mu2;
  double rate1 = 0.0;
  double rate2 = 0.0;
  /// max over the grid of |phi_p phi_mu2 - e^{i<k,z>} phi_mu1|.
  double max_residual = 0.0;
  QLTriplet triplet;
};

/// Compound Poisson quotient: nu_1 = nu+ + delta_{e1}, nu_2 = nu- + delta_{e1},
/// mu_i the compound Poisson law with rate nu_i(Z^d) and jumps nu_i/rate.
/// The quotient identity is verified on the grid to within 10*tol.
Factorization factorize(const LatticePmf& p, const Options& opts = {});

}  // namespace lqid

#endif
