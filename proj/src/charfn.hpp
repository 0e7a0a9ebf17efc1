#ifndef LQID_CHARFN_HPP
#define LQID_CHARFN_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "measures.hpp"

namespace lqid {

/// Default cap on the total number of torus grid points (M^d).
inline constexpr std::uint64_t kDefaultGridBudget = 1ull << 20;

/// Modulus below which a grid value counts as an exact zero of phi.
inline constexpr double kZeroModulus = 1e-13;

/// Largest admissible phase step between neighbouring grid points.
inline constexpr double kPhaseStepLimit = 1.5707963267948966;  // pi/2

/// Integrality tolerance for the winding number.
inline constexpr double kWindingIntegralityTol = 1e-6;

/// Complex samples on the regular torus grid {2 pi j / M : j in [0,M)^d}.
/// Layout is row-major with the first axis slowest: the value at
/// (j_1,...,j_d) lives at flat index ((j_1 M + j_2) M + ...) + j_d.
struct TorusGrid {
  int dim = 0;
  int size = 0;  // M, a power of two >= 2
  std::vector<std::complex<double>> values;

  std::size_t flat(const std::vector<int>& j) const;
  std::vector<int> coords(std::size_t flat) const;
  std::vector<double> point(std::size_t flat) const;  // z = 2 pi j / M
  std::size_t total() const noexcept { return values.size(); }
};

std::complex<double> eval_charfn(const LatticePmf& p, const std::vector<double>& z);

/// Batch evaluation of phi on the grid via an aliased transform; agrees with
/// pointwise eval_charfn to ~1e-13.
TorusGrid sample_grid(const LatticePmf& p, int grid_size,
                      std::uint64_t max_points = kDefaultGridBudget);

struct ZeroFreeCertificate {
  double min_modulus = 0.0;
  double lipschitz_bound = 0.0;
  int grid_size = 0;
  /// min_modulus - lipschitz_bound * (pi sqrt(d) / M); the certificate is
  /// valid only when this is positive.
  double margin = 0.0;
};

struct CertificationOutcome {
  enum class Status { Certified, ZeroFound, Inconclusive };
  Status status = Status::Inconclusive;
  ZeroFreeCertificate certificate;
  /// Grid point of minimal modulus (witness for ZeroFound, refinement hint
  /// for Inconclusive).
  std::vector<double> min_point;
};

/// Checks |phi| > L * (pi sqrt(d)/M) over the grid, where L = sum |n|_2 p(n)
/// bounds |grad phi| globally.
CertificationOutcome certify_zero_free(const LatticePmf& p, const TorusGrid& phi);
CertificationOutcome certify_zero_free(const LatticePmf& p, int grid_size,
                                       std::uint64_t max_points = kDefaultGridBudget);

/// Distinguished logarithm on the grid: psi[0] = 0, exp(psi[j]) = phi[j],
/// real part log|phi| exactly, imaginary part unwrapped along axis-aligned
/// paths from the origin (axis 1 first, then axis 2, ...).
/// Throws errc::unwrap_ambiguity when any neighbouring phase step exceeds
/// pi/2 or an off-path edge disagrees with its wrapped step.
TorusGrid distinguished_log(const TorusGrid& phi, const ZeroFreeCertificate& cert);

/// Winding vector of phi around the torus: k_j is the accumulated phase
/// change along the full axis-j grid loop divided by 2 pi. Requires an
/// unwrap-safe grid (steps below pi/2, as established by distinguished_log);
/// integrality and agreement between two parallel loops per axis (d >= 2)
/// are verified.
std::vector<std::int64_t> winding_vector(const TorusGrid& phi);

}  // namespace lqid

#endif
