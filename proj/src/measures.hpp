#ifndef LQID_MEASURES_HPP
#define LQID_MEASURES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "error.hpp"

namespace lqid {

/// A lattice point in Z^d.
using Index = std::vector<std::int64_t>;

/// Tolerance on |total mass - 1| accepted at LatticePmf construction.
inline constexpr double kMassTolerance = 1e-12;

/// Finitely supported probability mass function on Z^d. Atoms are kept in a
/// lexicographically ordered map, so equality and serialization are
/// deterministic. Immutable after construction.
class LatticePmf {
public:
  LatticePmf(int dim, std::map<Index, double> atoms);

  static LatticePmf dirac(Index n);

  int dim() const noexcept { return dim_; }
  const std::map<Index, double>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Mass at n; 0 when n is not an atom.
  double at(const Index& n) const;

  /// Largest sup-norm over the support.
  std::int64_t support_radius() const;

private:
  int dim_;
  std::map<Index, double> atoms_;
};

/// Finite signed measure on Z^d \ {0}. Atoms with exactly zero mass are
/// dropped at construction; an atom at the origin is rejected.
class SignedLatticeMeasure {
public:
  /// The zero measure on Z \ {0}.
  SignedLatticeMeasure() : dim_(1) {}
  SignedLatticeMeasure(int dim, std::map<Index, double> atoms);

  static SignedLatticeMeasure zero(int dim);

  int dim() const noexcept { return dim_; }
  const std::map<Index, double>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double at(const Index& n) const;

  /// Sum of |mass| over atoms.
  double total_variation() const;
  /// Signed total mass nu(Z^d \ {0}).
  double total_mass() const;
  /// Smallest atom mass (0 for the zero measure).
  double min_mass() const;

private:
  int dim_;
  std::map<Index, double> atoms_;
};

/// Quasi-Levy pair (k, nu) with the numerical quality metadata of the run
/// that produced it.
struct QLTriplet {
  Index drift;
  SignedLatticeMeasure nu;
  double max_imag_residual = 0.0;
  double reconstruction_error = 0.0;
  double tail_mass = 0.0;
  int grid_size = 0;
};

LatticePmf convolve(const LatticePmf& p, const LatticePmf& q);

/// Pushforward of p under n -> a^T n (exact integer inner products).
LatticePmf project(const LatticePmf& p, const Index& a);

/// Pushforward of a signed measure under n -> a^T n; mass landing at 0 is
/// dropped.
SignedLatticeMeasure pushforward_signed(const SignedLatticeMeasure& v, const Index& a);

LatticePmf shift(const LatticePmf& p, const Index& m);

/// Independent product: atom at (n, m) carries p(n) * q(m); dim adds.
LatticePmf product(const LatticePmf& p, const LatticePmf& q);

/// Image of p under n -> A n + v for an integer matrix A (row-major, d x d)
/// with nonzero determinant.
LatticePmf affine(const LatticePmf& p, const std::vector<std::int64_t>& matrix_row_major,
                  const Index& v);

SignedLatticeMeasure add(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b);
SignedLatticeMeasure scale(const SignedLatticeMeasure& v, double s);

}  // namespace lqid

#endif
