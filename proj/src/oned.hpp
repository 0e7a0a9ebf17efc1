#ifndef LQID_ONED_HPP
#define LQID_ONED_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "measures.hpp"

namespace lqid {

/// Mass at zero below which the log-pgf recursions are refused as
/// ill-conditioned.
inline constexpr double kMinMassAtZero = 1e-8;

/// Tolerance on the cross-axis residual of formal_log_series.
inline constexpr double kAxisConsistencyTol = 1e-10;

/// Katti degree bound: 4x the maximal support point, capped at 512.
inline constexpr int kKattiDegreeCap = 512;

/// Coefficients q_n, n = 1..degree, of log P(s) = c_0 + sum q_n s^n for the
/// probability generating function P of an N_0-valued pmf. The law is
/// infinitely divisible iff all q_n >= 0 (Katti's criterion).
struct KattiSequence {
  std::vector<double> q;  // q[i] holds q_{i+1}
  std::optional<std::size_t> first_negative;  // 1-based index of first q_n < 0

  double at(std::size_t n) const { return (n >= 1 && n <= q.size()) ? q[n - 1] : 0.0; }
};

int default_katti_degree(const LatticePmf& p);

/// Forward recursion n p_n = sum_{k=1..n} k q_k p_{n-k}, requires p_0 > 0
/// (refused below kMinMassAtZero).
KattiSequence katti(const LatticePmf& p, int degree);

struct LogConvexity {
  enum class Status { Holds, Fails, VacuouslyTrue, NotApplicable };
  Status status = Status::NotApplicable;
  bool value = false;  // the boolean answer; NotApplicable reports false
  std::size_t violation_index = 0;  // n with p_{n-1} p_{n+1} < p_n^2 when Fails
};

/// Sufficient condition: p_{n-1} p_{n+1} >= p_n^2 over a contiguous support
/// {0,...,N}. Non-contiguous or shifted supports are reported NotApplicable;
/// supports without interior points are vacuously true.
LogConvexity log_convex(const LatticePmf& p);

struct FormalLogSeries {
  SignedLatticeMeasure coefficients;
  double axis_residual = 0.0;
};

/// Formal multivariate log of the pgf inside a per-axis degree box: for each
/// axis, (d_j P)/P by coefficient-wise division, integrated coefficient-wise;
/// candidates from different axes must agree within kAxisConsistencyTol.
/// Requires support in N_0^d, p(0) > 0, and a box covering the support.
FormalLogSeries formal_log_series(const LatticePmf& p, const std::vector<int>& box);

}  // namespace lqid

#endif
