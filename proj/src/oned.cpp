#include "oned.hpp"

#include <algorithm>
#include <cmath>

namespace lqid {

namespace {

// Dense nonnegative-support view of a 1-D pmf on {0..max}.
std::vector<double> dense_1d(const LatticePmf& p) {
  if (p.dim() != 1)
    throw Error(errc::dimension_mismatch, "expected a one-dimensional pmf");
  std::int64_t maxn = 0;
  for (const auto& [n, mass] : p.atoms()) {
    (void)mass;
    if (n[0] < 0)
      throw Error(errc::invalid_argument, "pmf must be supported in N_0");
    maxn = std::max(maxn, n[0]);
  }
  std::vector<double> dense(static_cast<std::size_t>(maxn) + 1, 0.0);
  for (const auto& [n, mass] : p.atoms()) dense[static_cast<std::size_t>(n[0])] = mass;
  return dense;
}

}  // namespace

int default_katti_degree(const LatticePmf& p) {
  std::int64_t maxn = 0;
  for (const auto& [n, mass] : p.atoms()) {
    (void)mass;
    maxn = std::max(maxn, n[0]);
  }
  return std::max(1, static_cast<int>(std::min<std::int64_t>(kKattiDegreeCap, 4 * maxn)));
}

KattiSequence katti(const LatticePmf& p, int degree) {
  if (degree < 1) throw Error(errc::invalid_argument, "katti: degree must be >= 1");
  std::vector<double> pn = dense_1d(p);
  if (pn[0] < kMinMassAtZero)
    throw Error(errc::invalid_argument,
                "katti: mass at zero below 1e-8, recursion ill-conditioned; shift the pmf first");

  KattiSequence out;
  out.q.assign(static_cast<std::size_t>(degree), 0.0);
  auto p_at = [&](std::size_t i) { return i < pn.size() ? pn[i] : 0.0; };
  for (std::size_t n = 1; n <= static_cast<std::size_t>(degree); ++n) {
    double acc = static_cast<double>(n) * p_at(n);
    for (std::size_t k = 1; k < n; ++k)
      acc -= static_cast<double>(k) * out.q[k - 1] * p_at(n - k);
    out.q[n - 1] = acc / (static_cast<double>(n) * pn[0]);
    if (!out.first_negative && out.q[n - 1] < 0.0) out.first_negative = n;
  }
  return out;
}

LogConvexity log_convex(const LatticePmf& p) {
  if (p.dim() != 1)
    throw Error(errc::dimension_mismatch, "log_convex: expected a one-dimensional pmf");
  LogConvexity out;
  std::int64_t minn = p.atoms().begin()->first[0];
  std::int64_t maxn = p.atoms().rbegin()->first[0];
  if (minn != 0 || static_cast<std::int64_t>(p.size()) != maxn + 1) {
    out.status = LogConvexity::Status::NotApplicable;
    out.value = false;
    return out;
  }
  if (maxn <= 1) {
    out.status = LogConvexity::Status::VacuouslyTrue;
    out.value = true;
    return out;
  }
  std::vector<double> dense = dense_1d(p);
  for (std::size_t n = 1; n + 1 < dense.size(); ++n) {
    if (dense[n - 1] * dense[n + 1] < dense[n] * dense[n]) {
      out.status = LogConvexity::Status::Fails;
      out.value = false;
      out.violation_index = n;
      return out;
    }
  }
  out.status = LogConvexity::Status::Holds;
  out.value = true;
  return out;
}

namespace {

struct Box {
  std::vector<int> extent;  // per-axis degree bound, inclusive
  std::vector<std::size_t> stride;
  std::size_t volume = 1;

  explicit Box(const std::vector<int>& box) : extent(box) {
    stride.assign(box.size(), 1);
    for (int i = static_cast<int>(box.size()) - 1; i >= 0; --i) {
      stride[static_cast<std::size_t>(i)] = volume;
      volume *= static_cast<std::size_t>(box[static_cast<std::size_t>(i)] + 1);
    }
  }

  std::size_t flat(const Index& n) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < extent.size(); ++i)
      f += stride[i] * static_cast<std::size_t>(n[i]);
    return f;
  }
};

}  // namespace

FormalLogSeries formal_log_series(const LatticePmf& p, const std::vector<int>& box) {
  const int d = p.dim();
  if (static_cast<int>(box.size()) != d)
    throw Error(errc::dimension_mismatch, "formal_log_series: box dimension does not match pmf");
  for (int b : box)
    if (b < 1) throw Error(errc::invalid_argument, "formal_log_series: box entries must be >= 1");

  const Index origin(static_cast<std::size_t>(d), 0);
  for (const auto& [n, mass] : p.atoms()) {
    (void)mass;
    for (int axis = 0; axis < d; ++axis) {
      std::int64_t c = n[static_cast<std::size_t>(axis)];
      if (c < 0) throw Error(errc::invalid_argument, "formal_log_series: support must lie in N_0^d");
      if (c > box[static_cast<std::size_t>(axis)])
        throw Error(errc::invalid_argument, "formal_log_series: box does not cover the support");
    }
  }
  const double p0 = p.at(origin);
  if (p0 < kMinMassAtZero)
    throw Error(errc::invalid_argument,
                "formal_log_series: mass at the origin below 1e-8, division ill-conditioned");

  Box bx(box);
  if (bx.volume > (1ull << 22))
    throw Error(errc::budget_exceeded, "formal_log_series: degree box too large");

  // One derivative/division pass per axis; Q_j = (d_j P) / P inside the box.
  std::vector<std::vector<double>> quotients;
  quotients.reserve(static_cast<std::size_t>(d));
  for (int axis = 0; axis < d; ++axis) {
    std::vector<double> deriv(bx.volume, 0.0);
    for (const auto& [n, mass] : p.atoms()) {
      std::int64_t c = n[static_cast<std::size_t>(axis)];
      if (c < 1) continue;
      Index m = n;
      m[static_cast<std::size_t>(axis)] -= 1;
      deriv[bx.flat(m)] = static_cast<double>(c) * mass;
    }
    std::vector<double> q(bx.volume, 0.0);
    // Lexicographic sweep: every subtrahend index n - m precedes n.
    Index n(static_cast<std::size_t>(d), 0);
    for (std::size_t f = 0; f < bx.volume; ++f) {
      double acc = deriv[f];
      for (const auto& [m, mass] : p.atoms()) {
        if (m == origin) continue;
        bool inside = true;
        std::size_t g = f;
        for (int axis2 = 0; axis2 < d && inside; ++axis2) {
          std::int64_t c = n[static_cast<std::size_t>(axis2)] - m[static_cast<std::size_t>(axis2)];
          if (c < 0) inside = false;
          else g -= bx.stride[static_cast<std::size_t>(axis2)] * static_cast<std::size_t>(m[static_cast<std::size_t>(axis2)]);
        }
        if (inside) acc -= mass * q[g];
      }
      q[f] = acc / p0;
      for (int axis2 = d - 1; axis2 >= 0; --axis2) {
        if (++n[static_cast<std::size_t>(axis2)] <= box[static_cast<std::size_t>(axis2)]) break;
        n[static_cast<std::size_t>(axis2)] = 0;
      }
    }
    quotients.push_back(std::move(q));
  }

  // Integrate along each applicable axis and reconcile.
  std::map<Index, double> coeffs;
  double residual = 0.0;
  Index n(static_cast<std::size_t>(d), 0);
  for (std::size_t f = 0; f < bx.volume; ++f) {
    bool is_origin = true;
    for (std::int64_t c : n)
      if (c != 0) { is_origin = false; break; }
    if (!is_origin) {
      double chosen = 0.0;
      bool have = false;
      for (int axis = 0; axis < d; ++axis) {
        std::int64_t c = n[static_cast<std::size_t>(axis)];
        if (c < 1) continue;
        double candidate =
            quotients[static_cast<std::size_t>(axis)]
                     [f - bx.stride[static_cast<std::size_t>(axis)]] /
            static_cast<double>(c);
        if (!have) {
          chosen = candidate;
          have = true;
        } else {
          residual = std::max(residual, std::abs(candidate - chosen));
        }
      }
      if (chosen != 0.0) coeffs.emplace(n, chosen);
    }
    for (int axis2 = d - 1; axis2 >= 0; --axis2) {
      if (++n[static_cast<std::size_t>(axis2)] <= box[static_cast<std::size_t>(axis2)]) break;
      n[static_cast<std::size_t>(axis2)] = 0;
    }
  }
  if (residual > kAxisConsistencyTol)
    throw Error(errc::numerical_fault,
                "formal_log_series: axis consistency residual above 1e-10; enlarge the box");
  return FormalLogSeries{SignedLatticeMeasure(d, std::move(coeffs)), residual};
}

}  // namespace lqid
