#include "charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"

namespace lqid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (~0ull) / base) throw Error(errc::budget_exceeded, "grid size overflows");
    r *= base;
  }
  return r;
}

// Wrapped phase increment arg(b/a) in (-pi, pi].
double phase_step(const std::complex<double>& a, const std::complex<double>& b) {
  return std::arg(b * std::conj(a));
}

}  // namespace

std::size_t TorusGrid::flat(const std::vector<int>& j) const {
  std::size_t f = 0;
  for (int axis = 0; axis < dim; ++axis)
    f = f * static_cast<std::size_t>(size) + static_cast<std::size_t>(j[static_cast<std::size_t>(axis)]);
  return f;
}

std::vector<int> TorusGrid::coords(std::size_t flat) const {
  std::vector<int> j(static_cast<std::size_t>(dim));
  for (int axis = dim - 1; axis >= 0; --axis) {
    j[static_cast<std::size_t>(axis)] = static_cast<int>(flat % static_cast<std::size_t>(size));
    flat /= static_cast<std::size_t>(size);
  }
  return j;
}

std::vector<double> TorusGrid::point(std::size_t flat) const {
  std::vector<int> j = coords(flat);
  std::vector<double> z(static_cast<std::size_t>(dim));
  for (int axis = 0; axis < dim; ++axis)
    z[static_cast<std::size_t>(axis)] = kTwoPi * j[static_cast<std::size_t>(axis)] / size;
  return z;
}

std::complex<double> eval_charfn(const LatticePmf& p, const std::vector<double>& z) {
  if (z.size() != static_cast<std::size_t>(p.dim()))
    throw Error(errc::dimension_mismatch, "eval_charfn: point dimension does not match pmf");
  std::complex<double> acc = 0.0;
  for (const auto& [n, mass] : p.atoms()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) phase += static_cast<double>(n[i]) * z[i];
    acc += mass * std::polar(1.0, phase);
  }
  return acc;
}

TorusGrid sample_grid(const LatticePmf& p, int grid_size, std::uint64_t max_points) {
  if (grid_size < 2 || !detail::is_pow2(static_cast<std::uint64_t>(grid_size)))
    throw Error(errc::invalid_argument, "grid size must be a power of two >= 2");
  const int d = p.dim();
  std::uint64_t total = pow_u64(static_cast<std::uint64_t>(grid_size), d);
  if (total > max_points)
    throw Error(errc::budget_exceeded, "grid exceeds the configured point budget");

  TorusGrid g;
  g.dim = d;
  g.size = grid_size;
  g.values.assign(static_cast<std::size_t>(total), 0.0);
  // phi on the grid only sees n mod M, so fold the masses first and let one
  // transform produce all values at once.
  const std::size_t m = static_cast<std::size_t>(grid_size);
  for (const auto& [n, mass] : p.atoms()) {
    std::size_t f = 0;
    for (int axis = 0; axis < d; ++axis) {
      std::int64_t r = n[static_cast<std::size_t>(axis)] % grid_size;
      if (r < 0) r += grid_size;
      f = f * m + static_cast<std::size_t>(r);
    }
    g.values[f] += mass;
  }
  detail::dft_pow2(g.values, d, grid_size, +1);
  return g;
}

CertificationOutcome certify_zero_free(const LatticePmf& p, const TorusGrid& phi) {
  double lipschitz = 0.0;
  for (const auto& [n, mass] : p.atoms()) {
    double norm2 = 0.0;
    for (std::int64_t c : n) norm2 += static_cast<double>(c) * static_cast<double>(c);
    lipschitz += mass * std::sqrt(norm2);
  }

  double min_mod = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    double m = std::abs(phi.values[i]);
    if (m < min_mod) {
      min_mod = m;
      argmin = i;
    }
  }

  CertificationOutcome out;
  out.min_point = phi.point(argmin);
  double half_cell = std::numbers::pi * std::sqrt(static_cast<double>(phi.dim)) / phi.size;
  out.certificate = ZeroFreeCertificate{min_mod, lipschitz, phi.size,
                                        min_mod - lipschitz * half_cell};
  if (min_mod < kZeroModulus) {
    out.status = CertificationOutcome::Status::ZeroFound;
  } else if (out.certificate.margin > 0.0) {
    out.status = CertificationOutcome::Status::Certified;
  } else {
    out.status = CertificationOutcome::Status::Inconclusive;
  }
  return out;
}

CertificationOutcome certify_zero_free(const LatticePmf& p, int grid_size,
                                       std::uint64_t max_points) {
  return certify_zero_free(p, sample_grid(p, grid_size, max_points));
}

TorusGrid distinguished_log(const TorusGrid& phi, const ZeroFreeCertificate& cert) {
  if (cert.grid_size != phi.size || !(cert.margin > 0.0))
    throw Error(errc::invalid_argument,
                "distinguished_log requires a valid certificate for this grid");
  const int d = phi.dim;
  const int m = phi.size;
  const std::size_t n = phi.values.size();

  TorusGrid psi;
  psi.dim = d;
  psi.size = m;
  psi.values.assign(n, 0.0);

  // Axis strides in the row-major layout.
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  {
    std::size_t s = n / static_cast<std::size_t>(m);
    for (int axis = 0; axis < d; ++axis) {
      stride[static_cast<std::size_t>(axis)] = s;
      s /= static_cast<std::size_t>(m);
    }
  }

  // Unwrap tree: the predecessor of j decrements its last nonzero coordinate,
  // which walks axis 1 first, then axis 2, ... back to the origin.
  std::vector<double> arg_unwrapped(n, 0.0);
  std::vector<int> j(static_cast<std::size_t>(d), 0);
  for (std::size_t f = 0; f < n; ++f) {
    if (f != 0) {
      int last = d - 1;
      while (j[static_cast<std::size_t>(last)] == 0) --last;
      std::size_t pred = f - stride[static_cast<std::size_t>(last)];
      double step = phase_step(phi.values[pred], phi.values[f]);
      if (std::abs(step) > kPhaseStepLimit)
        throw Error(errc::unwrap_ambiguity,
                    "phase step above pi/2 between neighbouring grid points; refine the grid");
      arg_unwrapped[f] = arg_unwrapped[pred] + step;
    }
    psi.values[f] = std::complex<double>(std::log(std::abs(phi.values[f])), arg_unwrapped[f]);
    // advance mixed-radix counter
    for (int axis = d - 1; axis >= 0; --axis) {
      if (++j[static_cast<std::size_t>(axis)] < m) break;
      j[static_cast<std::size_t>(axis)] = 0;
    }
  }

  // Every off-tree edge must reproduce its wrapped step; a 2 pi mismatch
  // means the branch choice is grid-dependent. Wrap-around steps must also
  // stay below pi/2 so the winding loops are unambiguous.
  std::fill(j.begin(), j.end(), 0);
  for (std::size_t f = 0; f < n; ++f) {
    for (int axis = 0; axis < d; ++axis) {
      const std::size_t s = stride[static_cast<std::size_t>(axis)];
      if (j[static_cast<std::size_t>(axis)] + 1 < m) {
        std::size_t g = f + s;
        double step = phase_step(phi.values[f], phi.values[g]);
        if (std::abs(step) > kPhaseStepLimit ||
            std::abs((arg_unwrapped[g] - arg_unwrapped[f]) - step) > 1e-6)
          throw Error(errc::unwrap_ambiguity,
                      "inconsistent phase unwrapping across an off-path edge; refine the grid");
      } else {
        std::size_t g = f - s * static_cast<std::size_t>(m - 1);
        if (std::abs(phase_step(phi.values[f], phi.values[g])) > kPhaseStepLimit)
          throw Error(errc::unwrap_ambiguity,
                      "phase step above pi/2 across the wrap-around; refine the grid");
      }
    }
    for (int axis = d - 1; axis >= 0; --axis) {
      if (++j[static_cast<std::size_t>(axis)] < m) break;
      j[static_cast<std::size_t>(axis)] = 0;
    }
  }

  return psi;
}

namespace {

// Accumulated wrapped phase over the closed axis loop starting at base.
double loop_phase(const TorusGrid& phi, std::size_t base, std::size_t stride, int m) {
  double total = 0.0;
  for (int t = 0; t < m; ++t) {
    std::size_t cur = base + stride * static_cast<std::size_t>(t);
    std::size_t nxt = (t + 1 < m) ? cur + stride : base;
    double step = std::arg(phi.values[nxt] * std::conj(phi.values[cur]));
    if (std::abs(step) > kPhaseStepLimit)
      throw Error(errc::unwrap_ambiguity,
                  "phase step above pi/2 on a winding loop; refine the grid");
    total += step;
  }
  return total;
}

std::int64_t integral_winding(double total) {
  double k = total / kTwoPi;
  double r = std::round(k);
  if (std::abs(k - r) > kWindingIntegralityTol)
    throw Error(errc::numerical_fault,
                "winding number is not integral; refine the grid");
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::vector<std::int64_t> winding_vector(const TorusGrid& phi) {
  const int d = phi.dim;
  const int m = phi.size;
  std::vector<std::int64_t> k(static_cast<std::size_t>(d));
  std::size_t stride = phi.values.size() / static_cast<std::size_t>(m);
  for (int axis = 0; axis < d; ++axis) {
    std::int64_t k0 = integral_winding(loop_phase(phi, 0, stride, m));
    if (d >= 2) {
      // A parallel loop displaced along another axis must agree exactly.
      int other = (axis == 0) ? 1 : 0;
      std::size_t other_stride = phi.values.size() / static_cast<std::size_t>(m);
      for (int a = 0; a < other; ++a) other_stride /= static_cast<std::size_t>(m);
      std::size_t base = other_stride * static_cast<std::size_t>(m / 2);
      std::int64_t k1 = integral_winding(loop_phase(phi, base, stride, m));
      if (k1 != k0)
        throw Error(errc::numerical_fault,
                    "winding number differs between parallel loops; refine the grid");
    }
    k[static_cast<std::size_t>(axis)] = k0;
    stride /= static_cast<std::size_t>(m);
  }
  return k;
}

}  // namespace lqid
