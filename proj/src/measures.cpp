#include "measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lqid {

namespace {

void check_dim(int dim) {
  if (dim < 1) throw Error(errc::invalid_argument, "dimension must be positive");
}

void check_key_dims(int dim, const std::map<Index, double>& atoms) {
  for (const auto& [n, mass] : atoms) {
    (void)mass;
    if (static_cast<int>(n.size()) != dim)
      throw Error(errc::dimension_mismatch, "atom key dimension does not match dim");
  }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(errc::invalid_argument, "integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(errc::invalid_argument, "integer overflow in lattice arithmetic");
  return r;
}

std::int64_t dot(const Index& a, const Index& n) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = checked_add(acc, checked_mul(a[i], n[i]));
  return acc;
}

}  // namespace

LatticePmf::LatticePmf(int dim, std::map<Index, double> atoms)
    : dim_(dim), atoms_(std::move(atoms)) {
  check_dim(dim_);
  check_key_dims(dim_, atoms_);
  if (atoms_.empty()) throw Error(errc::invalid_argument, "pmf must have at least one atom");
  double total = 0.0;
  for (const auto& [n, mass] : atoms_) {
    (void)n;
    if (!(mass > 0.0))
      throw Error(errc::invalid_argument, "atom masses must be strictly positive");
    total += mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw Error(errc::not_normalized,
                "atom masses sum to " + std::to_string(total) + ", expected 1");
}

LatticePmf LatticePmf::dirac(Index n) {
  std::map<Index, double> atoms;
  int dim = static_cast<int>(n.size());
  atoms.emplace(std::move(n), 1.0);
  return LatticePmf(dim, std::move(atoms));
}

double LatticePmf::at(const Index& n) const {
  auto it = atoms_.find(n);
  return it == atoms_.end() ? 0.0 : it->second;
}

std::int64_t LatticePmf::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [n, mass] : atoms_) {
    (void)mass;
    for (std::int64_t c : n) r = std::max(r, std::abs(c));
  }
  return r;
}

SignedLatticeMeasure::SignedLatticeMeasure(int dim, std::map<Index, double> atoms)
    : dim_(dim) {
  check_dim(dim_);
  check_key_dims(dim_, atoms);
  const Index origin(static_cast<std::size_t>(dim_), 0);
  for (auto& [n, mass] : atoms) {
    if (mass == 0.0) continue;
    if (n == origin)
      throw Error(errc::invalid_argument, "signed lattice measure may not charge the origin");
    atoms_.emplace(n, mass);
  }
}

SignedLatticeMeasure SignedLatticeMeasure::zero(int dim) {
  return SignedLatticeMeasure(dim, {});
}

double SignedLatticeMeasure::at(const Index& n) const {
  auto it = atoms_.find(n);
  return it == atoms_.end() ? 0.0 : it->second;
}

double SignedLatticeMeasure::total_variation() const {
  double tv = 0.0;
  for (const auto& [n, mass] : atoms_) {
    (void)n;
    tv += std::abs(mass);
  }
  return tv;
}

double SignedLatticeMeasure::total_mass() const {
  double t = 0.0;
  for (const auto& [n, mass] : atoms_) {
    (void)n;
    t += mass;
  }
  return t;
}

double SignedLatticeMeasure::min_mass() const {
  double m = 0.0;
  for (const auto& [n, mass] : atoms_) {
    (void)n;
    m = std::min(m, mass);
  }
  return m;
}

LatticePmf convolve(const LatticePmf& p, const LatticePmf& q) {
  if (p.dim() != q.dim())
    throw Error(errc::dimension_mismatch, "convolve: operand dimensions differ");
  std::map<Index, double> out;
  for (const auto& [n, pn] : p.atoms()) {
    for (const auto& [m, qm] : q.atoms()) {
      Index s(n.size());
      for (std::size_t i = 0; i < n.size(); ++i) s[i] = checked_add(n[i], m[i]);
      out[s] += pn * qm;
    }
  }
  return LatticePmf(p.dim(), std::move(out));
}

LatticePmf project(const LatticePmf& p, const Index& a) {
  if (static_cast<int>(a.size()) != p.dim())
    throw Error(errc::dimension_mismatch, "project: direction dimension does not match pmf");
  std::map<Index, double> out;
  for (const auto& [n, mass] : p.atoms()) out[Index{dot(a, n)}] += mass;
  return LatticePmf(1, std::move(out));
}

SignedLatticeMeasure pushforward_signed(const SignedLatticeMeasure& v, const Index& a) {
  if (static_cast<int>(a.size()) != v.dim())
    throw Error(errc::dimension_mismatch, "pushforward: direction dimension does not match");
  std::map<Index, double> out;
  for (const auto& [n, mass] : v.atoms()) {
    std::int64_t m = dot(a, n);
    if (m == 0) continue;
    out[Index{m}] += mass;
  }
  return SignedLatticeMeasure(1, std::move(out));
}

LatticePmf shift(const LatticePmf& p, const Index& m) {
  if (static_cast<int>(m.size()) != p.dim())
    throw Error(errc::dimension_mismatch, "shift: offset dimension does not match pmf");
  std::map<Index, double> out;
  for (const auto& [n, mass] : p.atoms()) {
    Index s(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) s[i] = checked_add(n[i], m[i]);
    out.emplace(std::move(s), mass);
  }
  return LatticePmf(p.dim(), std::move(out));
}

LatticePmf product(const LatticePmf& p, const LatticePmf& q) {
  std::map<Index, double> out;
  for (const auto& [n, pn] : p.atoms()) {
    for (const auto& [m, qm] : q.atoms()) {
      Index s;
      s.reserve(n.size() + m.size());
      s.insert(s.end(), n.begin(), n.end());
      s.insert(s.end(), m.begin(), m.end());
      out.emplace(std::move(s), pn * qm);
    }
  }
  return LatticePmf(p.dim() + q.dim(), std::move(out));
}

namespace {

// Determinant of an integer matrix via long double LU; entries of interest
// are small, so |det| < 0.5 identifies a singular integer matrix.
long double det_rowmajor(const std::vector<std::int64_t>& m, int d) {
  std::vector<long double> a(m.begin(), m.end());
  long double det = 1.0L;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    long double best = 0.0L;
    for (int r = col; r < d; ++r) {
      long double v = std::abs(a[static_cast<std::size_t>(r) * d + col]);
      if (v > best) { best = v; piv = r; }
    }
    if (piv < 0 || best == 0.0L) return 0.0L;
    if (piv != col) {
      for (int c = 0; c < d; ++c)
        std::swap(a[static_cast<std::size_t>(piv) * d + c], a[static_cast<std::size_t>(col) * d + c]);
      det = -det;
    }
    long double pv = a[static_cast<std::size_t>(col) * d + col];
    det *= pv;
    for (int r = col + 1; r < d; ++r) {
      long double f = a[static_cast<std::size_t>(r) * d + col] / pv;
      for (int c = col; c < d; ++c)
        a[static_cast<std::size_t>(r) * d + c] -= f * a[static_cast<std::size_t>(col) * d + c];
    }
  }
  return det;
}

}  // namespace

LatticePmf affine(const LatticePmf& p, const std::vector<std::int64_t>& matrix_row_major,
                  const Index& v) {
  const int d = p.dim();
  if (static_cast<int>(v.size()) != d)
    throw Error(errc::dimension_mismatch, "affine: shift dimension does not match pmf");
  if (matrix_row_major.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
    throw Error(errc::dimension_mismatch, "affine: matrix must be d x d");
  if (std::abs(det_rowmajor(matrix_row_major, d)) < 0.5L)
    throw Error(errc::invalid_argument, "affine: matrix is singular");
  std::map<Index, double> out;
  for (const auto& [n, mass] : p.atoms()) {
    Index s(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      std::int64_t acc = v[static_cast<std::size_t>(r)];
      for (int c = 0; c < d; ++c)
        acc = checked_add(acc, checked_mul(matrix_row_major[static_cast<std::size_t>(r) * d + c],
                                           n[static_cast<std::size_t>(c)]));
      s[static_cast<std::size_t>(r)] = acc;
    }
    out.emplace(std::move(s), mass);
  }
  return LatticePmf(d, std::move(out));
}

SignedLatticeMeasure add(const SignedLatticeMeasure& a, const SignedLatticeMeasure& b) {
  if (a.dim() != b.dim())
    throw Error(errc::dimension_mismatch, "add: measure dimensions differ");
  std::map<Index, double> out = a.atoms();
  for (const auto& [n, mass] : b.atoms()) out[n] += mass;
  return SignedLatticeMeasure(a.dim(), std::move(out));
}

SignedLatticeMeasure scale(const SignedLatticeMeasure& v, double s) {
  std::map<Index, double> out;
  for (const auto& [n, mass] : v.atoms()) out.emplace(n, mass * s);
  return SignedLatticeMeasure(v.dim(), std::move(out));
}

}  // namespace lqid
