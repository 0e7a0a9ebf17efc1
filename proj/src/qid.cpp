#include "qid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace lqid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int next_pow2_at_least(std::int64_t x) {
  if (x > (std::int64_t{1} << 28))
    throw Error(errc::budget_exceeded, "support too wide for any feasible grid");
  int m = 2;
  while (m < x) m <<= 1;
  return m;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (~0ull) / base) return ~0ull;
    r *= base;
  }
  return r;
}

void validate_tol(double tol) {
  if (!(tol > 0.0) || tol > 1e-6)
    throw Error(errc::invalid_argument, "tol must lie in (0, 1e-6]");
}

// Aliased frequency of grid index j: j for j < M/2, j - M otherwise.
std::int64_t alias(int j, int m) { return j < m / 2 ? j : j - m; }

}  // namespace

QLTriplet quasi_levy(const LatticePmf& p, double tol, std::uint64_t max_grid_points) {
  validate_tol(tol);
  const int d = p.dim();
  const std::int64_t radius = p.support_radius();
  const int m0 = std::max(8, next_pow2_at_least(4 * radius + 1));
  if (pow_u64(static_cast<std::uint64_t>(m0), d) > max_grid_points)
    throw Error(errc::budget_exceeded,
                "support too wide for the grid point budget");

  bool ever_certified = false;
  for (int m = m0; pow_u64(static_cast<std::uint64_t>(m), d) <= max_grid_points; m <<= 1) {
    TorusGrid phi = sample_grid(p, m, max_grid_points);
    CertificationOutcome cert = certify_zero_free(p, phi);
    if (cert.status == CertificationOutcome::Status::ZeroFound)
      throw ZeroFoundError(cert.min_point, cert.certificate.min_modulus, m);
    if (cert.status == CertificationOutcome::Status::Inconclusive) continue;
    ever_certified = true;

    TorusGrid psi;
    std::vector<std::int64_t> k;
    try {
      psi = distinguished_log(phi, cert.certificate);
      k = winding_vector(phi);
    } catch (const Error& e) {
      if (e.code() == errc::unwrap_ambiguity || e.code() == errc::numerical_fault) continue;
      throw;
    }

    // psi~ = psi - i<k, z>, sampled on the grid.
    const std::size_t total = psi.values.size();
    std::vector<std::complex<double>> coeff(total);
    {
      std::vector<int> j(static_cast<std::size_t>(d), 0);
      for (std::size_t f = 0; f < total; ++f) {
        double phase = 0.0;
        for (int axis = 0; axis < d; ++axis)
          phase += static_cast<double>(k[static_cast<std::size_t>(axis)]) *
                   (kTwoPi * j[static_cast<std::size_t>(axis)] / m);
        coeff[f] = psi.values[f] - std::complex<double>(0.0, phase);
        for (int axis = d - 1; axis >= 0; --axis) {
          if (++j[static_cast<std::size_t>(axis)] < m) break;
          j[static_cast<std::size_t>(axis)] = 0;
        }
      }
    }
    detail::dft_pow2(coeff, d, m, -1);
    for (auto& c : coeff) c /= static_cast<double>(total);

    // Realness and c_0 = -sum_{n != 0} c_n are theorems; violations beyond
    // tol indicate a numerical fault, not something to repair.
    double max_imag = 0.0;
    std::complex<double> coeff_sum = 0.0;
    for (const auto& c : coeff) {
      max_imag = std::max(max_imag, std::abs(c.imag()));
      coeff_sum += c;
    }
    if (max_imag > tol)
      throw Error(errc::numerical_fault,
                  "imaginary residual of the Fourier coefficients exceeds tol");
    if (std::abs(coeff_sum) > tol)
      throw Error(errc::numerical_fault,
                  "coefficient sum does not vanish: c_0 != -sum c_n beyond tol");

    // Boundary-shell magnitude as the tail proxy.
    double tail_mass = 0.0;
    {
      std::vector<int> j(static_cast<std::size_t>(d), 0);
      for (std::size_t f = 0; f < total; ++f) {
        bool shell = false;
        for (int axis = 0; axis < d; ++axis) {
          int jj = j[static_cast<std::size_t>(axis)];
          if (jj == m / 2 || jj == m / 2 - 1) { shell = true; break; }
        }
        if (shell) tail_mass += std::abs(coeff[f]);
        for (int axis = d - 1; axis >= 0; --axis) {
          if (++j[static_cast<std::size_t>(axis)] < m) break;
          j[static_cast<std::size_t>(axis)] = 0;
        }
      }
    }

    // Rebuild exp(i<k,z> + sum Re(c_n)(e^{i<n,z>}-1)) on the grid and compare
    // to phi before any pruning.
    double recon_err = 0.0;
    {
      std::vector<std::complex<double>> rep(total);
      double c0 = 0.0;
      for (std::size_t f = 1; f < total; ++f) c0 -= coeff[f].real();
      rep[0] = c0;
      for (std::size_t f = 1; f < total; ++f) rep[f] = coeff[f].real();
      detail::dft_pow2(rep, d, m, +1);
      std::vector<int> j(static_cast<std::size_t>(d), 0);
      for (std::size_t f = 0; f < total; ++f) {
        double phase = 0.0;
        for (int axis = 0; axis < d; ++axis)
          phase += static_cast<double>(k[static_cast<std::size_t>(axis)]) *
                   (kTwoPi * j[static_cast<std::size_t>(axis)] / m);
        std::complex<double> value =
            std::exp(rep[f] + std::complex<double>(0.0, phase));
        recon_err = std::max(recon_err, std::abs(value - phi.values[f]));
        for (int axis = d - 1; axis >= 0; --axis) {
          if (++j[static_cast<std::size_t>(axis)] < m) break;
          j[static_cast<std::size_t>(axis)] = 0;
        }
      }
    }

    if (tail_mass < tol && recon_err < tol) {
      const double prune = tol / 10.0;
      std::map<Index, double> atoms;
      std::vector<int> j(static_cast<std::size_t>(d), 0);
      for (std::size_t f = 1; f < total; ++f) {
        for (int axis = d - 1; axis >= 0; --axis) {
          if (++j[static_cast<std::size_t>(axis)] < m) break;
          j[static_cast<std::size_t>(axis)] = 0;
        }
        double c = coeff[f].real();
        if (std::abs(c) < prune) continue;
        Index n(static_cast<std::size_t>(d));
        for (int axis = 0; axis < d; ++axis)
          n[static_cast<std::size_t>(axis)] = alias(j[static_cast<std::size_t>(axis)], m);
        atoms.emplace(std::move(n), c);
      }
      QLTriplet t;
      t.drift = k;
      t.nu = SignedLatticeMeasure(d, std::move(atoms));
      t.max_imag_residual = max_imag;
      t.reconstruction_error = recon_err;
      t.tail_mass = tail_mass;
      t.grid_size = m;
      return t;
    }
  }

  if (!ever_certified)
    throw Error(errc::inconclusive,
                "zero-free certification inconclusive within the grid budget");
  throw Error(errc::budget_exceeded,
              "coefficients did not converge within the grid point budget");
}

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::InfinitelyDivisible: return "InfinitelyDivisible";
    case Verdict::Kind::QuasiOnly: return "QuasiOnly";
    case Verdict::Kind::NotQuasi: return "NotQuasi";
  }
  return "?";
}

Verdict classify(const LatticePmf& p, const Options& opts) {
  Verdict v;
  try {
    QLTriplet t = quasi_levy(p, opts.tol, opts.max_grid_points);
    const Index* worst = nullptr;
    double worst_mass = 0.0;
    for (const auto& [n, mass] : t.nu.atoms()) {
      if (mass < 0.0 && mass >= -kNegAtomTolerance) v.marginal_atoms.push_back(n);
      if (mass < worst_mass) {
        worst_mass = mass;
        worst = &n;
      }
    }
    if (worst_mass < -kNegAtomTolerance) {
      v.kind = Verdict::Kind::QuasiOnly;
      v.negative_atom = std::make_pair(*worst, worst_mass);
    } else {
      v.kind = Verdict::Kind::InfinitelyDivisible;
    }
    v.triplet = std::move(t);
  } catch (const ZeroFoundError& e) {
    v.kind = Verdict::Kind::NotQuasi;
    v.zero_point = e.z();
    v.zero_modulus = e.modulus();
    v.zero_grid_size = e.grid_size();
  }
  return v;
}

std::pair<SignedLatticeMeasure, SignedLatticeMeasure> hahn_jordan(const SignedLatticeMeasure& v) {
  std::map<Index, double> plus, minus;
  for (const auto& [n, mass] : v.atoms()) {
    if (mass > 0.0) plus.emplace(n, mass);
    else minus.emplace(n, -mass);
  }
  return {SignedLatticeMeasure(v.dim(), std::move(plus)),
          SignedLatticeMeasure(v.dim(), std::move(minus))};
}

TruncatedPmf compound_poisson_pmf(const CompoundPoissonFactor& f, double tail) {
  if (!(f.rate > 0.0))
    throw Error(errc::invalid_argument, "compound Poisson rate must be positive");
  if (!(tail > 0.0) || tail > 1e-6)
    throw Error(errc::invalid_argument, "tail must lie in (0, 1e-6]");
  const int d = f.jump_law.dim();
  const Index origin(static_cast<std::size_t>(d), 0);
  if (f.jump_law.at(origin) != 0.0)
    throw Error(errc::invalid_argument, "jump law may not charge the origin");

  // Poisson(lambda) weights in long double; m* is the smallest m with upper
  // tail below `tail`.
  const long double lambda = f.rate;
  std::vector<long double> term{std::exp(-lambda)};
  while (true) {
    std::size_t m = term.size();
    long double t = term.back() * lambda / static_cast<long double>(m);
    term.push_back(t);
    if (static_cast<long double>(m) > 2.0L * lambda + 4.0L && 2.0L * t < tail * 1e-3L) break;
  }
  std::vector<long double> suffix(term.size() + 1, 0.0L);
  for (std::size_t i = term.size(); i-- > 0;) suffix[i] = suffix[i + 1] + term[i];
  int m_star = 0;
  while (suffix[static_cast<std::size_t>(m_star) + 1] >= static_cast<long double>(tail))
    ++m_star;

  std::map<Index, double> acc;
  acc.emplace(origin, static_cast<double>(term[0]));
  std::map<Index, double> power;  // sigma^{*m}
  power.emplace(origin, 1.0);
  for (int m = 1; m <= m_star; ++m) {
    std::map<Index, double> next;
    for (const auto& [n, pn] : power) {
      for (const auto& [jump, sj] : f.jump_law.atoms()) {
        Index s(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) s[i] = n[i] + jump[i];
        next[s] += pn * sj;
      }
    }
    power = std::move(next);
    const double w = static_cast<double>(term[static_cast<std::size_t>(m)]);
    for (const auto& [n, pn] : power) acc[n] += w * pn;
  }

  double total = 0.0;
  for (const auto& [n, mass] : acc) {
    (void)n;
    total += mass;
  }
  std::map<Index, double> atoms;
  for (const auto& [n, mass] : acc)
    if (mass > 0.0) atoms.emplace(n, mass / total);

  TruncatedPmf out{LatticePmf(d, std::move(atoms)),
                   static_cast<double>(suffix[static_cast<std::size_t>(m_star) + 1]), m_star};
  return out;
}

Factorization factorize(const LatticePmf& p, const Options& opts) {
  validate_tol(opts.tol);
  QLTriplet t;
  try {
    t = quasi_levy(p, opts.tol, opts.max_grid_points);
  } catch (const ZeroFoundError&) {
    throw Error(errc::not_quasi,
                "characteristic function has a zero; no compound Poisson quotient exists");
  }

  const int d = p.dim();
  auto [plus, minus] = hahn_jordan(t.nu);
  Index e1(static_cast<std::size_t>(d), 0);
  e1[0] = 1;
  SignedLatticeMeasure pad(d, {{e1, 1.0}});
  SignedLatticeMeasure nu1 = add(plus, pad);
  SignedLatticeMeasure nu2 = add(minus, pad);

  auto make_factor = [d](const SignedLatticeMeasure& nu) {
    double rate = nu.total_mass();
    double sum = 0.0;
    for (const auto& [n, mass] : nu.atoms()) {
      (void)n;
      sum += mass;
    }
    std::map<Index, double> atoms;
    for (const auto& [n, mass] : nu.atoms()) atoms.emplace(n, mass / sum);
    return CompoundPoissonFactor{rate, LatticePmf(d, std::move(atoms))};
  };
  CompoundPoissonFactor f1 = make_factor(nu1);
  CompoundPoissonFactor f2 = make_factor(nu2);
  LatticePmf mu1 = compound_poisson_pmf(f1, opts.tol).pmf;
  LatticePmf mu2 = compound_poisson_pmf(f2, opts.tol).pmf;

  // phi_p * phi_mu2 must equal e^{i<k,z>} phi_mu1 on the grid.
  const int m = t.grid_size;
  TorusGrid gp = sample_grid(p, m, opts.max_grid_points);
  TorusGrid g1 = sample_grid(mu1, m, opts.max_grid_points);
  TorusGrid g2 = sample_grid(mu2, m, opts.max_grid_points);
  double resid = 0.0;
  {
    std::vector<int> j(static_cast<std::size_t>(d), 0);
    for (std::size_t f = 0; f < gp.values.size(); ++f) {
      double phase = 0.0;
      for (int axis = 0; axis < d; ++axis)
        phase += static_cast<double>(t.drift[static_cast<std::size_t>(axis)]) *
                 (kTwoPi * j[static_cast<std::size_t>(axis)] / m);
      std::complex<double> lhs = gp.values[f] * g2.values[f];
      std::complex<double> rhs = std::polar(1.0, phase) * g1.values[f];
      resid = std::max(resid, std::abs(lhs - rhs));
      for (int axis = d - 1; axis >= 0; --axis) {
        if (++j[static_cast<std::size_t>(axis)] < m) break;
        j[static_cast<std::size_t>(axis)] = 0;
      }
    }
  }
  if (resid >= 10.0 * opts.tol)
    throw Error(errc::numerical_fault,
                "compound Poisson quotient residual exceeds 10*tol");

  return Factorization{t.drift,  std::move(mu1), std::move(mu2), f1.rate,
                       f2.rate,  resid,          std::move(t)};
}

}  // namespace lqid
