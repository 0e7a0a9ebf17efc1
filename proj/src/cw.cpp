#include "cw.hpp"

#include <algorithm>
#include <numeric>

namespace lqid {

namespace {

std::int64_t vector_gcd(const Index& a) {
  std::int64_t g = 0;
  for (std::int64_t c : a) g = std::gcd(g, c);
  return g;
}

}  // namespace

DirectionFamily enumerate_directions(int dim, int bound, bool signed_directions) {
  if (dim < 1 || bound < 1)
    throw Error(errc::invalid_argument, "enumerate_directions: need dim >= 1 and bound >= 1");
  DirectionFamily fam;
  fam.dim = dim;
  fam.bound = bound;
  fam.signed_directions = signed_directions;

  const std::int64_t lo = signed_directions ? -bound : 0;
  Index a(static_cast<std::size_t>(dim), lo);
  while (true) {
    if (vector_gcd(a) == 1) {
      bool keep = true;
      if (signed_directions) {
        // canonical representative: first nonzero entry positive
        for (std::int64_t c : a) {
          if (c != 0) {
            keep = c > 0;
            break;
          }
        }
      }
      if (keep) fam.directions.push_back(a);
    }
    int axis = dim - 1;
    while (axis >= 0 && a[static_cast<std::size_t>(axis)] == bound) {
      a[static_cast<std::size_t>(axis)] = lo;
      --axis;
    }
    if (axis < 0) break;
    ++a[static_cast<std::size_t>(axis)];
  }
  std::sort(fam.directions.begin(), fam.directions.end());
  return fam;
}

const char* to_string(DirectionRecord::Quasi q) {
  switch (q) {
    case DirectionRecord::Quasi::InfinitelyDivisible: return "InfinitelyDivisible";
    case DirectionRecord::Quasi::QuasiOnly: return "QuasiOnly";
    case DirectionRecord::Quasi::NotQuasi: return "NotQuasi";
    case DirectionRecord::Quasi::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CWReport cw_test(const LatticePmf& p, const Options& opts) {
  CWReport report;
  report.bound = opts.direction_bound;
  report.signed_directions = opts.signed_directions;

  DirectionFamily fam =
      enumerate_directions(p.dim(), opts.direction_bound, opts.signed_directions);

  bool any_inconclusive = false;
  for (const Index& a : fam.directions) {
    DirectionRecord rec;
    rec.direction = a;

    LatticePmf proj = project(p, a);
    rec.projected_support = proj.size();

    // Shift onto N_0 with mass at 0 so Katti's recursion applies.
    std::int64_t min_point = proj.atoms().begin()->first[0];
    LatticePmf based = shift(proj, Index{-min_point});
    KattiSequence ks = katti(based, default_katti_degree(based));
    rec.katti_min = 0.0;
    rec.katti_pass = true;
    for (std::size_t n = 1; n <= ks.q.size(); ++n) {
      double qn = ks.at(n);
      rec.katti_min = std::min(rec.katti_min, qn);
      if (qn < -kNegAtomTolerance && !rec.katti_witness) {
        rec.katti_witness = n;
        rec.katti_pass = false;
      }
    }

    try {
      Verdict v = classify(proj, opts);
      switch (v.kind) {
        case Verdict::Kind::InfinitelyDivisible:
          rec.quasi = DirectionRecord::Quasi::InfinitelyDivisible;
          break;
        case Verdict::Kind::QuasiOnly:
          rec.quasi = DirectionRecord::Quasi::QuasiOnly;
          if (v.negative_atom)
            rec.quasi_witness = std::make_pair(v.negative_atom->first[0], v.negative_atom->second);
          break;
        case Verdict::Kind::NotQuasi:
          rec.quasi = DirectionRecord::Quasi::NotQuasi;
          break;
      }
    } catch (const Error& e) {
      if (e.code() == errc::inconclusive || e.code() == errc::budget_exceeded) {
        rec.quasi = DirectionRecord::Quasi::Inconclusive;
        any_inconclusive = true;
      } else {
        throw;
      }
    }

    bool fails = !rec.katti_pass ||
                 rec.quasi == DirectionRecord::Quasi::QuasiOnly ||
                 rec.quasi == DirectionRecord::Quasi::NotQuasi;
    if (fails && report.aggregate == CWReport::Aggregate::AllPass) {
      report.aggregate = CWReport::Aggregate::FailAt;
      report.fail_at = a;
    }
    report.records.push_back(std::move(rec));
  }

  if (report.aggregate == CWReport::Aggregate::AllPass && any_inconclusive)
    throw Error(errc::inconclusive,
                "no direction failed but some projection could not be certified");

  report.direct = classify(p, opts);
  bool direct_id = report.direct.kind == Verdict::Kind::InfinitelyDivisible;
  report.consistent = (report.aggregate == CWReport::Aggregate::AllPass && direct_id) ||
                      (report.aggregate == CWReport::Aggregate::FailAt && !direct_id);
  return report;
}

}  // namespace lqid
