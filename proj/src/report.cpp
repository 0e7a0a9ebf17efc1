#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace lqid {

namespace {

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.9f", x);
  return buf;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.6f", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string line(const std::string& label, const std::string& value) {
  return pad_right(label, 12) + ": " + value + "\n";
}

std::string format_point(const std::vector<double>& z) {
  std::ostringstream ss;
  ss << "[";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) ss << ",";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", z[i]);
    ss << buf;
  }
  ss << "]";
  return ss.str();
}

std::string diagnostics_line(const QLTriplet& t) {
  return "reconstruction=" + sci(t.reconstruction_error) + "  imag=" +
         sci(t.max_imag_residual) + "  tail=" + sci(t.tail_mass);
}

}  // namespace

std::string format_index(const Index& n) {
  std::ostringstream ss;
  ss << "[";
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) ss << ",";
    ss << n[i];
  }
  ss << "]";
  return ss.str();
}

std::string render_verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << line("verdict", to_string(v.kind));
  if (!v.triplet) {
    out << line("grid", std::to_string(v.zero_grid_size));
    out << line("witness",
                "|phi| = " + sci(v.zero_modulus) + " at z = " + format_point(v.zero_point));
    return out.str();
  }

  const QLTriplet& t = *v.triplet;
  out << line("drift", format_index(t.drift));
  out << line("grid", std::to_string(t.grid_size));
  out << line("diagnostics", diagnostics_line(t));
  out << line("marginal", std::to_string(v.marginal_atoms.size()));
  if (v.negative_atom)
    out << line("witness", "nu(" + format_index(v.negative_atom->first) +
                               ") = " + fixed9(v.negative_atom->second));

  // nu table, |mass| descending; ties resolved by lexicographic index.
  std::vector<std::pair<Index, double>> rows(t.nu.atoms().begin(), t.nu.atoms().end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  out << "nu atoms (" << rows.size() << ", by |mass| desc):\n";
  std::size_t nw = 8;
  for (const auto& [n, mass] : rows) nw = std::max(nw, format_index(n).size());
  out << pad_left("n", nw + 2) << pad_left("mass", 18) << "\n";
  for (const auto& [n, mass] : rows)
    out << pad_left(format_index(n), nw + 2) << pad_left(fixed9(mass), 18) << "\n";
  return out.str();
}

std::string render_cw_text(const CWReport& r) {
  std::ostringstream out;
  out << line("bound", std::to_string(r.bound) + (r.signed_directions ? " (signed)" : ""));
  out << line("directions", std::to_string(r.records.size()));

  std::size_t dw = 10;
  for (const DirectionRecord& rec : r.records)
    dw = std::max(dw, format_index(rec.direction).size());
  out << pad_right("direction", dw + 2) << pad_left("support", 9) << "  "
      << pad_right("katti", 7) << pad_right("quasi", 21) << "witness" << "\n";
  for (const DirectionRecord& rec : r.records) {
    std::string witness = "-";
    if (rec.katti_witness) {
      witness = "q[" + std::to_string(*rec.katti_witness) + "] = " + fixed6(rec.katti_min);
    } else if (rec.quasi_witness) {
      witness = "nu([" + std::to_string(rec.quasi_witness->first) +
                "]) = " + fixed6(rec.quasi_witness->second);
    }
    out << pad_right(format_index(rec.direction), dw + 2)
        << pad_left(std::to_string(rec.projected_support), 9) << "  "
        << pad_right(rec.katti_pass ? "pass" : "fail", 7)
        << pad_right(to_string(rec.quasi), 21) << witness << "\n";
  }

  if (r.aggregate == CWReport::Aggregate::AllPass)
    out << line("aggregate", "AllPass");
  else
    out << line("aggregate", "FailAt " + format_index(*r.fail_at));
  out << line("direct", to_string(r.direct.kind));
  out << line("consistent", r.consistent ? "yes" : "no");
  return out.str();
}

std::string render_factorization_text(const Factorization& f) {
  std::ostringstream out;
  out << line("drift", format_index(f.drift));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", f.rate1);
  out << line("rate1", buf);
  std::snprintf(buf, sizeof buf, "%.9f", f.rate2);
  out << line("rate2", buf);
  out << line("residual", sci(f.max_residual));
  out << line("mu1 atoms", std::to_string(f.mu1.size()));
  out << line("mu2 atoms", std::to_string(f.mu2.size()));
  return out.str();
}

}  // namespace lqid
