#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace lqid {

using nlohmann::json;

namespace {

json index_to_json(const Index& n) {
  json a = json::array();
  for (std::int64_t c : n) a.push_back(c);
  return a;
}

Index index_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw Error(errc::parse_error, "lattice point must be an array of dim integers");
  Index n;
  n.reserve(j.size());
  for (const auto& c : j) {
    if (!c.is_number_integer())
      throw Error(errc::parse_error, "lattice point entries must be integers");
    n.push_back(c.get<std::int64_t>());
  }
  return n;
}

json atoms_to_json(const std::map<Index, double>& atoms, const char* mass_key) {
  json arr = json::array();
  for (const auto& [n, mass] : atoms) {
    json a;
    a["n"] = index_to_json(n);
    a[mass_key] = mass;
    arr.push_back(std::move(a));
  }
  return arr;
}

std::map<Index, double> atoms_from_json(const json& j, int dim, const char* mass_key) {
  if (!j.is_array()) throw Error(errc::parse_error, "\"atoms\" must be an array");
  std::map<Index, double> atoms;
  for (const auto& a : j) {
    if (!a.is_object() || !a.contains("n") || !a.contains(mass_key))
      throw Error(errc::parse_error,
                  std::string("each atom needs keys \"n\" and \"") + mass_key + "\"");
    Index n = index_from_json(a.at("n"), dim);
    if (!a.at(mass_key).is_number())
      throw Error(errc::parse_error, "atom mass must be a number");
    double mass = a.at(mass_key).get<double>();
    if (!atoms.emplace(std::move(n), mass).second)
      throw Error(errc::parse_error, "duplicate atom key");
  }
  return atoms;
}

int dim_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
    throw Error(errc::parse_error, "expected an object with keys \"dim\" and \"atoms\"");
  if (!j.at("dim").is_number_integer())
    throw Error(errc::parse_error, "\"dim\" must be an integer");
  int dim = j.at("dim").get<int>();
  if (dim < 1) throw Error(errc::parse_error, "\"dim\" must be positive");
  return dim;
}

}  // namespace

json to_json(const LatticePmf& p) {
  json j;
  j["dim"] = p.dim();
  j["atoms"] = atoms_to_json(p.atoms(), "p");
  return j;
}

LatticePmf pmf_from_json(const json& j) {
  int dim = dim_from_json(j);
  return LatticePmf(dim, atoms_from_json(j.at("atoms"), dim, "p"));
}

json to_json(const SignedLatticeMeasure& v) {
  json j;
  j["dim"] = v.dim();
  j["atoms"] = atoms_to_json(v.atoms(), "c");
  return j;
}

SignedLatticeMeasure signed_measure_from_json(const json& j) {
  int dim = dim_from_json(j);
  return SignedLatticeMeasure(dim, atoms_from_json(j.at("atoms"), dim, "c"));
}

json to_json(const QLTriplet& t) {
  json j;
  j["drift"] = index_to_json(t.drift);
  j["nu"] = to_json(t.nu);
  j["diagnostics"] = {{"reconstruction_error", t.reconstruction_error},
                      {"max_imag_residual", t.max_imag_residual},
                      {"tail_mass", t.tail_mass},
                      {"grid_size", t.grid_size}};
  return j;
}

json to_json(const Verdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  if (v.triplet) {
    json t = to_json(*v.triplet);
    j["drift"] = t["drift"];
    j["nu"] = t["nu"];
    j["diagnostics"] = t["diagnostics"];
    if (!v.marginal_atoms.empty()) {
      json m = json::array();
      for (const Index& n : v.marginal_atoms) m.push_back(index_to_json(n));
      j["marginal_atoms"] = std::move(m);
    }
  } else {
    j["diagnostics"] = {{"grid_size", v.zero_grid_size}};
  }
  if (v.kind == Verdict::Kind::QuasiOnly && v.negative_atom) {
    j["witness"] = {{"n", index_to_json(v.negative_atom->first)},
                    {"c", v.negative_atom->second}};
  } else if (v.kind == Verdict::Kind::NotQuasi) {
    j["witness"] = {{"z", v.zero_point}, {"modulus", v.zero_modulus}};
  }
  return j;
}

json to_json(const CWReport& r) {
  json j;
  j["bound"] = r.bound;
  j["signed_directions"] = r.signed_directions;
  json dirs = json::array();
  for (const DirectionRecord& rec : r.records) {
    json d;
    d["a"] = index_to_json(rec.direction);
    d["projected_support"] = rec.projected_support;
    d["katti"] = rec.katti_pass ? "pass" : "fail";
    d["katti_min"] = rec.katti_min;
    if (rec.katti_witness) d["katti_witness"] = *rec.katti_witness;
    d["quasi"] = to_string(rec.quasi);
    if (rec.quasi_witness)
      d["quasi_witness"] = {{"n", rec.quasi_witness->first}, {"c", rec.quasi_witness->second}};
    dirs.push_back(std::move(d));
  }
  j["directions"] = std::move(dirs);
  if (r.aggregate == CWReport::Aggregate::AllPass) {
    j["aggregate"] = "AllPass";
  } else {
    j["aggregate"] = "FailAt";
    j["fail_at"] = index_to_json(*r.fail_at);
  }
  j["direct"] = to_json(r.direct);
  j["consistent"] = r.consistent;
  return j;
}

json to_json(const Factorization& f) {
  json j;
  j["drift"] = index_to_json(f.drift);
  j["rate1"] = f.rate1;
  j["rate2"] = f.rate2;
  j["max_residual"] = f.max_residual;
  j["diagnostics"] = to_json(f.triplet)["diagnostics"];
  return j;
}

LatticePmf parse_pmf(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
  return pmf_from_json(j);
}

LatticePmf load_pmf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pmf(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(errc::io_error, "write to " + path + " failed");
}

}  // namespace lqid
