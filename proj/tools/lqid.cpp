// lqid — command-line front end for the latticeqid analysis library.
//
// Exit codes: analyze reports the verdict (0 infinitely divisible,
// 1 quasi only, 2 not quasi, 3 inconclusive or error); cw exits 0 iff the
// projection harness agrees with the direct verdict; factorize refuses
// zero-crossing inputs with 2. Everything else: 0 on success, 3 on error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "latticeqid.h"

namespace {

constexpr int kExitError = 3;

void print_error(lqid_status rc) {
  std::cerr << "error: " << lqid_status_name(rc) << ": " << lqid_last_error() << "\n";
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { lqid_string_free(s); }
};

struct OwnedPmf {
  lqid_pmf* p = nullptr;
  ~OwnedPmf() { lqid_pmf_free(p); }
};

int load_pmf(const std::string& path, OwnedPmf& pmf) {
  lqid_status rc = lqid_pmf_read_file(path.c_str(), &pmf.p);
  if (rc != LQID_OK) {
    print_error(rc);
    return kExitError;
  }
  return 0;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitError;
  }
  return 0;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw CLI::ValidationError("empty entry in integer list '" + s + "'");
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list");
  return out;
}

// "1,1;0,1" -> row-major entries, rows separated by ';'
std::vector<std::int64_t> parse_matrix(const std::string& s, int& rows) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string row;
  rows = 0;
  std::size_t cols = 0;
  while (std::getline(ss, row, ';')) {
    std::vector<std::int64_t> r = parse_int_list(row);
    if (rows == 0) cols = r.size();
    else if (r.size() != cols) throw CLI::ValidationError("ragged matrix '" + s + "'");
    out.insert(out.end(), r.begin(), r.end());
    ++rows;
  }
  if (static_cast<std::size_t>(rows) != cols)
    throw CLI::ValidationError("matrix must be square");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lqid — infinite divisibility analysis of lattice distributions"};
  app.require_subcommand(1);

  lqid_options defaults = lqid_options_default();
  double tol = defaults.tol;
  std::uint64_t max_grid = defaults.max_grid_points;
  bool as_json = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "analysis tolerance")->capture_default_str();
    cmd->add_option("--max-grid", max_grid, "total torus grid point budget")
        ->capture_default_str();
    cmd->add_flag("--json", as_json, "machine-readable JSON output");
  };

  // analyze
  std::string in_path;
  CLI::App* analyze = app.add_subcommand("analyze", "classify a pmf and print its (k, nu)");
  analyze->add_option("input", in_path, "pmf JSON file")->required();
  add_common(analyze);

  // cw
  int bound = defaults.direction_bound;
  bool signed_dirs = false;
  CLI::App* cw = app.add_subcommand("cw", "Cramer-Wold projection harness");
  cw->add_option("input", in_path, "pmf JSON file")->required();
  cw->add_option("--bound", bound, "direction sup-norm bound")->capture_default_str();
  cw->add_flag("--signed", signed_dirs, "use signed directions from {-B..B}^d");
  add_common(cw);

  // factorize
  std::string out_dir = ".";
  CLI::App* factorize = app.add_subcommand(
      "factorize", "compound Poisson quotient: writes mu1.json and mu2.json");
  factorize->add_option("input", in_path, "pmf JSON file")->required();
  factorize->add_option("--out-dir", out_dir, "directory for mu1.json/mu2.json")
      ->capture_default_str();
  add_common(factorize);

  // generate
  CLI::App* generate = app.add_subcommand("generate", "built-in fixture generators");
  generate->require_subcommand(1);
  std::string out_path;
  double lambda = 1.0, tail = 1e-12, prob = 0.5, ratio = 0.5, origin_mass = 0.6;
  std::string point_str = "0", matrix_str, shift_str;
  std::vector<std::string> product_inputs;
  int dim = 2, radius = 3, atom_count = 4;
  std::uint64_t seed = 1;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", out_path, "output file (default: stdout)");
  };
  CLI::App* gen_poisson = generate->add_subcommand("poisson", "truncated Poisson(lambda)");
  gen_poisson->add_option("--lambda", lambda, "rate")->required();
  gen_poisson->add_option("--tail", tail, "truncated tail mass")->capture_default_str();
  add_out(gen_poisson);

  CLI::App* gen_geometric = generate->add_subcommand("geometric", "truncated geometric");
  gen_geometric->add_option("--ratio", ratio, "p_n = (1-ratio) ratio^n")->required();
  gen_geometric->add_option("--tail", tail, "truncated tail mass")->capture_default_str();
  add_out(gen_geometric);

  CLI::App* gen_bernoulli = generate->add_subcommand("bernoulli", "two-point law on {0,1}");
  gen_bernoulli->add_option("--p", prob, "mass at 1")->required();
  add_out(gen_bernoulli);

  CLI::App* gen_dirac = generate->add_subcommand("dirac", "point mass");
  gen_dirac->add_option("--point", point_str, "lattice point, e.g. \"2,-1\"")->required();
  add_out(gen_dirac);

  CLI::App* gen_random = generate->add_subcommand("random", "seeded random fixture");
  gen_random->add_option("--dim", dim, "dimension")->capture_default_str();
  gen_random->add_option("--radius", radius, "support sup-norm radius")->capture_default_str();
  gen_random->add_option("--atoms", atom_count, "number of nonzero atoms")->capture_default_str();
  gen_random->add_option("--origin-mass", origin_mass, "mass at the origin")
      ->capture_default_str();
  gen_random->add_option("--seed", seed, "rng seed")->capture_default_str();
  add_out(gen_random);

  CLI::App* gen_product = generate->add_subcommand("product", "independent product of two pmfs");
  gen_product->add_option("--inputs", product_inputs, "two pmf JSON files")
      ->expected(2)
      ->required();
  add_out(gen_product);

  CLI::App* gen_affine = generate->add_subcommand("affine", "integer affine image of a pmf");
  gen_affine->add_option("--input", in_path, "pmf JSON file")->required();
  gen_affine->add_option("--matrix", matrix_str, "row-major integer matrix, e.g. \"1,1;0,1\"")
      ->required();
  gen_affine->add_option("--shift", shift_str, "integer shift, e.g. \"0,0\"")->required();
  add_out(gen_affine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  lqid_options opts = lqid_options_default();
  opts.tol = tol;
  opts.max_grid_points = max_grid;
  opts.direction_bound = bound;
  opts.signed_directions = signed_dirs ? 1 : 0;

  if (*analyze) {
    OwnedPmf pmf;
    if (int rc = load_pmf(in_path, pmf)) return rc;
    lqid_verdict* verdict = nullptr;
    lqid_status rc = lqid_analyze(pmf.p, &opts, &verdict);
    if (rc != LQID_OK) {
      print_error(rc);
      return kExitError;
    }
    OwnedString text;
    rc = as_json ? lqid_verdict_to_json(verdict, &text.s)
                 : lqid_verdict_render_text(verdict, &text.s);
    if (rc != LQID_OK) {
      print_error(rc);
      lqid_verdict_free(verdict);
      return kExitError;
    }
    std::cout << text.s;
    int exit_code = static_cast<int>(lqid_verdict_get_kind(verdict));
    lqid_verdict_free(verdict);
    return exit_code;
  }

  if (*cw) {
    OwnedPmf pmf;
    if (int rc = load_pmf(in_path, pmf)) return rc;
    lqid_cw_report* report = nullptr;
    lqid_status rc = lqid_cw_test(pmf.p, &opts, &report);
    if (rc != LQID_OK) {
      print_error(rc);
      return kExitError;
    }
    OwnedString text;
    rc = as_json ? lqid_cw_report_to_json(report, &text.s)
                 : lqid_cw_report_render_text(report, &text.s);
    if (rc != LQID_OK) {
      print_error(rc);
      lqid_cw_report_free(report);
      return kExitError;
    }
    std::cout << text.s;
    int exit_code = lqid_cw_report_consistent(report) ? 0 : 1;
    lqid_cw_report_free(report);
    return exit_code;
  }

  if (*factorize) {
    OwnedPmf pmf;
    if (int rc = load_pmf(in_path, pmf)) return rc;
    lqid_factorization* fac = nullptr;
    lqid_status rc = lqid_factorize(pmf.p, &opts, &fac);
    if (rc == LQID_ERR_NOT_QUASI) {
      print_error(rc);
      return 2;
    }
    if (rc != LQID_OK) {
      print_error(rc);
      return kExitError;
    }
    int exit_code = 0;
    OwnedString text, mu1, mu2;
    std::filesystem::path dir(out_dir);
    if (lqid_factorization_factor_json(fac, 1, &mu1.s) == LQID_OK &&
        lqid_factorization_factor_json(fac, 2, &mu2.s) == LQID_OK &&
        (as_json ? lqid_factorization_to_json(fac, &text.s)
                 : lqid_factorization_render_text(fac, &text.s)) == LQID_OK) {
      exit_code = emit(mu1.s, (dir / "mu1.json").string());
      if (exit_code == 0) exit_code = emit(mu2.s, (dir / "mu2.json").string());
      if (exit_code == 0) {
        std::cout << text.s;
        if (!as_json)
          std::cout << "mu1         : " << (dir / "mu1.json").string() << "\n"
                    << "mu2         : " << (dir / "mu2.json").string() << "\n";
      }
    } else {
      print_error(LQID_ERR_INTERNAL);
      exit_code = kExitError;
    }
    lqid_factorization_free(fac);
    return exit_code;
  }

  if (*generate) {
    OwnedString json;
    lqid_status rc = LQID_ERR_INTERNAL;
    if (*gen_poisson) {
      rc = lqid_generate_poisson(lambda, tail, &json.s);
    } else if (*gen_geometric) {
      rc = lqid_generate_geometric(ratio, tail, &json.s);
    } else if (*gen_bernoulli) {
      rc = lqid_generate_bernoulli(prob, &json.s);
    } else if (*gen_dirac) {
      std::vector<std::int64_t> pt = parse_int_list(point_str);
      rc = lqid_generate_dirac(pt.data(), static_cast<int>(pt.size()), &json.s);
    } else if (*gen_random) {
      rc = lqid_generate_random(dim, radius, atom_count, origin_mass, seed, &json.s);
    } else if (*gen_product) {
      OwnedPmf a, b;
      if (int code = load_pmf(product_inputs[0], a)) return code;
      if (int code = load_pmf(product_inputs[1], b)) return code;
      OwnedPmf prod;
      rc = lqid_pmf_product(a.p, b.p, &prod.p);
      if (rc == LQID_OK) rc = lqid_pmf_to_json(prod.p, &json.s);
    } else if (*gen_affine) {
      OwnedPmf pmf;
      if (int code = load_pmf(in_path, pmf)) return code;
      int rows = 0;
      std::vector<std::int64_t> matrix = parse_matrix(matrix_str, rows);
      std::vector<std::int64_t> shift = parse_int_list(shift_str);
      if (rows != lqid_pmf_dim(pmf.p) || shift.size() != static_cast<std::size_t>(rows)) {
        std::cerr << "error: matrix/shift dimension does not match the pmf\n";
        return kExitError;
      }
      OwnedPmf image;
      rc = lqid_pmf_affine(pmf.p, matrix.data(), shift.data(), &image.p);
      if (rc == LQID_OK) rc = lqid_pmf_to_json(image.p, &json.s);
    }
    if (rc != LQID_OK) {
      print_error(rc);
      return kExitError;
    }
    return emit(json.s, out_path);
  }

  return kExitError;
}
