#include "latticeqid.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cw.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "measures.hpp"
#include "qid.hpp"
#include "report.hpp"

namespace {

thread_local std::string g_last_error;

lqid_status map_errc(lqid::errc code) {
  using lqid::errc;
  switch (code) {
    case errc::invalid_argument: return LQID_ERR_INVALID_ARGUMENT;
    case errc::dimension_mismatch: return LQID_ERR_DIMENSION_MISMATCH;
    case errc::not_normalized: return LQID_ERR_NOT_NORMALIZED;
    case errc::parse_error: return LQID_ERR_PARSE;
    case errc::io_error: return LQID_ERR_IO;
    case errc::budget_exceeded: return LQID_ERR_BUDGET_EXCEEDED;
    case errc::unwrap_ambiguity: return LQID_ERR_NUMERICAL;
    case errc::zero_found: return LQID_ERR_NOT_QUASI;
    case errc::inconclusive: return LQID_ERR_INCONCLUSIVE;
    case errc::numerical_fault: return LQID_ERR_NUMERICAL;
    case errc::not_quasi: return LQID_ERR_NOT_QUASI;
  }
  return LQID_ERR_INTERNAL;
}

template <typename Fn>
lqid_status guarded(Fn&& fn) {
  try {
    fn();
    return LQID_OK;
  } catch (const lqid::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LQID_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LQID_ERR_INTERNAL;
  }
}

lqid_status fail_null(const char* what) {
  g_last_error = std::string(what) + " must not be null";
  return LQID_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lqid_status emit_string(const std::string& s, char** out) {
  char* dup = dup_string(s);
  if (!dup) {
    g_last_error = "out of memory";
    return LQID_ERR_INTERNAL;
  }
  *out = dup;
  return LQID_OK;
}

lqid::Options to_options(const lqid_options* opts) {
  lqid::Options o;
  if (opts) {
    o.tol = opts->tol;
    o.max_grid_points = opts->max_grid_points;
    o.direction_bound = opts->direction_bound;
    o.signed_directions = opts->signed_directions != 0;
  }
  return o;
}

}  // namespace

struct lqid_pmf {
  lqid::LatticePmf value;
};

struct lqid_verdict {
  lqid::Verdict value;
};

struct lqid_cw_report {
  lqid::CWReport value;
};

struct lqid_factorization {
  lqid::Factorization value;
};

extern "C" {

lqid_options lqid_options_default(void) {
  lqid::Options o;
  return lqid_options{o.tol, o.max_grid_points, o.direction_bound,
                      o.signed_directions ? 1 : 0};
}

const char* lqid_version(void) { return "1.0.0"; }

const char* lqid_status_name(lqid_status s) {
  switch (s) {
    case LQID_OK: return "ok";
    case LQID_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LQID_ERR_PARSE: return "parse error";
    case LQID_ERR_NOT_NORMALIZED: return "not normalized";
    case LQID_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case LQID_ERR_IO: return "io error";
    case LQID_ERR_INCONCLUSIVE: return "inconclusive";
    case LQID_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case LQID_ERR_NUMERICAL: return "numerical fault";
    case LQID_ERR_NOT_QUASI: return "not quasi-infinitely divisible";
    case LQID_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* lqid_last_error(void) { return g_last_error.c_str(); }

void lqid_string_free(char* s) { std::free(s); }

lqid_status lqid_pmf_parse_json(const char* json_text, lqid_pmf** out) {
  if (!json_text) return fail_null("json_text");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new lqid_pmf{lqid::parse_pmf(json_text)}; });
}

lqid_status lqid_pmf_read_file(const char* path, lqid_pmf** out) {
  if (!path) return fail_null("path");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new lqid_pmf{lqid::load_pmf_file(path)}; });
}

lqid_status lqid_pmf_to_json(const lqid_pmf* pmf, char** json_out) {
  if (!pmf) return fail_null("pmf");
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::to_json(pmf->value).dump(2) + "\n", json_out); });
  return g != LQID_OK ? g : rc;
}

int lqid_pmf_dim(const lqid_pmf* pmf) { return pmf ? pmf->value.dim() : 0; }

size_t lqid_pmf_atom_count(const lqid_pmf* pmf) { return pmf ? pmf->value.size() : 0; }

void lqid_pmf_free(lqid_pmf* pmf) { delete pmf; }

lqid_status lqid_pmf_product(const lqid_pmf* a, const lqid_pmf* b, lqid_pmf** out) {
  if (!a) return fail_null("a");
  if (!b) return fail_null("b");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new lqid_pmf{lqid::product(a->value, b->value)}; });
}

lqid_status lqid_pmf_affine(const lqid_pmf* pmf, const int64_t* matrix_row_major,
                            const int64_t* shift, lqid_pmf** out) {
  if (!pmf) return fail_null("pmf");
  if (!matrix_row_major) return fail_null("matrix_row_major");
  if (!shift) return fail_null("shift");
  if (!out) return fail_null("out");
  return guarded([&] {
    const int d = pmf->value.dim();
    std::vector<std::int64_t> m(matrix_row_major,
                                matrix_row_major + static_cast<std::size_t>(d) * d);
    lqid::Index v(shift, shift + d);
    *out = new lqid_pmf{lqid::affine(pmf->value, m, v)};
  });
}

lqid_status lqid_analyze(const lqid_pmf* pmf, const lqid_options* opts, lqid_verdict** out) {
  if (!pmf) return fail_null("pmf");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new lqid_verdict{lqid::classify(pmf->value, to_options(opts))}; });
}

lqid_verdict_kind lqid_verdict_get_kind(const lqid_verdict* v) {
  switch (v->value.kind) {
    case lqid::Verdict::Kind::InfinitelyDivisible: return LQID_VERDICT_INFINITELY_DIVISIBLE;
    case lqid::Verdict::Kind::QuasiOnly: return LQID_VERDICT_QUASI_ONLY;
    case lqid::Verdict::Kind::NotQuasi: return LQID_VERDICT_NOT_QUASI;
  }
  return LQID_VERDICT_NOT_QUASI;
}

lqid_status lqid_verdict_to_json(const lqid_verdict* v, char** json_out) {
  if (!v) return fail_null("v");
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::to_json(v->value).dump(2) + "\n", json_out); });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_verdict_render_text(const lqid_verdict* v, char** text_out) {
  if (!v) return fail_null("v");
  if (!text_out) return fail_null("text_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::render_verdict_text(v->value), text_out); });
  return g != LQID_OK ? g : rc;
}

void lqid_verdict_free(lqid_verdict* v) { delete v; }

lqid_status lqid_cw_test(const lqid_pmf* pmf, const lqid_options* opts, lqid_cw_report** out) {
  if (!pmf) return fail_null("pmf");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new lqid_cw_report{lqid::cw_test(pmf->value, to_options(opts))}; });
}

int lqid_cw_report_consistent(const lqid_cw_report* r) {
  return r && r->value.consistent ? 1 : 0;
}

lqid_status lqid_cw_report_to_json(const lqid_cw_report* r, char** json_out) {
  if (!r) return fail_null("r");
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::to_json(r->value).dump(2) + "\n", json_out); });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_cw_report_render_text(const lqid_cw_report* r, char** text_out) {
  if (!r) return fail_null("r");
  if (!text_out) return fail_null("text_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::render_cw_text(r->value), text_out); });
  return g != LQID_OK ? g : rc;
}

void lqid_cw_report_free(lqid_cw_report* r) { delete r; }

lqid_status lqid_factorize(const lqid_pmf* pmf, const lqid_options* opts,
                           lqid_factorization** out) {
  if (!pmf) return fail_null("pmf");
  if (!out) return fail_null("out");
  return guarded(
      [&] { *out = new lqid_factorization{lqid::factorize(pmf->value, to_options(opts))}; });
}

lqid_status lqid_factorization_factor_json(const lqid_factorization* f, int which,
                                           char** json_out) {
  if (!f) return fail_null("f");
  if (!json_out) return fail_null("json_out");
  if (which != 1 && which != 2) {
    g_last_error = "which must be 1 or 2";
    return LQID_ERR_INVALID_ARGUMENT;
  }
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    const lqid::LatticePmf& mu = which == 1 ? f->value.mu1 : f->value.mu2;
    rc = emit_string(lqid::to_json(mu).dump(2) + "\n", json_out);
  });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_factorization_to_json(const lqid_factorization* f, char** json_out) {
  if (!f) return fail_null("f");
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] { rc = emit_string(lqid::to_json(f->value).dump(2) + "\n", json_out); });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_factorization_render_text(const lqid_factorization* f, char** text_out) {
  if (!f) return fail_null("f");
  if (!text_out) return fail_null("text_out");
  lqid_status rc = LQID_OK;
  lqid_status g =
      guarded([&] { rc = emit_string(lqid::render_factorization_text(f->value), text_out); });
  return g != LQID_OK ? g : rc;
}

void lqid_factorization_free(lqid_factorization* f) { delete f; }

lqid_status lqid_generate_poisson(double lambda, double tail, char** json_out) {
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    rc = emit_string(lqid::generated_to_json(lqid::generate_poisson(lambda, tail)).dump(2) + "\n",
                     json_out);
  });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_generate_geometric(double ratio, double tail, char** json_out) {
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    rc = emit_string(lqid::generated_to_json(lqid::generate_geometric(ratio, tail)).dump(2) + "\n",
                     json_out);
  });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_generate_bernoulli(double p, char** json_out) {
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    rc = emit_string(lqid::generated_to_json(lqid::generate_bernoulli(p)).dump(2) + "\n", json_out);
  });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_generate_dirac(const int64_t* point, int dim, char** json_out) {
  if (!point) return fail_null("point");
  if (!json_out) return fail_null("json_out");
  if (dim < 1) {
    g_last_error = "dim must be >= 1";
    return LQID_ERR_INVALID_ARGUMENT;
  }
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    lqid::Index n(point, point + dim);
    rc = emit_string(lqid::generated_to_json(lqid::generate_dirac(std::move(n))).dump(2) + "\n",
                     json_out);
  });
  return g != LQID_OK ? g : rc;
}

lqid_status lqid_generate_random(int dim, int radius, int atoms, double origin_mass,
                                 uint64_t seed, char** json_out) {
  if (!json_out) return fail_null("json_out");
  lqid_status rc = LQID_OK;
  lqid_status g = guarded([&] {
    rc = emit_string(
        lqid::generated_to_json(lqid::generate_random(dim, radius, atoms, origin_mass, seed))
                .dump(2) +
            "\n",
        json_out);
  });
  return g != LQID_OK ? g : rc;
}

}  // extern "C"
