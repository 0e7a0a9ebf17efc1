#ifndef LQID_JSON_IO_HPP
#define LQID_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "cw.hpp"
#include "measures.hpp"
#include "qid.hpp"

namespace lqid {

/// {"dim": d, "atoms": [{"n": [..], "p": mass}, ..]}, atoms sorted
/// lexicographically by "n". Extra keys ("meta", ...) are preserved on
/// write and ignored on read.
nlohmann::json to_json(const LatticePmf& p);
LatticePmf pmf_from_json(const nlohmann::json& j);

/// Same layout with key "c" for the signed masses.
nlohmann::json to_json(const SignedLatticeMeasure& v);
SignedLatticeMeasure signed_measure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QLTriplet& t);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const CWReport& r);
nlohmann::json to_json(const Factorization& f);

LatticePmf parse_pmf(const std::string& text);
LatticePmf load_pmf_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lqid

#endif
