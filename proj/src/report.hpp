#ifndef LQID_REPORT_HPP
#define LQID_REPORT_HPP

#include <string>

#include "cw.hpp"
#include "qid.hpp"

namespace lqid {

/// Plain-text reports with fixed column widths; layout is stable and
/// golden-file tested.
std::string render_verdict_text(const Verdict& v);
std::string render_cw_text(const CWReport& r);
std::string render_factorization_text(const Factorization& f);

std::string format_index(const Index& n);

}  // namespace lqid

#endif
