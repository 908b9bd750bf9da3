#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bdglab/stats.hpp"

namespace bdglab::cli {

// 16 hex digits of FNV-1a over the canonical params string.
std::string params_hash(const std::string& params);

// Rows grouped by experiment kind (catalog order, unknown kinds last) with
// the original order kept inside each group.
std::vector<RatioReport> grouped(const std::vector<RatioReport>& rows);

bool all_pass(const std::vector<RatioReport>& rows);

// Columns experiment,params_hash,lhs_mean,lhs_stderr,rhs_mean,rhs_stderr,
// ratio,bound,grid_n,verdict. Throws std::invalid_argument on no rows.
void write_csv(std::ostream& out, const std::vector<RatioReport>& rows);

// One line per row: anchor, params, ratio, bound, verdict; then totals.
void write_summary(std::ostream& out, const std::vector<RatioReport>& rows);

struct EmittedFiles {
  std::string csv;
  std::string summary;
};

// Writes <dir>/<stem>.csv and <dir>/<stem>_summary.txt, creating `dir`.
// Throws std::runtime_error when a file cannot be written.
EmittedFiles emit_report(const std::vector<RatioReport>& rows, const std::string& dir, const std::string& stem);

}  // namespace bdglab::cli
