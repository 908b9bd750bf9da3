#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bdglab/csv.hpp"
#include "bdglab/random.hpp"
#include "cli/experiments.hpp"

namespace bdglab::cli {

namespace {

std::size_t group_rank(const std::string& experiment) {
  const auto& cat = experiment_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (cat[i].name == experiment) return i;
  }
  return cat.size();
}

std::string verdict(const RatioReport& r) { return verdict_holds(r) ? "pass" : "fail"; }

}  // namespace

std::string params_hash(const std::string& params) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(params)));
  return buf;
}

std::vector<RatioReport> grouped(const std::vector<RatioReport>& rows) {
  std::vector<RatioReport> out = rows;
  std::stable_sort(out.begin(), out.end(), [](const RatioReport& a, const RatioReport& b) {
    const auto ra = group_rank(a.experiment), rb = group_rank(b.experiment);
    if (ra != rb) return ra < rb;
    return ra == experiment_catalog().size() && a.experiment < b.experiment;
  });
  return out;
}

bool all_pass(const std::vector<RatioReport>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const RatioReport& r) { return verdict_holds(r); });
}

void write_csv(std::ostream& out, const std::vector<RatioReport>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_report: empty report list");
  out << "experiment,params_hash,lhs_mean,lhs_stderr,rhs_mean,rhs_stderr,ratio,bound,grid_n,verdict\n";
  for (const auto& r : grouped(rows)) {
    out << r.experiment << ',' << params_hash(r.params) << ',' << format_double(r.lhs.mean) << ','
        << format_double(r.lhs.std_error) << ',' << format_double(r.rhs.mean) << ','
        << format_double(r.rhs.std_error) << ',' << format_double(r.ratio) << ','
        << (r.bound ? format_double(*r.bound) : std::string()) << ',' << r.grid_n << ',' << verdict(r) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<RatioReport>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_report: empty report list");
  std::string current;
  std::size_t failed = 0;
  char buf[256];
  for (const auto& r : grouped(rows)) {
    if (r.experiment != current) {
      current = r.experiment;
      out << "== " << current << '\n';
    }
    const bool ok = verdict_holds(r);
    failed += ok ? 0 : 1;
    std::snprintf(buf, sizeof buf, "  [%s] ratio=%-12.6g bound=%-10s ", ok ? "pass" : "FAIL", r.ratio,
                  r.bound ? format_double(*r.bound).substr(0, 10).c_str() : "-");
    out << buf << r.anchor << " {" << r.params << "}\n";
  }
  out << rows.size() - failed << " of " << rows.size() << " checks passed";
  if (failed) out << ", " << failed << " failed";
  out << '\n';
}

EmittedFiles emit_report(const std::vector<RatioReport>& rows, const std::string& dir, const std::string& stem) {
  if (rows.empty()) throw std::invalid_argument("emit_report: empty report list");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  EmittedFiles files{(std::filesystem::path(dir) / (stem + ".csv")).string(),
                     (std::filesystem::path(dir) / (stem + "_summary.txt")).string()};
  std::ofstream csv(files.csv, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write report file '" + files.csv + "'");
  write_csv(csv, rows);
  std::ofstream summary(files.summary);
  if (!summary) throw std::runtime_error("cannot write report file '" + files.summary + "'");
  write_summary(summary, rows);
  if (!csv || !summary) throw std::runtime_error("writing reports to '" + dir + "' failed");
  return files;
}

}  // namespace bdglab::cli
