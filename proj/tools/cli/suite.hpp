#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bdglab/stats.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"

namespace bdglab::cli {

// The full verification suite, one config per checked statement.
std::vector<ExperimentConfig> full_suite();

// Explicit flag, else $BDGLAB_OUTPUT_DIR, else "bdglab_out".
std::string resolve_output_dir(const std::optional<std::string>& flag);

struct VerifyOutcome {
  std::vector<RatioReport> rows;
  EmittedFiles files;
  bool pass = false;
};

// Runs full_suite() (with `seed` overriding every config's seed when set)
// and writes verify_paper.csv / verify_paper_summary.txt into `out_dir`.
VerifyOutcome verify_paper(const std::string& out_dir, bool fast, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace bdglab::cli
