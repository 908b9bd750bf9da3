#include "cli/suite.hpp"

#include <cstdlib>

#include "bdglab/lab.hpp"
#include "cli/experiments.hpp"

namespace bdglab::cli {

namespace {

ExperimentConfig kind(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  return c;
}

GaugeSpec lambda_alpha_spec(double alpha) {
  GaugeSpec s;
  s.family = GaugeFamily::lambda_alpha;
  s.alpha = alpha;
  return s;
}

}  // namespace

std::vector<ExperimentConfig> full_suite() {
  std::vector<ExperimentConfig> s;
  s.push_back(kind("gauge_oracles"));
  s.push_back(kind("young"));
  s.push_back(kind("brownian_engine"));
  s.push_back(kind("ito_isometry"));
  s.push_back(kind("good_lambda"));
  s.push_back(kind("moment_constant"));

  auto bdg_b = kind("bdg_ratio");
  bdg_b.martingale = "B";
  s.push_back(bdg_b);
  auto bdg_sign = kind("bdg_ratio");
  bdg_sign.martingale = "sign_of_B1";
  s.push_back(bdg_sign);

  for (const char* pair : {"identity", "dominated"}) {
    auto l = kind("doob_orlicz");
    l.pair = pair;
    l.lambda = power_spec(2.0);
    l.replicates = 20000;
    s.push_back(l);
  }
  auto doob_t2 = kind("doob_orlicz");
  doob_t2.pair = "doob";
  doob_t2.lambda = power_spec(2.0);
  s.push_back(doob_t2);
  auto doob_l2 = doob_t2;
  doob_l2.lambda = lambda_alpha_spec(2.0);
  s.push_back(doob_l2);

  auto orlicz_t2 = kind("orlicz_bdg");
  orlicz_t2.lambda = power_spec(2.0);
  s.push_back(orlicz_t2);
  auto orlicz_l2 = orlicz_t2;
  orlicz_l2.lambda = lambda_alpha_spec(2.0);
  s.push_back(orlicz_l2);

  s.push_back(kind("jm_convergence"));

  auto lg_t4 = kind("lenglart");
  lg_t4.metric = "absolute";
  lg_t4.martingale = "B";
  lg_t4.phi = power_spec(4.0);
  s.push_back(lg_t4);
  auto lg_t = lg_t4;
  lg_t.phi = power_spec(1.0);
  s.push_back(lg_t);
  auto lg_sign = lg_t;
  lg_sign.martingale = "sign_of_B1";
  s.push_back(lg_sign);
  auto lg_mod = kind("lenglart");
  lg_mod.metric = "modular";
  lg_mod.martingale = "two_coord_mix";
  lg_mod.lambda = power_spec(2.0);
  lg_mod.phi = power_spec(1.0);
  lg_mod.q = 1.0;
  lg_mod.kappa = 1.0;
  s.push_back(lg_mod);
  auto lg_mod2 = lg_mod;
  lg_mod2.lambda = lambda_alpha_spec(2.0);
  lg_mod2.kappa = 4.0;
  s.push_back(lg_mod2);

  s.push_back(kind("norm_relations"));
  return s;
}

std::string resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("BDGLAB_OUTPUT_DIR"); env && *env) return env;
  return "bdglab_out";
}

VerifyOutcome verify_paper(const std::string& out_dir, bool fast, std::optional<std::uint64_t> seed) {
  VerifyOutcome v;
  for (ExperimentConfig c : full_suite()) {
    if (seed) c.seed = seed;
    auto rows = run_experiment(c, RunOptions{fast});
    v.rows.insert(v.rows.end(), rows.begin(), rows.end());
  }
  v.files = emit_report(v.rows, out_dir, "verify_paper");
  v.pass = all_pass(v.rows);
  return v;
}

}  // namespace bdglab::cli
