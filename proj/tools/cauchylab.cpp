// Experiment driver: one subcommand per run, reports into --out-dir.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cauchylab/cli.hpp"
#include "cauchylab/config.hpp"
#include "cauchylab/error.hpp"

using namespace cauchylab;

namespace {

struct Flags {
  std::string config;
  std::string out_dir = "reports";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> p;
  std::optional<double> L;
  std::string M_ladder;
  std::string k_ladder;
  std::string interval;
  std::string b_csv;
  std::string f_csv;
  std::string witness_case;
  std::optional<std::size_t> samples;
};

// Flags win over the config file.
void apply(const Flags& fl, ExperimentConfig& cfg) {
  if (fl.seed) cfg.seed = *fl.seed;
  if (fl.threads) cfg.threads = *fl.threads;
  if (fl.p) cfg.p = *fl.p;
  if (fl.L) {
    if (*fl.L == 0.0) {
      cfg.curve = CurveSpec{};
    } else {
      cfg.curve.kind = "affine";
      cfg.curve.params = {{"slope", *fl.L}};
    }
  }
  if (!fl.M_ladder.empty()) cfg.homogeneity.M_ladder = parse_double_list(fl.M_ladder);
  if (!fl.k_ladder.empty()) {
    cfg.lemma41.k_ladder = parse_int_list(fl.k_ladder);
    cfg.witness.k_ladder = cfg.lemma41.k_ladder;
  }
  if (!fl.interval.empty()) {
    const auto v = parse_double_list(fl.interval);
    if (v.size() != 2 || !(v[1] > 0)) throw InputError("--interval expects x,r with r > 0");
    cfg.lemma41.interval = Interval(v[0], v[1]);
  }
  if (!fl.b_csv.empty()) cfg.b = FunctionSpec{"csv", {{"path", fl.b_csv}}};
  if (!fl.f_csv.empty()) cfg.f = FunctionSpec{"csv", {{"path", fl.f_csv}}};
  if (!fl.witness_case.empty()) cfg.witness.kind = fl.witness_case;
  if (fl.samples) cfg.kernel.samples = *fl.samples;
  cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy integral and commutator experiments on Lipschitz curves"};
  app.require_subcommand(1);
  Flags fl;
  app.add_option("--config", fl.config, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out-dir", fl.out_dir, "directory for report files");
  app.add_option("--seed", fl.seed, "RNG seed for randomized sweeps");
  app.add_option("--threads", fl.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--p", fl.p, "L^p exponent");
  app.add_option("--L", fl.L, "affine curve slope (0 = flat)");
  app.add_option("--M-ladder", fl.M_ladder, "homogeneity ladder, e.g. 16,64,256");
  app.add_option("--k-ladder", fl.k_ladder, "annulus ladder, e.g. 3..8");
  app.add_option("--interval", fl.interval, "base interval as x,r");
  app.add_option("--b", fl.b_csv, "symbol b as CSV (x,re,im)");
  app.add_option("--f", fl.f_csv, "input f as CSV (x,re,im)");
  app.add_option("--case", fl.witness_case, "witness case: small, large or far");
  app.add_option("--samples", fl.samples, "kernel-check sample count");
  app.fallthrough();
  for (const auto& name : subcommands()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg = fl.config.empty() ? ExperimentConfig{} : load_config(fl.config);
    apply(fl, cfg);
    return run(cfg, app.get_subcommands().front()->get_name(), fl.out_dir, std::cerr);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
