#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cauchylab/cli.hpp"
#include "cauchylab/config.hpp"
#include "cauchylab/error.hpp"

using namespace cauchylab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cauchylab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("round trip") {
    const auto cfg = parse_config(R"({
      "seed": 99, "p": 3.5, "prefactor": true,
      "curve": {"kind": "sawtooth", "params": {"amplitude": 0.5, "period": 2}},
      "grid": {"origin": -1.0, "step": 0.1, "count": 21},
      "operator": {"truncation": 2, "exclusion": "node_skip"},
      "b": {"kind": "truncated_log", "params": {"floor": 1e-6}},
      "window": {"center": 0.3, "radius": 5},
      "lemma41": {"interval": {"center": 0.1, "radius": 0.2}, "k_ladder": [3, 5]},
      "witness": {"case": "far", "C_eps": 2.0, "radius": 0.25}
    })");
    CHECK(cfg.seed == 99);
    CHECK(cfg.op.exclusion == Exclusion::NodeSkip);
    CHECK(cfg.grid->count == 21);
    const auto j = to_json(cfg);
    const auto back = config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(parse_config(j.dump()).lemma41.interval->radius() == 0.2);
  }

  TEST_CASE("diagnostics name the field") {
    auto message = [](const std::string& text) {
      try {
        parse_config(text);
      } catch (const InputError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message(R"({"grid": {"origin": 0, "count": 4}})").find("grid.step") != std::string::npos);
    CHECK(message(R"({"grid": {"origin": 0, "step": -1, "count": 4}})").find("grid.step") != std::string::npos);
    CHECK(message(R"({"bmo": {"strid": 2}})").find("bmo.strid") != std::string::npos);
    CHECK(message(R"({"p": 1})").find("'p'") != std::string::npos);
    CHECK(message(R"({"curve": {"kind": "spiral"}})").find("curve.kind") != std::string::npos);
    CHECK(message("{\n\"seed\": 1,\n\"p\": }").find("line 3") != std::string::npos);
    CHECK(message(R"({"b": {"kind": "bump", "params": {"width": 1}}})").find("params.width") != std::string::npos);
  }

  TEST_CASE("list parsing") {
    CHECK(parse_int_list("3..6") == std::vector<int>{3, 4, 5, 6});
    CHECK(parse_int_list("1,5") == std::vector<int>{1, 5});
    CHECK(parse_double_list("16,64.5") == std::vector<double>{16.0, 64.5});
    CHECK_THROWS_AS(parse_int_list("6..3"), InputError);
    CHECK_THROWS_AS(parse_double_list("1,x"), InputError);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("verify-kernel passes and writes reports") {
    ExperimentConfig cfg;
    cfg.kernel.samples = 2000;
    const auto dir = scratch("kernel");
    std::ostringstream log;
    CHECK(run(cfg, "verify-kernel", dir.string(), log) == 0);
    CHECK(fs::exists(dir / "kernel_size.csv"));
    CHECK(fs::exists(dir / "kernel_size.json"));
    CHECK(fs::exists(dir / "run.json"));
  }

  TEST_CASE("input errors exit with 2") {
    std::ostringstream log;
    ExperimentConfig cfg;
    cfg.b = FunctionSpec{"constant", {{"value", 1.0}}};
    cfg.lemma41.interval = Interval(0.0, 1.0);
    CHECK(run(cfg, "lemma41", scratch("const").string(), log) == 2);
    CHECK(run(ExperimentConfig{}, "bmo-norm", scratch("nob").string(), log) == 2);
    CHECK(run(ExperimentConfig{}, "no-such-command", scratch("bad").string(), log) == 2);
    CHECK(log.str().find("error:") != std::string::npos);
  }

  TEST_CASE("bound violations exit with 1") {
    // an absurd slack turns the homogeneity rows red
    ExperimentConfig cfg;
    cfg.homogeneity.M_ladder = {16, 64};
    cfg.homogeneity.nodes = 256;
    cfg.homogeneity.slack = 100.0;
    std::ostringstream log;
    CHECK(run(cfg, "verify-homogeneity", scratch("viol").string(), log) == 1);
  }

  TEST_CASE("identical configs give identical bytes") {
    ExperimentConfig cfg;
    cfg.kernel.samples = 3000;
    cfg.seed = 42;
    const auto a = scratch("det_a"), b = scratch("det_b");
    std::ostringstream log;
    cfg.threads = 1;
    REQUIRE(run(cfg, "verify-kernel", a.string(), log) == 0);
    REQUIRE(run(cfg, "verify-kernel", b.string(), log) == 0);
    for (const auto& e : fs::directory_iterator(a)) CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
}
