#include "cauchylab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cauchylab/compactness.hpp"
#include "cauchylab/error.hpp"

namespace cauchylab {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw InputError("config field '" + path + "': " + what);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) field_error(path, "expected an integer");
  return v.get<long long>();
}

// Reads the keys of one object, rejecting any it does not recognise.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) field_error(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) field_error(join(path_, key), "missing");
    return *v;
  }
  std::string at(const std::string& key) const { return join(path_, key); }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) out = as_double(*v, at(key));
  }
  void read(const std::string& key, int& out) {
    if (const json* v = find(key)) out = static_cast<int>(as_integer(*v, at(key)));
  }
  void read(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      const long long n = as_integer(*v, at(key));
      if (n < 0) field_error(at(key), "must be non-negative");
      out = static_cast<std::size_t>(n);
    }
  }
  void read_u64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) field_error(at(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) field_error(at(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) field_error(at(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  void read(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) field_error(at(key), "expected an array of numbers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) out.push_back(as_double((*v)[i], at(key) + "[" + std::to_string(i) + "]"));
    }
  }
  void read(const std::string& key, std::vector<int>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) field_error(at(key), "expected an array of integers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i)
        out.push_back(static_cast<int>(as_integer((*v)[i], at(key) + "[" + std::to_string(i) + "]")));
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) field_error(join(path_, it.key()), "unknown key");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Interval interval_from(const json& j, const std::string& path) {
  Fields f(j, path);
  const double c = as_double(f.require("center"), f.at("center"));
  const double r = as_double(f.require("radius"), f.at("radius"));
  f.finish();
  if (!(r > 0)) field_error(path + ".radius", "must be positive");
  return Interval(c, r);
}

json interval_to(const Interval& I) { return json{{"center", I.center()}, {"radius", I.radius()}}; }

Grid grid_from(const json& j, const std::string& path) {
  Fields f(j, path);
  Grid g;
  g.origin = as_double(f.require("origin"), f.at("origin"));
  g.step = as_double(f.require("step"), f.at("step"));
  const long long n = as_integer(f.require("count"), f.at("count"));
  f.finish();
  if (!(g.step > 0)) field_error(path + ".step", "must be positive");
  if (n < 2) field_error(path + ".count", "must be at least 2");
  g.count = static_cast<std::size_t>(n);
  return g;
}

FunctionSpec function_from(const json& j, const std::string& path) {
  Fields f(j, path);
  FunctionSpec s;
  f.read("kind", s.kind);
  if (s.kind.empty()) field_error(path + ".kind", "missing");
  if (const json* p = f.find("params")) {
    if (!p->is_object()) field_error(path + ".params", "expected an object");
    s.params = *p;
  }
  f.finish();
  return s;
}

json function_to(const FunctionSpec& s) { return json{{"kind", s.kind}, {"params", s.params}}; }

// Named parameter of a builtin; missing names take the default.
double param(const json& params, const std::string& where, const char* key, std::optional<double> fallback) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (!fallback) field_error(where + ".params." + key, "missing");
    return *fallback;
  }
  return as_double(*it, where + ".params." + key);
}

void only_keys(const json& params, const std::string& where, std::initializer_list<const char*> keys) {
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) field_error(where + ".params." + it.key(), "unknown parameter");
  }
}

std::string exclusion_name(Exclusion e) { return e == Exclusion::SymmetricPair ? "symmetric_pair" : "node_skip"; }

Exclusion exclusion_from(const std::string& s, const std::string& path) {
  if (s == "symmetric_pair") return Exclusion::SymmetricPair;
  if (s == "node_skip") return Exclusion::NodeSkip;
  field_error(path, "expected symmetric_pair or node_skip");
}

void positive(double v, const std::string& path) {
  if (!(v > 0) || !std::isfinite(v)) field_error(path, "must be positive");
}

void positive_ladder(const std::vector<double>& v, const std::string& path, bool allow_empty = false) {
  if (v.empty() && !allow_empty) field_error(path, "must be non-empty");
  for (std::size_t i = 0; i < v.size(); ++i) positive(v[i], path + "[" + std::to_string(i) + "]");
}

}  // namespace

LipschitzCurve CurveSpec::build() const {
  const std::string where = "curve";
  if (kind == "flat") {
    only_keys(params, where, {});
    return LipschitzCurve::flat();
  }
  if (kind == "affine") {
    only_keys(params, where, {"slope"});
    return LipschitzCurve::affine(param(params, where, "slope", std::nullopt));
  }
  if (kind == "sawtooth") {
    only_keys(params, where, {"amplitude", "period"});
    return LipschitzCurve::sawtooth(param(params, where, "amplitude", std::nullopt),
                                    param(params, where, "period", std::nullopt));
  }
  if (kind == "smooth_bump") {
    only_keys(params, where, {"height", "width"});
    return LipschitzCurve::smooth_bump(param(params, where, "height", std::nullopt),
                                       param(params, where, "width", std::nullopt));
  }
  field_error("curve.kind", "expected flat, affine, sawtooth or smooth_bump (got '" + kind + "')");
}

RealFunction FunctionSpec::build() const {
  const std::string& w = kind;
  if (kind == "constant") {
    only_keys(params, w, {"value"});
    return RealFunction::constant(param(params, w, "value", std::nullopt));
  }
  if (kind == "linear") {
    only_keys(params, w, {"slope", "intercept"});
    return RealFunction::linear(param(params, w, "slope", std::nullopt), param(params, w, "intercept", 0.0));
  }
  if (kind == "indicator") {
    only_keys(params, w, {"a", "b", "power"});
    return RealFunction::indicator(param(params, w, "a", std::nullopt), param(params, w, "b", std::nullopt),
                                   static_cast<int>(param(params, w, "power", 0.0)));
  }
  if (kind == "sign") {
    only_keys(params, w, {"center"});
    return RealFunction::sign(param(params, w, "center", 0.0));
  }
  if (kind == "truncated_log") {
    only_keys(params, w, {"center", "floor", "cap"});
    return RealFunction::truncated_log(param(params, w, "center", 0.0), param(params, w, "floor", 1e-12),
                                       param(params, w, "cap", 1e12));
  }
  if (kind == "bump") {
    only_keys(params, w, {"center", "radius", "height"});
    return RealFunction::bump(param(params, w, "center", 0.0), param(params, w, "radius", 1.0),
                              param(params, w, "height", 1.0));
  }
  if (kind == "piecewise_constant") {
    only_keys(params, w, {"breaks", "values"});
    auto vec = [&](const char* key) {
      auto it = params.find(key);
      if (it == params.end() || !it->is_array()) field_error(w + ".params." + key, "expected an array");
      std::vector<double> out;
      for (const auto& v : *it) out.push_back(as_double(v, w + ".params." + key));
      return out;
    };
    return RealFunction::piecewise_constant(vec("breaks"), vec("values"));
  }
  if (kind == "csv") return RealFunction::sampled(sample(std::nullopt));
  throw InputError("unknown function kind '" + kind + "'");
}

SampledFunction FunctionSpec::sample(const std::optional<Grid>& grid) const {
  if (is_csv()) {
    auto it = params.find("path");
    if (it == params.end() || !it->is_string()) field_error("csv.params.path", "expected a file path");
    SampledFunction s = read_csv_file(it->get<std::string>());
    if (grid && !same_grid(*grid, s.grid()))
      throw InputError("CSV '" + it->get<std::string>() + "' does not lie on the configured grid");
    return s;
  }
  if (!grid) throw InputError("config field 'grid': missing (needed to sample '" + kind + "')");
  return build().sample(*grid);
}

void ExperimentConfig::validate() const {
  if (threads < 0) field_error("threads", "must be non-negative");
  (void)curve.build();
  if (grid) grid->validate();
  positive(op.truncation_steps, "operator.truncation");
  if (b && !b->is_csv()) (void)b->build();
  if (f && !f->is_csv()) (void)f->build();
  if (!(p > 1.0) || !std::isfinite(p)) field_error("p", "must lie in (1, inf)");
  if (kernel.samples == 0) field_error("kernel.samples", "must be positive");
  positive(kernel.span, "kernel.span");
  if (eval.cells_per_gap < 1) field_error("eval.cells_per_gap", "must be positive");
  if (bmo.stride == 0) field_error("bmo.stride", "must be positive");
  if (bmo.min_level < 0) field_error("bmo.min_level", "must be non-negative");
  positive_ladder(bmo.delta_ladder, "bmo.delta_ladder");
  positive_ladder(bmo.R_ladder, "bmo.R_ladder");
  positive_ladder(homogeneity.M_ladder, "homogeneity.M_ladder");
  if (homogeneity.nodes < 2) field_error("homogeneity.nodes", "must be at least 2");
  if (homogeneity.eval_points == 0) field_error("homogeneity.eval_points", "must be positive");
  positive(homogeneity.slack, "homogeneity.slack");
  positive(homogeneity.slope_tol, "homogeneity.slope_tol");
  if (lemma41.k_ladder.empty()) field_error("lemma41.k_ladder", "must be non-empty");
  if (!(lemma41.A1 > 4)) field_error("lemma41.A1", "must exceed 4");
  if (lemma41.cells == 0) field_error("lemma41.cells", "must be positive");
  if (lemma41.nodes < 2) field_error("lemma41.nodes", "must be at least 2");
  if (lemma41.intermediate_points == 0) field_error("lemma41.intermediate_points", "must be positive");
  positive(lemma41.intermediate_slack, "lemma41.intermediate_slack");
  if (fk.shifts.empty()) field_error("fk.shifts", "must be non-empty");
  positive_ladder(fk.t_ladder, "fk.t_ladder");
  positive_ladder(fk.z_ladder, "fk.z_ladder", true);
  positive_ladder(fk.tail_ladder, "fk.tail_ladder", true);
  positive(fk.tail_window_factor, "fk.tail_window_factor");
  if (fk.cells_per_gap < 1) field_error("fk.cells_per_gap", "must be positive");
  if (fk.split < 0 || fk.split >= 0.5) field_error("fk.split", "must lie in [0, 1/2)");
  (void)witness_case_from_string(witness.kind);
  if (witness.length == 0) field_error("witness.length", "must be positive");
  if (!(witness.ratio > 1)) field_error("witness.ratio", "must exceed 1");
  positive(witness.C_eps, "witness.C_eps");
  positive(witness.radius, "witness.radius");
  if (witness.R1 < 0) field_error("witness.R1", "must be non-negative");
  if (witness.nodes_per_radius < 2) field_error("witness.nodes_per_radius", "must be at least 2");
  positive(witness.window_factor, "witness.window_factor");
  if (witness.cells_per_gap < 1) field_error("witness.cells_per_gap", "must be positive");
  if (witness.k_ladder.empty()) field_error("witness.k_ladder", "must be non-empty");
  if (witness.annulus_cells == 0) field_error("witness.annulus_cells", "must be positive");
  positive_ladder(norm.scales, "norm.scales");
  if (norm.cells_per_gap < 1) field_error("norm.cells_per_gap", "must be positive");
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["prefactor"] = c.prefactor;
  j["curve"] = {{"kind", c.curve.kind}, {"params", c.curve.params}};
  if (c.grid) j["grid"] = {{"origin", c.grid->origin}, {"step", c.grid->step}, {"count", c.grid->count}};
  j["operator"] = {{"truncation", c.op.truncation_steps}, {"exclusion", exclusion_name(c.op.exclusion)}};
  if (c.b) j["b"] = function_to(*c.b);
  if (c.f) j["f"] = function_to(*c.f);
  if (c.window) j["window"] = interval_to(*c.window);
  j["p"] = c.p;
  j["kernel"] = {{"samples", c.kernel.samples}, {"span", c.kernel.span}};
  j["eval"] = {{"cells_per_gap", c.eval.cells_per_gap}, {"convergence_points", c.eval.convergence_points}};
  j["bmo"] = {{"stride", c.bmo.stride},
              {"min_level", c.bmo.min_level},
              {"delta_ladder", c.bmo.delta_ladder},
              {"R_ladder", c.bmo.R_ladder},
              {"median_checks", c.bmo.median_checks}};
  j["homogeneity"] = {{"M_ladder", c.homogeneity.M_ladder},
                      {"nodes", c.homogeneity.nodes},
                      {"eval_points", c.homogeneity.eval_points},
                      {"slack", c.homogeneity.slack},
                      {"slope_tol", c.homogeneity.slope_tol}};
  j["lemma41"] = {{"k_ladder", c.lemma41.k_ladder},
                  {"A1", c.lemma41.A1},
                  {"cells", c.lemma41.cells},
                  {"nodes", c.lemma41.nodes},
                  {"intermediate_points", c.lemma41.intermediate_points},
                  {"intermediate_slack", c.lemma41.intermediate_slack}};
  if (c.lemma41.interval) j["lemma41"]["interval"] = interval_to(*c.lemma41.interval);
  j["fk"] = {{"shifts", c.fk.shifts},
             {"t_ladder", c.fk.t_ladder},
             {"z_ladder", c.fk.z_ladder},
             {"tail_ladder", c.fk.tail_ladder},
             {"tail_window_factor", c.fk.tail_window_factor},
             {"cells_per_gap", c.fk.cells_per_gap},
             {"split", c.fk.split}};
  j["witness"] = {{"case", c.witness.kind},
                  {"A1", c.witness.A1},
                  {"A2", c.witness.A2},
                  {"length", c.witness.length},
                  {"ratio", c.witness.ratio},
                  {"C_eps", c.witness.C_eps},
                  {"radius", c.witness.radius},
                  {"R1", c.witness.R1},
                  {"nodes_per_radius", c.witness.nodes_per_radius},
                  {"window_factor", c.witness.window_factor},
                  {"cells_per_gap", c.witness.cells_per_gap},
                  {"min_oscillation", c.witness.min_oscillation},
                  {"k_ladder", c.witness.k_ladder},
                  {"annulus_cells", c.witness.annulus_cells}};
  j["norm"] = {{"scales", c.norm.scales}, {"cells_per_gap", c.norm.cells_per_gap}};
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Fields root(j, "");
  root.read_u64("seed", c.seed);
  root.read("threads", c.threads);
  root.read("prefactor", c.prefactor);
  if (const json* v = root.find("curve")) {
    Fields f(*v, "curve");
    f.read("kind", c.curve.kind);
    if (const json* p = f.find("params")) {
      if (!p->is_object()) field_error("curve.params", "expected an object");
      c.curve.params = *p;
    }
    f.finish();
  }
  if (const json* v = root.find("grid")) c.grid = grid_from(*v, "grid");
  if (const json* v = root.find("operator")) {
    Fields f(*v, "operator");
    f.read("truncation", c.op.truncation_steps);
    std::string mode = exclusion_name(c.op.exclusion);
    f.read("exclusion", mode);
    c.op.exclusion = exclusion_from(mode, "operator.exclusion");
    f.finish();
  }
  if (const json* v = root.find("b")) c.b = function_from(*v, "b");
  if (const json* v = root.find("f")) c.f = function_from(*v, "f");
  if (const json* v = root.find("window")) c.window = interval_from(*v, "window");
  root.read("p", c.p);
  if (const json* v = root.find("kernel")) {
    Fields f(*v, "kernel");
    f.read("samples", c.kernel.samples);
    f.read("span", c.kernel.span);
    f.finish();
  }
  if (const json* v = root.find("eval")) {
    Fields f(*v, "eval");
    f.read("cells_per_gap", c.eval.cells_per_gap);
    f.read("convergence_points", c.eval.convergence_points);
    f.finish();
  }
  if (const json* v = root.find("bmo")) {
    Fields f(*v, "bmo");
    f.read("stride", c.bmo.stride);
    f.read("min_level", c.bmo.min_level);
    f.read("delta_ladder", c.bmo.delta_ladder);
    f.read("R_ladder", c.bmo.R_ladder);
    f.read("median_checks", c.bmo.median_checks);
    f.finish();
  }
  if (const json* v = root.find("homogeneity")) {
    Fields f(*v, "homogeneity");
    f.read("M_ladder", c.homogeneity.M_ladder);
    f.read("nodes", c.homogeneity.nodes);
    f.read("eval_points", c.homogeneity.eval_points);
    f.read("slack", c.homogeneity.slack);
    f.read("slope_tol", c.homogeneity.slope_tol);
    f.finish();
  }
  if (const json* v = root.find("lemma41")) {
    Fields f(*v, "lemma41");
    if (const json* I = f.find("interval")) c.lemma41.interval = interval_from(*I, "lemma41.interval");
    f.read("k_ladder", c.lemma41.k_ladder);
    f.read("A1", c.lemma41.A1);
    f.read("cells", c.lemma41.cells);
    f.read("nodes", c.lemma41.nodes);
    f.read("intermediate_points", c.lemma41.intermediate_points);
    f.read("intermediate_slack", c.lemma41.intermediate_slack);
    f.finish();
  }
  if (const json* v = root.find("fk")) {
    Fields f(*v, "fk");
    f.read("shifts", c.fk.shifts);
    f.read("t_ladder", c.fk.t_ladder);
    f.read("z_ladder", c.fk.z_ladder);
    f.read("tail_ladder", c.fk.tail_ladder);
    f.read("tail_window_factor", c.fk.tail_window_factor);
    f.read("cells_per_gap", c.fk.cells_per_gap);
    f.read("split", c.fk.split);
    f.finish();
  }
  if (const json* v = root.find("witness")) {
    Fields f(*v, "witness");
    f.read("case", c.witness.kind);
    f.read("A1", c.witness.A1);
    f.read("A2", c.witness.A2);
    f.read("length", c.witness.length);
    f.read("ratio", c.witness.ratio);
    f.read("C_eps", c.witness.C_eps);
    f.read("radius", c.witness.radius);
    f.read("R1", c.witness.R1);
    f.read("nodes_per_radius", c.witness.nodes_per_radius);
    f.read("window_factor", c.witness.window_factor);
    f.read("cells_per_gap", c.witness.cells_per_gap);
    f.read("min_oscillation", c.witness.min_oscillation);
    f.read("k_ladder", c.witness.k_ladder);
    f.read("annulus_cells", c.witness.annulus_cells);
    f.finish();
  }
  if (const json* v = root.find("norm")) {
    Fields f(*v, "norm");
    f.read("scales", c.norm.scales);
    f.read("cells_per_gap", c.norm.cells_per_gap);
    f.finish();
  }
  root.finish();
  c.validate();
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(s.substr(0, dots));
      const int hi = std::stoi(s.substr(dots + 2));
      if (hi < lo) throw InputError("empty range '" + s + "'");
      for (int k = lo; k <= hi; ++k) out.push_back(k);
      return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const InputError&) {
    throw;
  } catch (const std::logic_error&) {
    throw InputError("cannot parse integer list '" + s + "'");
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw InputError("trailing characters in '" + item + "'");
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::logic_error&) {
    throw InputError("cannot parse number list '" + s + "'");
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

}  // namespace cauchylab
