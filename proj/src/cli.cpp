#include "cauchylab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "cauchylab/bmo.hpp"
#include "cauchylab/commutator.hpp"
#include "cauchylab/compactness.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/kernel.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/testfn.hpp"

namespace cauchylab {

namespace fs = std::filesystem;

namespace {

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void report(const BoundReport& r) {
    {
      std::ofstream out = open(r.name() + ".csv");
      r.write_csv(out);
    }
    std::ofstream out = open(r.name() + ".json");
    out << r.to_json().dump(2) << '\n';
    names_.push_back(r.name());
    passed_ = passed_ && r.passed();
  }

  /// Plain table: header line then rows.
  void table(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open(name + ".csv");
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
      out << '\n';
    }
    tables_.push_back(name);
  }

  void finish(const std::string& subcommand, const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["passed"] = passed_;
    j["reports"] = names_;
    j["tables"] = tables_;
    j["config"] = to_json(cfg);
    std::ofstream out = open("run.json");
    out << j.dump(2) << '\n';
  }

  bool passed() const { return passed_; }

 private:
  std::ofstream open(const std::string& file) const {
    std::ofstream out(dir_ / file);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
    return out;
  }

  fs::path dir_;
  std::vector<std::string> names_;
  std::vector<std::string> tables_;
  bool passed_ = true;
};

const FunctionSpec& need(const std::optional<FunctionSpec>& s, const char* field) {
  if (!s) throw InputError(std::string("config field '") + field + "': missing");
  return *s;
}

SampledFunction sampled(const ExperimentConfig& cfg, const std::optional<FunctionSpec>& s, const char* field) {
  return need(s, field).sample(cfg.grid);
}

Interval grid_span(const Grid& g) {
  return Interval::from_endpoints(g.front() - 0.5 * g.step, g.back() + 0.5 * g.step);
}

Interval window_or(const ExperimentConfig& cfg, const Grid& g, double factor) {
  if (cfg.window) return *cfg.window;
  const Interval span = grid_span(g);
  return Interval(span.center(), factor * span.radius());
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------- subcommands

void eval_operator(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const SampledFunction f = sampled(cfg, cfg.f, "f");
  const Grid& g = f.grid();
  const Interval window = window_or(cfg, g, 2.0);
  const PvConfig pv = PvConfig::for_grid(g, cfg.op.truncation_steps, cfg.op.exclusion);
  const EvalPlan plan = output_plan(f, window, cfg.eval.cells_per_gap);
  const PlanValues values = apply_pv(kernel, f, plan, pv);

  std::vector<std::vector<double>> rows;
  for (const auto& piece : values.pieces)
    for (std::size_t i = 0; i < piece.size(); ++i) rows.push_back({piece.node(i), piece[i].real(), piece[i].imag()});
  out.table("operator_output", {"x", "re", "im"}, rows);

  BoundReport rep("pv_evaluation", "output of h sum_{y != x} K(x, y) f(y) over a graded window", {});
  rep.set_summary("points", static_cast<double>(plan.size()));
  rep.set_summary("step", g.step);
  rep.set_summary("truncation", pv.truncation);
  rep.set_summary("input_norm_p", lp_norm(f, cfg.p));
  rep.set_summary("output_norm_p", lp_norm(values, cfg.p));
  rep.set_summary("window_center", window.center());
  rep.set_summary("window_radius", window.radius());
  out.report(rep);

  if (!cfg.eval.convergence_points.empty()) {
    if (need(cfg.f, "f").is_csv()) throw InputError("convergence study needs a closed-form f");
    const Interval span = grid_span(g);
    const auto conv = convergence_study(kernel, cfg.f->build(), span.left(), span.right(), g.count,
                                        cfg.eval.convergence_points, cfg.op.exclusion);
    BoundReport c("pv_convergence", "|C_{h/2} f - C_{h/4} f| <= |C_h f - C_{h/2} f|", {"x"});
    std::vector<std::vector<double>> table;
    for (const auto& r : conv) {
      const double fine = std::abs(r.middle - r.fine);
      const double coarse = std::abs(r.coarse - r.middle);
      c.add({r.x}, fine, coarse, fine <= coarse);
      table.push_back({r.x, r.coarse.real(), r.coarse.imag(), r.middle.real(), r.middle.imag(), r.fine.real(),
                       r.fine.imag(), r.richardson});
    }
    out.table("pv_convergence_table",
              {"x", "coarse_re", "coarse_im", "middle_re", "middle_im", "fine_re", "fine_im", "richardson"}, table);
    out.report(c);
  }
}

// sum |f_i - c| minimised over node values c, via sorted prefix sums
double min_node_deviation(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + v[i];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = v[i];
    const double below = c * static_cast<double>(i) - prefix[i];
    const double above = (prefix[n] - prefix[i + 1]) - c * static_cast<double>(n - i - 1);
    best = std::min(best, below + above);
  }
  return best;
}

void bmo_norm_cmd(const ExperimentConfig& cfg, Output& out) {
  const SampledFunction b = sampled(cfg, cfg.b, "b");
  const Grid& g = b.grid();
  const Interval window = window_or(cfg, g, 1.0);
  const auto sweep = dyadic_sweep(g, window, cfg.bmo.stride, cfg.bmo.min_level);
  if (sweep.empty()) throw InputError("dyadic sweep is empty; widen the window");
  const auto osc = oscillations(b, sweep);

  std::map<double, std::pair<double, double>> levels;  // length -> (max, centre)
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    auto [it, fresh] = levels.try_emplace(sweep[i].measure(), osc[i], sweep[i].center());
    if (!fresh && osc[i] > it->second.first) it->second = {osc[i], sweep[i].center()};
  }
  std::vector<std::vector<double>> rows;
  double best = 0.0;
  for (const auto& [len, v] : levels) {
    rows.push_back({len, v.first, v.second});
    best = std::max(best, v.first);
  }
  out.table("bmo_levels", {"length", "max_oscillation", "argmax_center"}, rows);

  BoundReport rep("median_equivalence",
                  "(1/|I|) int_I |f - alpha_I(f)| <= 2 min_c (1/|I|) int_I |f - c| + 4h, c over node values",
                  {"center", "radius"});
  const std::size_t checks = std::min(cfg.bmo.median_checks, sweep.size());
  for (std::size_t k = 0; k < checks; ++k) {
    const Interval& I = sweep[k * sweep.size() / std::max<std::size_t>(checks, 1)];
    const double alpha = median(b, I).value;
    const double lhs = mean_deviation(b, I, alpha);
    const IndexRange r = nodes_in(g, I);
    std::vector<double> vals;
    for (std::size_t j = r.begin; j < r.end; ++j) vals.push_back(b[j].real());
    const double rhs = 2.0 * min_node_deviation(vals) / static_cast<double>(vals.size()) + 4.0 * g.step;
    rep.add({I.center(), I.radius()}, lhs, rhs, lhs <= rhs);
  }
  rep.set_summary("bmo_lower_bound", best);
  rep.set_summary("sweep_intervals", static_cast<double>(sweep.size()));
  out.report(rep);
}

void vmo_profile_cmd(const ExperimentConfig& cfg, Output& out) {
  const SampledFunction b = sampled(cfg, cfg.b, "b");
  const auto deltas = sorted(cfg.bmo.delta_ladder);
  const auto Rs = sorted(cfg.bmo.R_ladder);
  const VmoProfile prof = vmo_profile(b, deltas, Rs, cfg.bmo.stride);
  auto dump = [&](const char* name, const char* col, const std::vector<std::pair<double, double>>& c) {
    std::vector<std::vector<double>> rows;
    for (const auto& [x, v] : c) rows.push_back({x, v});
    out.table(name, {col, "sup_mean_oscillation"}, rows);
  };
  dump("vmo_small_scale", "delta", prof.small_scale);
  dump("vmo_large_scale", "R", prof.large_scale);
  dump("vmo_far_away", "R", prof.far_away);

  // Each family shrinks along its ladder, so the profiles are monotone.
  BoundReport rep("vmo_monotonicity",
                  "sup_{|I|<d1} M <= sup_{|I|<d2} M (d1<d2); sup_{|I|>R2} M <= sup_{|I|>R1} M; "
                  "sup_{I cap I(0,R2) empty} M <= sup_{I cap I(0,R1) empty} M (R1<R2)",
                  {"family", "parameter"});
  for (std::size_t i = 0; i + 1 < prof.small_scale.size(); ++i)
    rep.add({0.0, prof.small_scale[i].first}, prof.small_scale[i].second, prof.small_scale[i + 1].second,
            prof.small_scale[i].second <= prof.small_scale[i + 1].second);
  for (std::size_t i = 0; i + 1 < prof.large_scale.size(); ++i)
    rep.add({1.0, prof.large_scale[i + 1].first}, prof.large_scale[i + 1].second, prof.large_scale[i].second,
            prof.large_scale[i + 1].second <= prof.large_scale[i].second);
  for (std::size_t i = 0; i + 1 < prof.far_away.size(); ++i)
    rep.add({2.0, prof.far_away[i + 1].first}, prof.far_away[i + 1].second, prof.far_away[i].second,
            prof.far_away[i + 1].second <= prof.far_away[i].second);
  rep.add_note("family 0 = small scale, 1 = large scale, 2 = far away");
  out.report(rep);
}

void verify_kernel_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const KernelEstimateReports r = verify_kernel_estimates(kernel, cfg.kernel.samples, cfg.seed, cfg.kernel.span);
  out.report(r.size);
  out.report(r.smoothness);
  out.report(r.transposed);
}

void homogeneity_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const HomogeneityConfig hc{cfg.homogeneity.nodes, cfg.homogeneity.eval_points, cfg.homogeneity.slack};
  out.report(homogeneity_ladder(kernel.curve(), cfg.homogeneity.M_ladder, hc, cfg.homogeneity.slope_tol));
}

void lemma41_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const FunctionSpec& spec = need(cfg.b, "b");
  if (!cfg.lemma41.interval) throw InputError("config field 'lemma41.interval': missing");
  const Interval I = *cfg.lemma41.interval;
  RealFunction b = RealFunction::constant(0.0);
  TestFunction tf;
  BoundReport audit;
  if (spec.is_csv()) {
    const SampledFunction bs = spec.sample(cfg.grid);
    tf = build_test_function(bs, I, cfg.p);
    audit = audit_test_function(tf, bs);
    b = RealFunction::sampled(bs);
  } else {
    b = spec.build();
    tf = build_test_function(b, I, cfg.p, cfg.lemma41.nodes);
    audit = audit_test_function(tf, b.sample(tf.f.grid()));
  }
  out.report(audit);
  const AnnulusConfig ac{cfg.lemma41.A1, cfg.lemma41.cells};
  out.report(annulus_ladder(b, tf, cfg.lemma41.k_ladder, kernel, ac).to_report());
  const IntermediateConfig ic{cfg.lemma41.intermediate_points, cfg.lemma41.intermediate_slack, cfg.lemma41.nodes};
  const int k = *std::min_element(cfg.lemma41.k_ladder.begin(), cfg.lemma41.k_ladder.end());
  const IntermediateBounds ib = verify_intermediate_bounds(b, tf, k, kernel, ic);
  out.report(ib.pointwise);
  out.report(ib.median_drift);
}

void fk_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const RealFunction b = need(cfg.b, "b").build();
  const SampledFunction f = sampled(cfg, cfg.f, "f");
  const Grid& g = f.grid();
  const Interval window = window_or(cfg, g, 2.0);
  const Grid lattice = midpoint_lattice(g, window.left(), window.right());

  std::vector<SampledFunction> family;
  for (double s : cfg.fk.shifts) {
    if (std::abs(s / g.step - std::round(s / g.step)) > 1e-9 * std::max(1.0, std::abs(s / g.step)))
      throw InputError("fk.shifts must be whole numbers of grid steps");
    family.push_back(shift(f, -s));
  }
  std::vector<SampledFunction> images;
  for (const auto& member : family) images.push_back(apply_commutator(b, member, kernel, lattice));

  std::vector<double> zs = cfg.fk.z_ladder;
  if (zs.empty())
    for (int i = 0; i < 5; ++i) zs.push_back(std::ldexp(lattice.step, i));
  const FkReport fk = fk_diagnose(images, cfg.p, cfg.fk.t_ladder, zs);
  out.report(fk.to_report());
  std::vector<std::vector<double>> tail, equi;
  for (const auto& [t, v] : fk.tail_curve) tail.push_back({t, v});
  for (const auto& [z, v] : fk.equicontinuity_curve) equi.push_back({z, v});
  out.table("fk_tail", {"t", "sup_tail_norm"}, tail);
  out.table("fk_equicontinuity", {"z", "sup_shift_difference"}, equi);

  if (!cfg.fk.tail_ladder.empty()) {
    const auto supp = b.support();
    if (!supp) throw InputError("tail check needs a compactly supported b");
    TailConfig tc;
    tc.R = std::max(std::abs(supp->first), std::abs(supp->second));
    tc.window_factor = cfg.fk.tail_window_factor;
    tc.cells_per_gap = cfg.fk.cells_per_gap;
    out.report(tail_decay_check(b, family, cfg.p, cfg.fk.tail_ladder, kernel, tc));
  }
  if (cfg.fk.split > 0) {
    const double z = *std::min_element(zs.begin(), zs.end());
    out.report(equicontinuity_terms(b, f, kernel, z, cfg.fk.split, lattice, cfg.p).report);
  }
}

void witness_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const RealFunction b = need(cfg.b, "b").build();
  const WitnessParams& w = cfg.witness;
  WitnessConfig wc;
  wc.kind = witness_case_from_string(w.kind);
  wc.A1 = w.A1;
  wc.A2 = w.A2;
  wc.p = cfg.p;
  wc.nodes_per_radius = w.nodes_per_radius;
  wc.window_factor = w.window_factor;
  wc.cells_per_gap = w.cells_per_gap;
  wc.min_oscillation = w.min_oscillation;
  wc.k_ladder = w.k_ladder;
  wc.annulus_cells = w.annulus_cells;
  switch (wc.kind) {
    case WitnessCase::SmallScale:
      wc.intervals = small_scale_sequence(w.ratio, w.length);
      break;
    case WitnessCase::LargeScale:
      wc.intervals = large_scale_sequence(w.ratio, w.length);
      break;
    case WitnessCase::FarAway:
      wc.intervals = far_away_sequence(w.A2, w.C_eps, w.radius, w.R1, w.length);
      break;
  }
  const WitnessReport rep = witness_separation(b, wc, kernel);
  out.report(rep.to_report(wc));
  out.table("witness_distances", [&] {
    std::vector<std::string> h{"i"};
    for (std::size_t j = 0; j < rep.distances.size(); ++j) h.push_back("d" + std::to_string(j));
    return h;
  }(), [&] {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.distances.size(); ++i) {
      rows.push_back({static_cast<double>(i)});
      rows.back().insert(rows.back().end(), rep.distances[i].begin(), rep.distances[i].end());
    }
    return rows;
  }());
  std::vector<std::vector<double>> ivs;
  for (std::size_t j = 0; j < wc.intervals.size(); ++j)
    ivs.push_back({static_cast<double>(j), wc.intervals[j].center(), wc.intervals[j].radius(), rep.epsilons[j],
                   rep.image_norms[j]});
  out.table("witness_intervals", {"j", "center", "radius", "oscillation", "image_norm"}, ivs);
}

void commutator_norm_cmd(const ExperimentConfig& cfg, const CauchyKernel& kernel, Output& out) {
  const RealFunction b = need(cfg.b, "b").build();
  const FunctionSpec& fspec = need(cfg.f, "f");
  std::vector<SampledFunction> family;
  if (fspec.is_csv()) {
    if (cfg.norm.scales.size() != 1 || cfg.norm.scales.front() != 1.0)
      throw InputError("config field 'norm.scales': a CSV input only supports the scale 1");
    family.push_back(fspec.sample(cfg.grid));
  } else {
    if (!cfg.grid) throw InputError("config field 'grid': missing");
    const RealFunction f = fspec.build();
    for (double s : cfg.norm.scales) family.push_back(f.dilated(s).sample(*cfg.grid));
  }
  const Interval window = window_or(cfg, family.front().grid(), 4.0);
  const NormEstimate est = commutator_norm_lower(b, cfg.p, family, kernel, window, cfg.norm.cells_per_gap);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < est.ratios.size(); ++i)
    rows.push_back({fspec.is_csv() ? 1.0 : cfg.norm.scales[i], est.ratios[i]});
  out.table("commutator_norm_family", {"scale", "ratio"}, rows);
  BoundReport rep("commutator_norm", "max_f ||[b,C]f||_p / ||f||_p over the family (a lower bound)", {});
  rep.set_summary("norm_lower_bound", est.value);
  rep.set_summary("argmax", static_cast<double>(est.argmax));
  rep.set_summary("p", cfg.p);
  rep.add_note("measurement only; no inequality is asserted");
  out.report(rep);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"eval-operator", "bmo-norm",  "vmo-profile", "verify-kernel",
                                              "verify-homogeneity", "lemma41", "fk-diagnose", "witness",
                                              "commutator-norm"};
  return names;
}

int run(const ExperimentConfig& cfg, const std::string& subcommand, const std::string& out_dir, std::ostream& log) {
  try {
    cfg.validate();
    if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end())
      throw InputError("unknown subcommand '" + subcommand + "'");
    set_threads(cfg.threads);
    const CauchyKernel kernel(cfg.curve.build(), cfg.prefactor);
    Output out(out_dir);
    if (subcommand == "eval-operator") eval_operator(cfg, kernel, out);
    else if (subcommand == "bmo-norm") bmo_norm_cmd(cfg, out);
    else if (subcommand == "vmo-profile") vmo_profile_cmd(cfg, out);
    else if (subcommand == "verify-kernel") verify_kernel_cmd(cfg, kernel, out);
    else if (subcommand == "verify-homogeneity") homogeneity_cmd(cfg, kernel, out);
    else if (subcommand == "lemma41") lemma41_cmd(cfg, kernel, out);
    else if (subcommand == "fk-diagnose") fk_cmd(cfg, kernel, out);
    else if (subcommand == "witness") witness_cmd(cfg, kernel, out);
    else commutator_norm_cmd(cfg, kernel, out);
    out.finish(subcommand, cfg);
    if (!out.passed()) {
      log << subcommand << ": bound violation (see " << out_dir << ")\n";
      return 1;
    }
    return 0;
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cauchylab
