#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mellin_bv/config.hpp"
#include "mellin_bv/errors.hpp"
#include "mellin_bv/experiments.hpp"
#include "mellin_bv/report.hpp"
#include "mellin_bv/simd.hpp"
#include "mellin_bv/version.hpp"

namespace mbv::cli {
namespace {

struct Sink {
  std::string dir;
  void write(const std::string& name, const std::string& content) const {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    write_text_file((std::filesystem::path(dir) / name).string(), content);
  }
};

const char* pass_text(bool b) { return b ? "PASS" : "FAIL"; }

// ---- config resolution --------------------------------------------------
//
// Every cmd_* records the values it actually used into a fresh ConfigMap so
// the JSON summary embeds the fully resolved state, defaults included.

int resolve_dimension(const ConfigMap& cfg, ConfigMap& used) {
  const int n = cfg.get_int("run.N", 1);
  used.set("run.N", static_cast<double>(n));
  return n;
}

PhiFunction resolve_phi(const ConfigMap& cfg, ConfigMap& used) {
  if (cfg.contains("run.phi.kind")) {
    const std::string kind = cfg.get_string("run.phi.kind", "power");
    if (kind == "classical") {
      used.set("run.phi", std::string("classical"));
      return PhiFunction::classical();
    }
    if (kind == "power") {
      const double p = cfg.get_double("run.phi.p", 2.0);
      used.set("run.phi", "power:" + fmt_double(p));
      return PhiFunction::power(p);
    }
    throw ConfigError("unknown phi kind '" + kind + "' (expected power or classical)");
  }
  const std::string spec = cfg.get_string("run.phi", "power:2");
  used.set("run.phi", spec);
  if (spec == "classical") return PhiFunction::classical();
  if (spec.rfind("power:", 0) == 0) {
    const std::string num = spec.substr(6);
    try {
      std::size_t consumed = 0;
      const double p = std::stod(num, &consumed);
      if (consumed != num.size()) throw std::invalid_argument(num);
      return PhiFunction::power(p);
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad exponent in phi spec '" + spec + "'");
    }
  }
  throw ConfigError("unknown phi spec '" + spec + "' (expected classical or power:<p>)");
}

std::vector<double> resolve_w_ladder(const ConfigMap& cfg, int dimension,
                                     ConfigMap& used) {
  const std::vector<double> v =
      cfg.get_list("run.w_ladder", default_w_ladder(dimension));
  if (v.size() < 2) throw ConfigError("run.w_ladder needs at least 2 values");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw ConfigError("run.w_ladder values must be positive");
    if (i > 0 && !(v[i] > v[i - 1]))
      throw ConfigError("run.w_ladder must be strictly increasing");
  }
  used.set("run.w_ladder", v);
  return v;
}

std::vector<double> resolve_lambda_grid(const ConfigMap& cfg, ConfigMap& used) {
  std::vector<double> v = cfg.get_list("run.lambda_grid", {});
  if (v.empty()) v = LambdaGrid::dyadic(8).values;
  for (double x : v)
    if (!(x > 0.0)) throw ConfigError("run.lambda_grid values must be positive");
  std::sort(v.begin(), v.end(), std::greater<double>());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  used.set("run.lambda_grid", v);
  return v;
}

std::vector<double> resolve_deltas(const ConfigMap& cfg, ConfigMap& used,
                                   const std::vector<double>& fallback) {
  const std::vector<double> v = cfg.get_list("run.deltas", fallback);
  if (v.empty()) throw ConfigError("run.deltas must not be empty");
  for (double d : v)
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("run.deltas values must lie in (0,1)");
  used.set("run.deltas", v);
  return v;
}

double resolve_delta_tilde(const ConfigMap& cfg, ConfigMap& used) {
  const double d = cfg.get_double("run.delta_tilde", 0.5);
  if (!(d > 0.0 && d < 1.0)) throw ConfigError("run.delta_tilde must lie in (0,1)");
  used.set("run.delta_tilde", d);
  return d;
}

ExperimentThresholds resolve_thresholds(const ConfigMap& cfg, ConfigMap& used) {
  ExperimentThresholds t;
  t.success_ratio = cfg.get_double("thresholds.success_ratio", t.success_ratio);
  t.success_floor = cfg.get_double("thresholds.success_floor", t.success_floor);
  t.counterexample_factor =
      cfg.get_double("thresholds.counterexample_factor", t.counterexample_factor);
  t.slope_tol = cfg.get_double("thresholds.slope_tol", t.slope_tol);
  t.r2_min = cfg.get_double("thresholds.r2_min", t.r2_min);
  t.generalized_slack = cfg.get_double("thresholds.generalized_slack", t.generalized_slack);
  t.inequality_slack = cfg.get_double("thresholds.inequality_slack", t.inequality_slack);
  used.set("thresholds.success_ratio", t.success_ratio);
  used.set("thresholds.success_floor", t.success_floor);
  used.set("thresholds.counterexample_factor", t.counterexample_factor);
  used.set("thresholds.slope_tol", t.slope_tol);
  used.set("thresholds.r2_min", t.r2_min);
  used.set("thresholds.generalized_slack", t.generalized_slack);
  used.set("thresholds.inequality_slack", t.inequality_slack);
  return t;
}

OperatorQuad resolve_quad(const ConfigMap& cfg, ConfigMap& used) {
  OperatorQuad q;
  q.half_width = cfg.get_double("quad.half_width", 0.0);
  q.nodes_per_axis = cfg.get_int("quad.nodes_per_axis", 0);
  if (q.half_width < 0.0) throw ConfigError("quad.half_width must be >= 0 (0 = auto)");
  if (q.nodes_per_axis < 0) throw ConfigError("quad.nodes_per_axis must be >= 0 (0 = auto)");
  used.set("quad.half_width", q.half_width);
  used.set("quad.nodes_per_axis", static_cast<double>(q.nodes_per_axis));
  return q;
}

RefinementPolicy resolve_policy(const ConfigMap& cfg, ConfigMap& used) {
  RefinementPolicy p;
  p.depth_max = cfg.get_int("variation.depth_max", p.depth_max);
  p.tol = cfg.get_double("variation.tol", p.tol);
  p.box_partition_depth = cfg.get_int("variation.box_partition_depth", p.box_partition_depth);
  if (p.depth_max < 1 || p.depth_max > 16)
    throw ConfigError("variation.depth_max must lie in [1, 16]");
  if (p.box_partition_depth < 0 || p.box_partition_depth > 6)
    throw ConfigError("variation.box_partition_depth must lie in [0, 6]");
  used.set("variation.depth_max", static_cast<double>(p.depth_max));
  used.set("variation.tol", p.tol);
  used.set("variation.box_partition_depth", static_cast<double>(p.box_partition_depth));
  return p;
}

MarginalQuad resolve_marginal(const ConfigMap& cfg, ConfigMap& used) {
  MarginalQuad mq;
  mq.nodes_per_axis = cfg.get_int("variation.marginal_nodes", mq.nodes_per_axis);
  if (mq.nodes_per_axis < 8) throw ConfigError("variation.marginal_nodes must be >= 8");
  used.set("variation.marginal_nodes", static_cast<double>(mq.nodes_per_axis));
  return mq;
}

std::vector<double> resolve_box_ladder(const ConfigMap& cfg, ConfigMap& used) {
  const std::vector<double> v = cfg.get_list("variation.box_ladder", default_box_ladder());
  if (v.empty()) throw ConfigError("variation.box_ladder must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw ConfigError("variation.box_ladder values must be positive");
    if (i > 0 && !(v[i] > v[i - 1]))
      throw ConfigError("variation.box_ladder must be strictly increasing");
  }
  used.set("variation.box_ladder", v);
  return v;
}

TableOptions resolve_table(const ConfigMap& cfg, ConfigMap& used) {
  TableOptions t;
  t.grid_depth = cfg.get_int("table.grid_depth", t.grid_depth);
  t.box_m_max = cfg.get_double("table.box_m_max", t.box_m_max);
  t.cluster_points = cfg.get_int("table.cluster_points", t.cluster_points);
  t.cluster_scale = cfg.get_double("table.cluster_scale", t.cluster_scale);
  if (t.grid_depth < 1 || t.grid_depth > 16)
    throw ConfigError("table.grid_depth must lie in [1, 16]");
  if (!(t.box_m_max > 0.0)) throw ConfigError("table.box_m_max must be positive");
  if (t.cluster_points < 0 || t.cluster_points > 1000)
    throw ConfigError("table.cluster_points must lie in [0, 1000]");
  if (!(t.cluster_scale > 0.0)) throw ConfigError("table.cluster_scale must be positive");
  used.set("table.grid_depth", static_cast<double>(t.grid_depth));
  used.set("table.box_m_max", t.box_m_max);
  used.set("table.cluster_points", static_cast<double>(t.cluster_points));
  used.set("table.cluster_scale", t.cluster_scale);
  t.quad = resolve_quad(cfg, used);
  t.box_ladder = resolve_box_ladder(cfg, used);
  t.policy = resolve_policy(cfg, used);
  t.marginal = resolve_marginal(cfg, used);
  return t;
}

// ---- JSON fragments -----------------------------------------------------

Json base_json(const std::string& command) {
  Json j;
  j["command"] = command;
  j["version"] = kVersionString;
  j["simd_path"] = simd::path_name(simd::active_path());
  return j;
}

Json darray(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json table_json(const std::vector<std::vector<double>>& t) {
  Json a = Json::array();
  for (const auto& row : t) a.push_back(darray(row));
  return a;
}

Json fit_json(const FitResult& f) {
  Json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["r_squared"] = f.r_squared;
  j["points_used"] = f.points_used;
  return j;
}

Json rate_report_json(const RateReport& r) {
  Json j;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["r_squared"] = r.r_squared;
  j["target_alpha"] = r.target_alpha;
  j["pass"] = r.pass;
  j["window_begin"] = r.window.begin;
  j["window_end"] = r.window.end;
  return j;
}

Json decay_json(const DecayCheck& d) {
  Json j;
  j["delta"] = d.delta;
  j["alpha"] = d.alpha;
  j["w_list"] = darray(d.w_list);
  j["values"] = darray(d.values);
  j["fit"] = rate_report_json(d.fit);
  j["underflow_pass"] = d.underflow_pass;
  j["pass"] = d.pass;
  j["note"] = d.note;
  return j;
}

Json certification_json(const KernelCertification& c) {
  Json j;
  j["alpha"] = c.alpha;
  Json sing = Json::array();
  for (const auto& d : c.singularity) sing.push_back(decay_json(d));
  j["singularity"] = sing;
  j["near_moment"] = decay_json(c.near_moment);
  j["pass"] = c.pass;
  return j;
}

Json thresholds_json(const ExperimentThresholds& t) {
  Json j;
  j["success_ratio"] = t.success_ratio;
  j["success_floor"] = t.success_floor;
  j["counterexample_factor"] = t.counterexample_factor;
  j["slope_tol"] = t.slope_tol;
  j["r2_min"] = t.r2_min;
  j["generalized_slack"] = t.generalized_slack;
  j["inequality_slack"] = t.inequality_slack;
  return j;
}

// standard experiment CSV: one row per table cell
CsvTable experiment_csv(const std::vector<double>& lambdas,
                        const std::vector<double>& w_ladder,
                        const std::vector<std::vector<double>>& table) {
  CsvTable csv;
  csv.columns = {"lambda", "w", "error", "lower_or_upper_flag"};
  for (std::size_t li = 0; li < lambdas.size(); ++li)
    for (std::size_t wi = 0; wi < w_ladder.size(); ++wi)
      csv.rows.push_back({fmt_double(lambdas[li]), fmt_double(w_ladder[wi]),
                          fmt_double(table[li][wi]), "lower"});
  return csv;
}

// ---- commands -----------------------------------------------------------

int cmd_kernel_check(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string name = cfg.get_string("run.kernel", "gauss_weierstrass");
  used.set("run.kernel", name);
  const double alpha = cfg.get_double("run.alpha", 1.0);
  if (!(alpha > 0.0)) throw ConfigError("run.alpha must be positive");
  used.set("run.alpha", alpha);
  const KernelFamily& k = find_kernel(name, n);
  const std::vector<double> w_list = resolve_w_ladder(cfg, n, used);
  const std::vector<double> deltas = resolve_deltas(cfg, used, {0.25, 0.5, 0.75});
  const double delta_tilde = resolve_delta_tilde(cfg, used);
  const double slope_tol = cfg.get_double("thresholds.slope_tol", 0.25);
  used.set("thresholds.slope_tol", slope_tol);

  const KernelAxiomReport ax = check_axioms(k, w_list, deltas);
  const MomentResult mom = absolute_moment(k, alpha);
  const KernelCertification cert =
      certify_kernel(k, alpha, w_list, deltas, delta_tilde, slope_tol);
  const bool pass = ax.unit_mass_pass && ax.far_vanishing_pass &&
                    !mom.divergence_suspected && cert.pass;

  double max_defect = 0.0;
  for (double d : ax.normalization_defect) max_defect = std::max(max_defect, d);

  std::cout << "kernel-check " << name << " N=" << n << " alpha=" << fmt_double(alpha)
            << "\n";
  std::cout << "unit_mass " << pass_text(ax.unit_mass_pass)
            << " max_defect=" << fmt_double(max_defect) << "\n";
  std::cout << "far_vanishing " << pass_text(ax.far_vanishing_pass) << "\n";
  std::cout << "absolute_moment value=" << fmt_double(mom.value)
            << " divergence_suspected=" << (mom.divergence_suspected ? "yes" : "no")
            << "\n";
  for (const auto& d : cert.singularity) {
    std::cout << "alpha_singularity delta=" << fmt_double(d.delta) << " "
              << pass_text(d.pass);
    if (d.underflow_pass)
      std::cout << " (super-polynomial)";
    else
      std::cout << " slope=" << fmt_double(d.fit.slope);
    std::cout << "\n";
  }
  std::cout << "near_moment " << pass_text(cert.near_moment.pass)
            << " slope=" << fmt_double(cert.near_moment.fit.slope) << "\n";
  std::cout << "verdict " << pass_text(pass) << "\n";

  Json j = base_json("kernel-check");
  j["verdict"] = pass ? "PASS" : "FAIL";
  Json axioms;
  axioms["w_list"] = darray(ax.w_list);
  axioms["delta_list"] = darray(ax.delta_list);
  axioms["l1_norm"] = darray(ax.l1_norm);
  axioms["normalization_defect"] = darray(ax.normalization_defect);
  axioms["far_mass"] = table_json(ax.far_mass);
  axioms["bound_A"] = ax.bound_A;
  axioms["unit_mass_pass"] = ax.unit_mass_pass;
  axioms["far_vanishing_pass"] = ax.far_vanishing_pass;
  Json notes = Json::array();
  for (const auto& s : ax.notes) notes.push_back(s);
  axioms["notes"] = notes;
  j["axioms"] = axioms;
  Json moment;
  moment["alpha"] = alpha;
  moment["value"] = mom.value;
  moment["tail_ratio"] = mom.tail_ratio;
  moment["divergence_suspected"] = mom.divergence_suspected;
  j["absolute_moment"] = moment;
  j["certification"] = certification_json(cert);
  j["config"] = config_to_json(used);
  out.write("kernel_check_summary.json", render_json(j));

  CsvTable csv;
  csv.columns = {"check", "delta", "w", "value"};
  for (std::size_t wi = 0; wi < ax.w_list.size(); ++wi) {
    csv.rows.push_back({"normalization_defect", "", fmt_double(ax.w_list[wi]),
                        fmt_double(ax.normalization_defect[wi])});
    csv.rows.push_back(
        {"l1_norm", "", fmt_double(ax.w_list[wi]), fmt_double(ax.l1_norm[wi])});
  }
  for (std::size_t di = 0; di < ax.delta_list.size(); ++di)
    for (std::size_t wi = 0; wi < ax.w_list.size(); ++wi)
      csv.rows.push_back({"far_mass", fmt_double(ax.delta_list[di]),
                          fmt_double(ax.w_list[wi]),
                          fmt_double(ax.far_mass[di][wi])});
  for (std::size_t wi = 0; wi < cert.near_moment.w_list.size(); ++wi)
    csv.rows.push_back({"near_moment", fmt_double(cert.near_moment.delta),
                        fmt_double(cert.near_moment.w_list[wi]),
                        fmt_double(cert.near_moment.values[wi])});
  out.write("kernel_check_table.csv", render_csv(csv));

  if (!ax.far_mass.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t wi = 0; wi < ax.w_list.size(); ++wi)
      pts.emplace_back(ax.w_list[wi], ax.far_mass[0][wi]);
    out.write("kernel_check_plot.dat",
              render_plot_data({"kernel " + name + " far mass at delta = " +
                                    fmt_double(ax.delta_list[0]),
                                "columns: w far_mass"},
                               pts));
  }
  return pass ? 0 : 1;
}

int cmd_variation(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "logbump");
  used.set("run.function", fname);
  const TestFunction& f = find_function(fname, n);
  const PhiFunction phi = resolve_phi(cfg, used);
  const double lambda = cfg.get_double("run.lambda", 1.0);
  if (!(lambda > 0.0)) throw ConfigError("run.lambda must be positive");
  used.set("run.lambda", lambda);
  const std::vector<double> ladder = resolve_box_ladder(cfg, used);
  const RefinementPolicy pol = resolve_policy(cfg, used);
  const MarginalQuad mq = resolve_marginal(cfg, used);

  const VariationEstimate est = var_global(f, phi, lambda, ladder, mq, pol);
  const std::optional<double> exact = f.exact_variation(phi, lambda, nullptr);

  std::cout << "variation " << fname << " N=" << n << " phi=" << phi.name()
            << " lambda=" << fmt_double(lambda) << "\n";
  std::cout << "var_global = " << fmt_double(est.lower_bound) << "\n";
  std::cout << "converged = " << (est.converged ? "true" : "false")
            << " refinement_depth=" << est.refinement_depth << "\n";
  for (std::size_t i = 0; i < est.ladder_values.size(); ++i)
    std::cout << "box log-halfwidth " << fmt_double(ladder[i]) << ": "
              << fmt_double(est.ladder_values[i]) << "\n";
  if (est.breakdown) {
    std::cout << "per-axis sections:";
    for (double v : *est.breakdown) std::cout << " " << fmt_double(v);
    std::cout << "\n";
  }
  if (exact) std::cout << "exact = " << fmt_double(*exact) << "\n";

  Json j = base_json("variation");
  j["value"] = est.lower_bound;
  j["converged"] = est.converged;
  j["refinement_depth"] = est.refinement_depth;
  j["ladder_values"] = darray(est.ladder_values);
  if (est.breakdown) j["per_axis_sections"] = darray(*est.breakdown);
  if (exact)
    j["exact"] = *exact;
  else
    j["exact"] = nullptr;
  j["config"] = config_to_json(used);
  out.write("variation_summary.json", render_json(j));

  CsvTable csv;
  csv.columns = {"lambda", "box_log_halfwidth", "value", "flag"};
  for (std::size_t i = 0; i < est.ladder_values.size(); ++i)
    csv.rows.push_back({fmt_double(lambda), fmt_double(ladder[i]),
                        fmt_double(est.ladder_values[i]), "lower"});
  out.write("variation_table.csv", render_csv(csv));

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < est.ladder_values.size(); ++i)
    pts.emplace_back(ladder[i], est.ladder_values[i]);
  out.write("variation_plot.dat",
            render_plot_data({"phi-variation of " + fname + " over the box ladder",
                              "columns: box_log_halfwidth value"},
                             pts));
  return 0;
}

int cmd_modulus(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "logbump");
  used.set("run.function", fname);
  const TestFunction& f = find_function(fname, n);
  const PhiFunction phi = resolve_phi(cfg, used);
  const double lambda = cfg.get_double("run.lambda", 1.0);
  if (!(lambda > 0.0)) throw ConfigError("run.lambda must be positive");
  used.set("run.lambda", lambda);
  const std::vector<double> deltas =
      resolve_deltas(cfg, used, {0.5, 0.25, 0.1, 0.01, 0.001});
  const std::vector<double> ladder = resolve_box_ladder(cfg, used);
  const RefinementPolicy pol = resolve_policy(cfg, used);
  const MarginalQuad mq = resolve_marginal(cfg, used);

  std::cout << "modulus " << fname << " N=" << n << " phi=" << phi.name()
            << " lambda=" << fmt_double(lambda) << "\n";
  std::vector<double> values;
  for (double d : deltas) {
    values.push_back(modulus(f, phi, lambda, d, ladder, mq, pol));
    std::cout << "omega(" << fmt_double(d) << ") = " << fmt_double(values.back())
              << "\n";
  }

  Json j = base_json("modulus");
  j["deltas"] = darray(deltas);
  j["values"] = darray(values);
  j["config"] = config_to_json(used);
  out.write("modulus_summary.json", render_json(j));

  CsvTable csv;
  csv.columns = {"lambda", "delta", "omega", "flag"};
  for (std::size_t i = 0; i < deltas.size(); ++i)
    csv.rows.push_back({fmt_double(lambda), fmt_double(deltas[i]),
                        fmt_double(values[i]), "lower"});
  out.write("modulus_table.csv", render_csv(csv));

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < deltas.size(); ++i)
    pts.emplace_back(deltas[i], values[i]);
  out.write("modulus_plot.dat",
            render_plot_data({"phi-modulus of " + fname, "columns: delta omega"}, pts));
  return 0;
}

int cmd_apply(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "logbump");
  used.set("run.function", fname);
  const std::string kname = cfg.get_string("run.kernel", "gauss_weierstrass");
  used.set("run.kernel", kname);
  const TestFunction& f = find_function(fname, n);
  const KernelFamily& k = find_kernel(kname, n);
  const double w = cfg.get_double("run.w", 16.0);
  if (!(w > 0.0)) throw ConfigError("run.w must be positive");
  used.set("run.w", w);

  OperatorEvaluation op;
  op.kernel = &k;
  op.f = &f;
  op.w = w;
  op.quad = resolve_quad(cfg, used);

  std::cout << "apply " << kname << " w=" << fmt_double(w) << " to " << fname
            << " N=" << n << "\n";

  Json j = base_json("apply");
  if (cfg.contains("run.s")) {
    const std::vector<double> s = cfg.get_list("run.s", {});
    if (static_cast<int>(s.size()) != n)
      throw ConfigError("run.s must have exactly N coordinates");
    for (double x : s)
      if (!(x > 0.0)) throw ConfigError("run.s coordinates must be positive");
    used.set("run.s", s);
    const double v = mbv::apply(op, s);
    std::cout << "T_w f(s) = " << fmt_double(v) << "\n";
    j["value_at_s"] = v;
    j["s"] = darray(s);
  }

  SampledGrid grid;
  if (cfg.contains("run.grid_points")) {
    const int pts = cfg.get_int("run.grid_points", 129);
    if (pts < 2 || pts > 100000) throw ConfigError("run.grid_points must lie in [2, 100000]");
    used.set("run.grid_points", static_cast<double>(pts));
    grid = uniform_log_grid(n, pts, -5.0, 5.0);
  } else {
    grid = default_s_grid(n);
  }
  const SampledFunction tw = apply_on_grid(op, grid);
  const SampledFunction fs = sample_on_grid(f, grid);

  double vmin = tw.values.front(), vmax = tw.values.front();
  for (double v : tw.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  std::cout << "grid points = " << tw.values.size() << " min=" << fmt_double(vmin)
            << " max=" << fmt_double(vmax) << "\n";
  j["grid_points"] = tw.values.size();
  j["min"] = vmin;
  j["max"] = vmax;
  j["config"] = config_to_json(used);
  out.write("apply_summary.json", render_json(j));

  CsvTable csv;
  for (int a = 0; a < n; ++a) csv.columns.push_back("s" + std::to_string(a + 1));
  csv.columns.push_back("Twf");
  csv.columns.push_back("f");
  const auto& axes = grid.axis_log_points;
  for (std::size_t idx = 0; idx < tw.values.size(); ++idx) {
    std::vector<std::string> row;
    std::size_t rem = idx;
    std::vector<std::size_t> coord(static_cast<std::size_t>(n), 0);
    for (int a = n - 1; a >= 0; --a) {
      const auto sz = axes[static_cast<std::size_t>(a)].size();
      coord[static_cast<std::size_t>(a)] = rem % sz;
      rem /= sz;
    }
    for (int a = 0; a < n; ++a)
      row.push_back(fmt_double(
          std::exp(axes[static_cast<std::size_t>(a)][coord[static_cast<std::size_t>(a)]])));
    row.push_back(fmt_double(tw.values[idx]));
    row.push_back(fmt_double(fs.values[idx]));
    csv.rows.push_back(std::move(row));
  }
  out.write("apply_table.csv", render_csv(csv));

  if (n == 1) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < tw.values.size(); ++i)
      pts.emplace_back(axes[0][i], tw.values[i]);
    out.write("apply_plot.dat",
              render_plot_data({"T_w " + fname + " under " + kname +
                                    " at w = " + fmt_double(w),
                                "columns: log_s value"},
                               pts));
  }
  return 0;
}

int cmd_convergence(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "logbump");
  used.set("run.function", fname);
  const std::string kname = cfg.get_string("run.kernel", "gauss_weierstrass");
  used.set("run.kernel", kname);

  ConvergenceRun run;
  run.f = &find_function(fname, n);
  run.kernel = &find_kernel(kname, n);
  run.phi = resolve_phi(cfg, used);
  run.w_ladder = resolve_w_ladder(cfg, n, used);
  run.lambdas = resolve_lambda_grid(cfg, used);
  run.table = resolve_table(cfg, used);
  run.thresholds = resolve_thresholds(cfg, used);

  const ConvergenceReport rep = run_convergence(run);

  std::cout << "convergence " << fname << " kernel=" << kname
            << " phi=" << rep.phi_name << " N=" << n << "\n";
  for (std::size_t li = 0; li < rep.lambdas.size(); ++li) {
    std::cout << "lambda=" << fmt_double(rep.lambdas[li])
              << " E(w_min)=" << fmt_double(rep.table[li].front())
              << " E(w_max)=" << fmt_double(rep.table[li].back());
    if (rep.fits[li]) std::cout << " slope=" << fmt_double(rep.fits[li]->slope);
    std::cout << "\n";
  }
  if (rep.counterexample_mode)
    std::cout << "note: function lacks the absolute-continuity tag; "
                 "non-convergence is the expected outcome\n";
  std::cout << "verdict " << (rep.success ? "SUCCESS" : "FAILURE");
  if (rep.success) std::cout << " witness_lambda=" << fmt_double(rep.witness_lambda);
  std::cout << "\n";

  Json j = base_json("convergence");
  j["verdict"] = rep.success ? "SUCCESS" : "FAILURE";
  j["counterexample_mode"] = rep.counterexample_mode;
  if (rep.success)
    j["witness_lambda"] = rep.witness_lambda;
  else
    j["witness_lambda"] = nullptr;
  j["dimension"] = rep.dimension;
  j["w_ladder"] = darray(rep.w_ladder);
  j["lambdas"] = darray(rep.lambdas);
  j["table"] = table_json(rep.table);
  Json fits = Json::array();
  for (const auto& f : rep.fits) fits.push_back(f ? fit_json(*f) : Json(nullptr));
  j["fits"] = fits;
  j["thresholds"] = thresholds_json(rep.thresholds);
  j["config"] = config_to_json(used);
  out.write("convergence_summary.json", render_json(j));
  out.write("convergence_table.csv",
            render_csv(experiment_csv(rep.lambdas, rep.w_ladder, rep.table)));

  const std::size_t pli =
      rep.success
          ? static_cast<std::size_t>(std::find(rep.lambdas.begin(), rep.lambdas.end(),
                                               rep.witness_lambda) -
                                     rep.lambdas.begin())
          : 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t wi = 0; wi < rep.w_ladder.size(); ++wi)
    pts.emplace_back(rep.w_ladder[wi], rep.table[pli][wi]);
  out.write("convergence_plot.dat",
            render_plot_data({"E(lambda, w) at lambda = " + fmt_double(rep.lambdas[pli]),
                              "columns: w error"},
                             pts));
  return rep.success ? 0 : 1;
}

int cmd_rate(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "clamplog");
  used.set("run.function", fname);
  const std::string kname = cfg.get_string("run.kernel", "picard");
  used.set("run.kernel", kname);
  const TestFunction& f = find_function(fname, n);
  const KernelFamily& k = find_kernel(kname, n);
  const PhiFunction phi = resolve_phi(cfg, used);
  const double alpha = cfg.get_double("run.alpha", 1.0);
  if (!(alpha > 0.0)) throw ConfigError("run.alpha must be positive");
  used.set("run.alpha", alpha);
  const std::vector<double> w_ladder = resolve_w_ladder(cfg, n, used);
  const std::vector<double> lambdas = resolve_lambda_grid(cfg, used);
  const TableOptions topt = resolve_table(cfg, used);
  const ExperimentThresholds thr = resolve_thresholds(cfg, used);
  const std::vector<double> deltas = resolve_deltas(cfg, used, {0.25, 0.5, 0.75});
  const double delta_tilde = resolve_delta_tilde(cfg, used);

  const RateRunReport rep =
      run_rate(f, k, phi, alpha, w_ladder, lambdas, topt, thr, deltas, delta_tilde);
  const bool pass =
      rep.trivial_pass || (rep.best.pass && rep.best.r_squared >= thr.r2_min);

  std::cout << "rate " << fname << " kernel=" << kname << " phi=" << rep.phi_name
            << " alpha=" << fmt_double(alpha) << " N=" << n << "\n";
  std::cout << "certified = " << (rep.certification.pass ? "true" : "false") << "\n";
  if (rep.trivial_pass) {
    std::cout << "table is identically ~0; nothing to fit\n";
  } else {
    std::cout << "best lambda = " << fmt_double(rep.best_lambda)
              << " slope = " << fmt_double(rep.best.slope)
              << " r2 = " << fmt_double(rep.best.r_squared) << " (target <= "
              << fmt_double(-alpha + thr.slope_tol) << ")\n";
  }
  std::cout << "verdict " << pass_text(pass) << "\n";

  Json j = base_json("rate");
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["alpha"] = alpha;
  j["trivial_pass"] = rep.trivial_pass;
  j["best_lambda"] = rep.best_lambda;
  j["best"] = rate_report_json(rep.best);
  j["w_ladder"] = darray(rep.w_ladder);
  j["lambdas"] = darray(rep.lambdas);
  j["table"] = table_json(rep.table);
  Json per = Json::array();
  for (const auto& rr : rep.per_lambda)
    per.push_back(rr ? rate_report_json(*rr) : Json(nullptr));
  j["per_lambda"] = per;
  j["certification"] = certification_json(rep.certification);
  j["thresholds"] = thresholds_json(rep.thresholds);
  j["config"] = config_to_json(used);
  out.write("rate_summary.json", render_json(j));
  out.write("rate_table.csv",
            render_csv(experiment_csv(rep.lambdas, rep.w_ladder, rep.table)));

  std::size_t pli = 0;
  for (std::size_t li = 0; li < rep.lambdas.size(); ++li)
    if (rep.lambdas[li] == rep.best_lambda) pli = li;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t wi = 0; wi < rep.w_ladder.size(); ++wi)
    pts.emplace_back(rep.w_ladder[wi], rep.table[pli][wi]);
  out.write("rate_plot.dat",
            render_plot_data({"E(lambda, w) at lambda = " + fmt_double(rep.lambdas[pli]),
                              "columns: w error"},
                             pts));
  return pass ? 0 : 1;
}

int cmd_rate_generalized(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  const int n = resolve_dimension(cfg, used);
  const std::string fname = cfg.get_string("run.function", "clamplog");
  used.set("run.function", fname);
  const std::string kname = cfg.get_string("run.kernel", "picard");
  used.set("run.kernel", kname);
  const TestFunction& f = find_function(fname, n);
  const KernelFamily& k = find_kernel(kname, n);
  const PhiFunction phi = resolve_phi(cfg, used);
  const std::string tau_spec = cfg.get_string("run.tau", "logpow:1");
  const std::string xi_spec = cfg.get_string("run.xi", "powinv:1");
  used.set("run.tau", tau_spec);
  used.set("run.xi", xi_spec);
  const GeneralizedRateSpec spec = make_tau_xi(tau_spec, xi_spec);
  const std::vector<double> w_ladder = resolve_w_ladder(cfg, n, used);
  const std::vector<double> lambdas = resolve_lambda_grid(cfg, used);
  const TableOptions topt = resolve_table(cfg, used);
  const ExperimentThresholds thr = resolve_thresholds(cfg, used);
  const double delta_tilde = resolve_delta_tilde(cfg, used);

  const GeneralizedRateReport rep = run_rate_generalized(
      f, k, spec, phi, w_ladder, lambdas, topt, thr, delta_tilde);

  std::cout << "rate-generalized " << fname << " kernel=" << kname
            << " tau=" << tau_spec << " xi=" << xi_spec << " N=" << n << "\n";
  std::cout << "certified = " << (rep.certified ? "true" : "false") << "\n";
  if (rep.non_informative)
    std::cout << "note: xi barely decreases over the ladder; the bound is "
                 "non-informative\n";
  std::cout << "fitted_C = " << fmt_double(rep.fitted_C)
            << " best_lambda = " << fmt_double(rep.best_lambda) << "\n";
  std::cout << "fit slope = " << fmt_double(rep.fit.slope)
            << " r2 = " << fmt_double(rep.fit.r_squared) << "\n";
  std::cout << "verdict " << pass_text(rep.pass) << "\n";

  Json j = base_json("rate-generalized");
  j["verdict"] = rep.pass ? "PASS" : "FAIL";
  j["tau"] = tau_spec;
  j["xi"] = xi_spec;
  j["certified"] = rep.certified;
  j["non_informative"] = rep.non_informative;
  j["fitted_C"] = rep.fitted_C;
  j["best_lambda"] = rep.best_lambda;
  j["fit"] = rate_report_json(rep.fit);
  j["w_ladder"] = darray(rep.w_ladder);
  j["lambdas"] = darray(rep.lambdas);
  j["table"] = table_json(rep.table);
  j["thresholds"] = thresholds_json(rep.thresholds);
  j["config"] = config_to_json(used);
  out.write("rate_generalized_summary.json", render_json(j));
  out.write("rate_generalized_table.csv",
            render_csv(experiment_csv(rep.lambdas, rep.w_ladder, rep.table)));

  std::vector<std::pair<double, double>> pts;
  for (std::size_t wi = 0; wi < rep.w_ladder.size(); ++wi)
    pts.emplace_back(rep.w_ladder[wi], rep.table[0][wi]);
  out.write("rate_generalized_plot.dat",
            render_plot_data({"E(lambda, w) at lambda = " + fmt_double(rep.lambdas[0]),
                              "columns: w error"},
                             pts));
  return rep.pass ? 0 : 1;
}

int cmd_counterexample(const ConfigMap& cfg, const Sink& out) {
  ConfigMap used;
  used.set("run.N", 1.0);  // fixed one-dimensional setup
  used.set("run.function", std::string("step1d"));
  used.set("run.kernel", std::string("gauss_weierstrass"));
  const PhiFunction phi = resolve_phi(cfg, used);
  const std::vector<double> mu_list = cfg.get_list("run.mu_list", {0.5, 1.0, 2.0});
  for (double m : mu_list)
    if (!(m > 0.0)) throw ConfigError("run.mu_list values must be positive");
  used.set("run.mu_list", mu_list);
  const std::vector<double> w_ladder = resolve_w_ladder(cfg, 1, used);
  const TableOptions topt = resolve_table(cfg, used);
  const ExperimentThresholds thr = resolve_thresholds(cfg, used);

  const CounterexampleReport rep =
      run_counterexample(mu_list, w_ladder, phi, topt, thr);

  std::cout << "counterexample step1d gauss_weierstrass phi=" << phi.name() << "\n";
  for (std::size_t mi = 0; mi < rep.mu_list.size(); ++mi) {
    std::cout << "mu=" << fmt_double(rep.mu_list[mi])
              << " min_over_w=" << fmt_double(rep.min_over_w[mi])
              << " threshold=" << fmt_double(rep.thresholds[mi])
              << " phi(mu/2)=" << fmt_double(rep.phi_half_mu[mi])
              << " restricted_limit=" << fmt_double(rep.restricted_limit[mi]) << "\n";
  }
  std::cout << "verdict " << pass_text(rep.pass)
            << " (pass = the lower bound persists at every w)\n";

  Json j = base_json("counterexample");
  j["verdict"] = rep.pass ? "PASS" : "FAIL";
  j["mu_list"] = darray(rep.mu_list);
  j["w_ladder"] = darray(rep.w_ladder);
  j["lower_bounds"] = table_json(rep.lower_bounds);
  j["thresholds_per_mu"] = darray(rep.thresholds);
  j["phi_half_mu"] = darray(rep.phi_half_mu);
  j["min_over_w"] = darray(rep.min_over_w);
  j["restricted_limit"] = darray(rep.restricted_limit);
  j["thresholds"] = thresholds_json(rep.used);
  j["config"] = config_to_json(used);
  out.write("counterexample_summary.json", render_json(j));
  out.write("counterexample_table.csv",
            render_csv(experiment_csv(rep.mu_list, rep.w_ladder, rep.lower_bounds)));

  std::vector<std::pair<double, double>> pts;
  for (std::size_t wi = 0; wi < rep.w_ladder.size(); ++wi)
    pts.emplace_back(rep.w_ladder[wi], rep.lower_bounds[0][wi]);
  out.write("counterexample_plot.dat",
            render_plot_data({"lower bound at mu = " + fmt_double(rep.mu_list[0]),
                              "columns: w lower_bound"},
                             pts));
  return rep.pass ? 0 : 1;
}

int dispatch(const std::string& command, const ConfigMap& cfg, const Sink& out) {
  if (command == "kernel-check") return cmd_kernel_check(cfg, out);
  if (command == "variation") return cmd_variation(cfg, out);
  if (command == "modulus") return cmd_modulus(cfg, out);
  if (command == "apply") return cmd_apply(cfg, out);
  if (command == "convergence") return cmd_convergence(cfg, out);
  if (command == "rate") return cmd_rate(cfg, out);
  if (command == "rate-generalized") return cmd_rate_generalized(cfg, out);
  if (command == "counterexample") return cmd_counterexample(cfg, out);
  throw ConfigError("unknown command: " + command);
}

}  // namespace

int run_command(const std::string& command, const CliState& state) {
  try {
    ConfigMap cfg;
    if (!state.config_path.empty()) cfg = parse_config_file(state.config_path);
    for (const auto& [key, raw] : state.flag_overrides) cfg.set_override(key, raw);
    for (const auto& [key, raw] : state.raw_overrides) cfg.set_override(key, raw);
    return dispatch(command, cfg, Sink{state.out_dir});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // unknown kernel/function names, unsupported dimensions, bad parameters
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mbv::cli
