// Acceptance suite: exercises the library end to end and prints one
// "criterion N PASS/FAIL: detail" line per item. Exits nonzero when any
// criterion fails. argv[1] must be the path to the CLI binary; the
// determinism criterion re-runs it and compares output bytes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mellin_bv/experiments.hpp"
#include "mellin_bv/functions.hpp"
#include "mellin_bv/kernels.hpp"
#include "mellin_bv/mellin_op.hpp"
#include "mellin_bv/phi.hpp"
#include "mellin_bv/quadrature.hpp"
#include "mellin_bv/special.hpp"
#include "mellin_bv/variation.hpp"

namespace {

using namespace mbv;

int g_failures = 0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void report(int id, bool ok, const std::string& detail, double seconds) {
  if (!ok) ++g_failures;
  std::ostringstream line;
  line << "criterion " << id << (ok ? " PASS: " : " FAIL: ") << detail << " ["
       << fmt(seconds) << " s]";
  std::cout << line.str() << std::endl;
}

void run_criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    auto r = body();
    ok = r.first;
    detail = r.second;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  report(id, ok, detail, dt.count());
}

const TestFunction& builtin(int dimension, const std::string& name) {
  for (const auto& f : builtin_registry(dimension))
    if (f.name() == name) return f;
  throw std::runtime_error("no builtin named " + name);
}

double integrate_mass(const KernelFamily& k, double w, bool* converged = nullptr) {
  const double hw = default_half_width(w);
  auto q = LogDomainQuadrature::make(k.dimension(), hw, default_nodes_per_axis(w, hw));
  q.estimate_errors = false;
  const QuadratureResult r = integrate_haar(k.kernel_integrand(w), q);
  if (converged) *converged = true;
  return r.value;
}

// ---- criterion 1: unit mass plus the laplace-family constant ------------

std::pair<bool, std::string> criterion1() {
  const std::vector<std::string> names = {"gauss_weierstrass", "picard", "moment"};
  const std::vector<double> ws = {1.0, 5.0, 10.0, 50.0};
  double worst_defect = 0.0;
  std::string worst_at;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& name : names) {
      const KernelFamily& k = find_kernel(name, n);
      for (double w : ws) {
        const double defect = std::abs(integrate_mass(k, w) - 1.0);
        if (defect > worst_defect) {
          worst_defect = defect;
          worst_at = name + " N=" + std::to_string(n) + " w=" + fmt(w);
        }
      }
    }
  }

  // independent check of the normalizing constant: integral of exp(-|u|)
  // over R^N equals 2 pi^(N/2) Gamma(N) / Gamma(N/2)
  double worst_const = 0.0;
  for (int n = 1; n <= 3; ++n) {
    LogIntegrand g;
    g.dimension = n;
    g.nonsmooth_at_origin = true;
    g.eval_points = [n](const double* u, std::size_t m, double* out) {
      for (std::size_t i = 0; i < m; ++i) {
        double s2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double uj = u[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
          s2 += uj * uj;
        }
        out[i] = std::exp(-std::sqrt(s2));
      }
    };
    auto q = LogDomainQuadrature::make(n, 40.0, default_nodes_per_axis(1.0, 40.0));
    q.estimate_errors = false;
    const double got = integrate_haar(g, q).value;
    const double want = 2.0 * std::pow(std::numbers::pi, 0.5 * n) *
                        gamma_fn(static_cast<double>(n)) / gamma_fn(0.5 * n);
    worst_const = std::max(worst_const, std::abs(got - want) / want);
  }

  const bool ok = worst_defect < 1e-6 && worst_const < 1e-6;
  return {ok, "max mass defect " + fmt(worst_defect) + " (" + worst_at +
                  "), laplace constant max rel err " + fmt(worst_const)};
}

// ---- criterion 2: far mass vanishes along the ladder --------------------

std::pair<bool, std::string> criterion2() {
  const std::vector<double> ladder = default_w_ladder(1);
  const std::vector<double> deltas = {0.25, 0.5, 0.75};
  bool ok = true;
  double worst_final = 0.0;
  std::string note;
  for (const auto& name : {"gauss_weierstrass", "picard", "moment"}) {
    const KernelFamily& k = find_kernel(name, 1);
    const KernelAxiomReport rep = check_axioms(k, ladder, deltas);
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      const auto& row = rep.far_mass[d];
      for (std::size_t i = 1; i < row.size(); ++i) {
        const bool strict = row[i] < row[i - 1];
        const bool underflow_tie = row[i - 1] <= kFarMassFloor;
        if (!strict && !underflow_tie) {
          ok = false;
          note = std::string(name) + " delta=" + fmt(deltas[d]) +
                 " not decreasing at w=" + fmt(ladder[i]);
        }
      }
      worst_final = std::max(worst_final, row.back());
      if (row.back() >= 1e-3) {
        ok = false;
        note = std::string(name) + " delta=" + fmt(deltas[d]) + " final mass " +
               fmt(row.back());
      }
    }
  }
  if (note.empty())
    note = "strict decrease holds, max far mass at w=128 is " + fmt(worst_final);
  return {ok, note};
}

// ---- criterion 3: absolute moments in closed form ------------------------

std::pair<bool, std::string> criterion3() {
  const MomentResult mg = absolute_moment(KernelFamily::gauss_weierstrass(1), 2.0);
  const MomentResult mp = absolute_moment(KernelFamily::picard(1), 1.0);
  const double dg = std::abs(mg.value - 0.5);
  const double dp = std::abs(mp.value - 1.0);
  const bool ok =
      dg < 1e-6 && dp < 1e-6 && !mg.divergence_suspected && !mp.divergence_suspected;
  return {ok, "m(G,2) err " + fmt(dg) + ", m(P,1) err " + fmt(dp) +
                  ", divergence flags " + (mg.divergence_suspected ? "1" : "0") +
                  (mp.divergence_suspected ? "1" : "0")};
}

// ---- criterion 4: decay slopes and the moment-kernel near oracle ---------

std::pair<bool, std::string> criterion4() {
  const std::vector<double> ladder = default_w_ladder(1);
  const std::vector<double> deltas = {0.25, 0.5, 0.75};
  bool ok = true;
  std::string note;
  for (double alpha : {1.0, 2.0}) {
    for (const auto& name : {"gauss_weierstrass", "picard", "moment"}) {
      const KernelFamily& k = find_kernel(name, 1);
      const KernelCertification cert = certify_kernel(k, alpha, ladder, deltas, 0.5);
      if (!cert.pass) {
        ok = false;
        note = std::string(name) + " alpha=" + fmt(alpha) + " certification failed";
      }
      if (std::string(name) == "moment" && alpha == 1.0) {
        // exact oracle: integral of w t^(w-1) |log t| over (0,1) equals 1/w;
        // the truncation to the near window is below 1e-6 only once w >= 32
        for (std::size_t i = 0; i < ladder.size(); ++i) {
          if (ladder[i] < 32.0) continue;
          const double err = std::abs(cert.near_moment.values[i] - 1.0 / ladder[i]);
          if (err >= 1e-6) {
            ok = false;
            note = "moment near integral at w=" + fmt(ladder[i]) + " off by " + fmt(err);
          }
        }
      }
    }
  }
  if (note.empty()) note = "all six (kernel, alpha) fits pass; near oracle 1/w holds";
  return {ok, note};
}

// ---- criterion 5: restricted variation equals the brute-force oracle -----

std::pair<bool, std::string> criterion5() {
  std::uint64_t state = 0x2545F4914F6CDD1DULL;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>((state >> 11) & 0x1FFFFFULL) / 2097151.0;
  };
  const PhiFunction p2 = PhiFunction::power(2.0);
  const PhiFunction cls = PhiFunction::classical();
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(next() * 10.999);  // 4..14 points
    std::vector<double> v;
    v.push_back(2.0 * next() - 1.0);
    int dir = next() < 0.5 ? 1 : -1;
    while (static_cast<int>(v.size()) < n) {
      if (next() < 0.3) dir = -dir;  // new monotone run
      const int run = 1 + static_cast<int>(next() * 3.0);
      for (int r = 0; r < run && static_cast<int>(v.size()) < n; ++r)
        v.push_back(v.back() + dir * next());
    }
    for (const PhiFunction* phi : {&p2, &cls}) {
      const double dp_val = var1d_points(v, *phi);
      const double bf_val = brute_force_var1d(v, *phi);
      if (!(dp_val == bf_val)) ++mismatches;
    }
  }
  return {mismatches == 0,
          "200 piecewise-monotone samples, both gauges, mismatches: " +
              std::to_string(mismatches)};
}

// ---- criterion 6: exact variation values ---------------------------------

std::pair<bool, std::string> criterion6() {
  const TestFunction& step = builtin(1, "step1d");
  const PhiFunction p2 = PhiFunction::power(2.0);
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const VariationEstimate est = var_global(step, p2, lam, default_box_ladder(),
                                             MarginalQuad{}, RefinementPolicy{});
    worst = std::max(worst, std::abs(est.lower_bound - p2(lam)));
  }
  const RefinementPolicy policy;
  const VariationEstimate sine =
      var1d_sup([](double x) { return std::sin(std::log(x)); },
                PhiFunction::classical(), 1.0, std::exp(2.0 * std::numbers::pi), policy);
  const double sine_err = std::abs(sine.lower_bound - 4.0);
  const bool ok = worst < 1e-6 && sine_err < 1e-3;
  return {ok, "step defect " + fmt(worst) + ", sin(log x) classical defect " +
                  fmt(sine_err)};
}

// ---- criterion 7: operator closed form ------------------------------------

std::pair<bool, std::string> criterion7() {
  const KernelFamily gw = KernelFamily::gauss_weierstrass(1);
  const TestFunction& step = builtin(1, "step1d");
  double worst = 0.0;
  for (double w : {2.0, 16.0, 64.0}) {
    OperatorEvaluation op;
    op.kernel = &gw;
    op.f = &step;
    op.w = w;
    for (int i = 0; i < 100; ++i) {
      const double v = -2.0 + 4.0 * static_cast<double>(i) / 99.0;
      const double s = std::exp(v);
      worst = std::max(worst, std::abs(apply(op, {s}) - gw_step_closed_form(w, s)));
    }
  }
  OperatorEvaluation op;
  op.kernel = &gw;
  op.f = &step;
  op.w = 16.0;
  const double at_one = std::abs(apply(op, {1.0}) - 0.5);
  const bool ok = worst < 1e-6 && at_one < 1e-6;
  return {ok, "max |T_w step - erfc form| " + fmt(worst) + ", defect at s=1 " +
                  fmt(at_one)};
}

// ---- criterion 8: the jump counterexample persists ------------------------

std::pair<bool, std::string> criterion8() {
  const CounterexampleReport rep =
      run_counterexample({0.5, 1.0, 2.0}, default_w_ladder(1),
                         PhiFunction::power(2.0), TableOptions{}, ExperimentThresholds{});
  double worst_margin = 1e300;
  for (std::size_t m = 0; m < rep.mu_list.size(); ++m)
    worst_margin = std::min(worst_margin, rep.min_over_w[m] / rep.thresholds[m]);
  return {rep.pass, "lower bounds clear 0.9*phi(mu/2) for every (mu, w); min margin " +
                        fmt(worst_margin) + "x"};
}

// ---- criterion 9: convergence matrix --------------------------------------

std::pair<bool, std::string> criterion9() {
  const std::vector<double> lambdas = LambdaGrid::dyadic(8).values;
  int passed = 0, total = 0;
  std::string first_fail;
  for (const auto& fname : {"logbump", "clamplog"}) {
    for (const auto& kname : {"gauss_weierstrass", "picard", "moment"}) {
      for (int pk = 0; pk < 2; ++pk) {
        ConvergenceRun run;
        const TestFunction& f = builtin(1, fname);
        const KernelFamily& k = find_kernel(kname, 1);
        run.f = &f;
        run.kernel = &k;
        run.phi = pk == 0 ? PhiFunction::power(2.0) : PhiFunction::classical();
        run.w_ladder = default_w_ladder(1);
        run.lambdas = lambdas;
        const ConvergenceReport rep = run_convergence(run);
        ++total;
        if (rep.success) {
          ++passed;
        } else if (first_fail.empty()) {
          first_fail = std::string(fname) + "/" + kname + "/" + rep.phi_name;
        }
      }
    }
  }

  // one reduced two-dimensional run; the criterion here is the decay ratio
  ConvergenceRun run2;
  const TestFunction& f2 = builtin(2, "logbump");
  const KernelFamily& k2 = KernelFamily::gauss_weierstrass(2);
  run2.f = &f2;
  run2.kernel = &k2;
  run2.phi = PhiFunction::power(2.0);
  run2.w_ladder = default_w_ladder(2);
  run2.lambdas = {1.0};
  run2.table.grid_depth = 4;
  run2.table.cluster_points = 6;
  run2.table.box_m_max = 4.0;
  run2.table.box_ladder = {1.0, 2.0, 4.0};
  const ConvergenceReport rep2 = run_convergence(run2);
  const double e_first = rep2.table[0].front();
  const double e_last = rep2.table[0].back();
  const bool ratio2 = e_last < 0.1 * e_first;

  const bool ok = passed == total && ratio2;
  std::string note = std::to_string(passed) + "/" + std::to_string(total) +
                     " one-dimensional runs converge";
  if (!first_fail.empty()) note += " (first failure " + first_fail + ")";
  note += "; N=2 logbump ratio " + fmt(e_last / e_first);
  return {ok, note};
}

// ---- criterion 10: the operator does not augment classical variation ------

std::pair<bool, std::string> criterion10() {
  const std::vector<double> ladder = default_w_ladder(1);
  bool ok = true;
  double worst_excess = -1e300;
  std::string worst_at;
  for (const auto& kname : {"gauss_weierstrass", "picard", "moment"}) {
    const KernelFamily& k = find_kernel(kname, 1);
    for (const auto& f : builtin_registry(1)) {
      const auto samples = check_non_augmenting(f, k, ladder, TableOptions{});
      for (const auto& s : samples) {
        const double excess = s.v_transformed - s.v_original;
        if (excess > worst_excess) {
          worst_excess = excess;
          worst_at = f.name() + "/" + kname + " w=" + fmt(s.w);
        }
        if (!s.pass) ok = false;
      }
    }
  }
  return {ok, "max V[T_w f] - V_upper[f] = " + fmt(worst_excess) + " at " + worst_at +
                  " (slack 1e-3)"};
}

// ---- criterion 11: the error-bound inequality ------------------------------

std::pair<bool, std::string> criterion11() {
  const KernelFamily gw = KernelFamily::gauss_weierstrass(1);
  const PhiFunction p2 = PhiFunction::power(2.0);
  const std::vector<double> lambdas = {1.0, 0.5, 0.25};
  const std::vector<double> deltas = {0.25, 0.5, 0.75};
  const std::vector<double> ws = {4.0, 16.0, 64.0};
  bool ok = true;
  double worst_slack = 1e300;
  std::string worst_at;
  for (const auto& f : builtin_registry(1)) {
    const auto samples =
        check_error_bound(f, gw, p2, lambdas, deltas, ws, TableOptions{},
                          ExperimentThresholds{});
    for (const auto& s : samples) {
      const double slack = s.rhs - s.lhs;
      if (slack < worst_slack) {
        worst_slack = slack;
        worst_at = f.name() + " lambda=" + fmt(s.lambda) + " delta=" + fmt(s.delta) +
                   " w=" + fmt(s.w);
      }
      if (!s.pass) ok = false;
    }
  }
  return {ok, "lhs <= rhs on all 27 samples per function; tightest slack " +
                  fmt(worst_slack) + " at " + worst_at};
}

// ---- criterion 12: convergence rate for a lipschitz-type function ----------

std::pair<bool, std::string> criterion12() {
  const TestFunction& f = builtin(1, "clamplog");
  const PhiFunction cls = PhiFunction::classical();
  const std::vector<double> lambdas = LambdaGrid::dyadic(8).values;
  bool ok = true;
  std::string note;
  for (const auto& kname : {"picard", "moment", "gauss_weierstrass"}) {
    const KernelFamily& k = find_kernel(kname, 1);
    const RateRunReport rep = run_rate(f, k, cls, 1.0, default_w_ladder(1), lambdas,
                                       TableOptions{}, ExperimentThresholds{});
    const bool this_ok = rep.certification.pass && !rep.trivial_pass && rep.best.pass &&
                         rep.best.slope <= -0.75 && rep.best.r_squared >= 0.9;
    if (!this_ok) ok = false;
    if (!note.empty()) note += ", ";
    note += std::string(kname) + " slope " + fmt(rep.best.slope) + " r2 " +
            fmt(rep.best.r_squared);
  }
  return {ok, note};
}

// ---- criterion 13: modulus vanishes for AC functions, not for the jump -----

std::pair<bool, std::string> criterion13() {
  const PhiFunction p2 = PhiFunction::power(2.0);
  const std::vector<double> lambdas = LambdaGrid::dyadic(8).values;
  const auto box = default_box_ladder();
  const MarginalQuad mq;
  const RefinementPolicy policy;

  bool ac_ok = true;
  std::string note;
  for (const auto& fname : {"clamplog", "logbump"}) {
    const TestFunction& f = builtin(1, fname);
    bool witness = false;
    double best_ratio = 1e300;
    for (double lam : lambdas) {
      const double w_half = modulus(f, p2, lam, 0.5, box, mq, policy);
      const double w_small = modulus(f, p2, lam, 1e-3, box, mq, policy);
      if (w_half > 0.0) best_ratio = std::min(best_ratio, w_small / w_half);
      if (w_half > 0.0 && w_small < 0.05 * w_half) {
        witness = true;
        break;
      }
    }
    if (!witness) ac_ok = false;
    if (!note.empty()) note += ", ";
    note += std::string(fname) + " ratio " + fmt(best_ratio);
  }

  const TestFunction& step = builtin(1, "step1d");
  bool step_ok = true;
  double min_rel = 1e300;
  for (double lam : {0.5, 1.0, 2.0}) {
    for (double delta : {0.5, 0.25, 0.1, 0.01, 1e-3}) {
      const double w_step = modulus(step, p2, lam, delta, box, mq, policy);
      min_rel = std::min(min_rel, w_step / p2(lam));
      if (w_step < 0.9 * p2(lam)) step_ok = false;
    }
  }
  note += "; step modulus stays >= " + fmt(min_rel) + " * phi(lambda)";
  return {ac_ok && step_ok, note};
}

// ---- criterion 14: byte-identical reruns ------------------------------------

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    out[entry.path().filename().string()] = buf.str();
  }
  return out;
}

std::pair<bool, std::string> criterion14(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "mbv_acceptance";
  const fs::path dir_a = base / "run_a";
  const fs::path dir_b = base / "run_b";
  fs::remove_all(base);
  fs::create_directories(dir_a);
  fs::create_directories(dir_b);

  const std::string args =
      " convergence --function logbump --kernel gauss_weierstrass --out ";
  for (const fs::path& dir : {dir_a, dir_b}) {
    const std::string cmd = cli + args + dir.string() + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return {false, "CLI run into " + dir.string() + " exited " +
                                    std::to_string(rc)};
  }

  const auto a = read_dir(dir_a);
  const auto b = read_dir(dir_b);
  if (a.empty()) return {false, "no output files produced"};
  if (a.size() != b.size()) return {false, "output file sets differ"};
  for (const auto& [name, bytes] : a) {
    const auto it = b.find(name);
    if (it == b.end()) return {false, name + " missing from second run"};
    if (it->second != bytes) return {false, name + " differs between runs"};
  }
  fs::remove_all(base);
  return {true, std::to_string(a.size()) + " output files byte-identical across reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  run_criterion(1, criterion1);
  run_criterion(2, criterion2);
  run_criterion(3, criterion3);
  run_criterion(4, criterion4);
  run_criterion(5, criterion5);
  run_criterion(6, criterion6);
  run_criterion(7, criterion7);
  run_criterion(8, criterion8);
  run_criterion(9, criterion9);
  run_criterion(10, criterion10);
  run_criterion(11, criterion11);
  run_criterion(12, criterion12);
  run_criterion(13, criterion13);
  run_criterion(14, [&cli]() {
    if (cli.empty()) return std::make_pair(false, std::string("no CLI path given"));
    return criterion14(cli);
  });

  if (g_failures == 0) {
    std::cout << "acceptance: all 14 criteria pass" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion(s) failed" << std::endl;
  return 1;
}
