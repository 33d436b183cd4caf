#include "mellin_bv/mellin_op.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mellin_bv/errors.hpp"
#include "mellin_bv/parallel.hpp"
#include "mellin_bv/simd.hpp"

namespace mbv {

namespace {

struct AxisData {
  std::vector<double> nodes, weights, exp_nodes;
};

void validate(const OperatorEvaluation& op) {
  if (op.kernel == nullptr || op.f == nullptr)
    throw std::invalid_argument("OperatorEvaluation: kernel and f are required");
  if (op.kernel->dimension() != op.f->dimension())
    throw std::invalid_argument("OperatorEvaluation: kernel/f dimension mismatch");
  if (!(op.w > 0.0)) throw std::invalid_argument("OperatorEvaluation: w must be > 0");
}

double resolve_half_width(const OperatorEvaluation& op) {
  if (op.quad.half_width > 0.0) return op.quad.half_width;
  const double r = default_half_width(op.w);
  return op.kernel->fejer() ? r : std::max(2.0, r);
}

int resolve_panels(const OperatorEvaluation& op, double half_width) {
  int nodes = op.quad.nodes_per_axis;
  if (nodes <= 0)
    nodes = default_nodes_per_axis(op.kernel->fejer() ? op.w : 1.0, half_width);
  int panels = std::max(2, nodes / 8);
  if (panels % 2 != 0) ++panels;  // keep u = 0 on a panel edge
  return panels;
}

// per-axis rule for the point s: kernel breakpoints plus the log-coordinate
// images of f's jumps and kinks (a feature of f at x = c appears in the
// integrand where s_j e^{u} = c)
AxisData build_axis(const OperatorEvaluation& op, const LogIntegrand& ker,
                    double half_width, int panels, int axis, double s_j) {
  std::vector<double> bps;
  if (axis < static_cast<int>(ker.axis_breakpoints.size()))
    bps = ker.axis_breakpoints[static_cast<std::size_t>(axis)];
  const double log_s = std::log(s_j);
  auto add_features = [&](const std::vector<std::vector<double>>& feats) {
    for (double c : feats[static_cast<std::size_t>(axis)])
      bps.push_back(std::log(c) - log_s);
  };
  add_features(op.f->jumps());
  add_features(op.f->kinks());

  AxisData ax;
  AxisRule rule = build_axis_rule(-half_width, half_width, panels, op.quad.rule, bps);
  ax.nodes = std::move(rule.nodes);
  ax.weights = std::move(rule.weights);
  ax.exp_nodes = ax.nodes;
  simd::ops().exp_inplace(ax.exp_nodes.data(), ax.exp_nodes.size());
  return ax;
}

double apply_at(const OperatorEvaluation& op, const LogIntegrand& ker,
                const std::vector<AxisData>& axes, const double* s) {
  const int n = op.kernel->dimension();
  const TestFunction& f = *op.f;
  const std::size_t inner = axes.back().nodes.size();

  std::vector<double> kv(inner), fw(inner);
  std::vector<double> urow(inner * static_cast<std::size_t>(n));
  double t[3];

  double acc = 0.0;
  if (n == 1) {
    for (std::size_t i = 0; i < inner; ++i) {
      t[0] = s[0] * axes[0].exp_nodes[i];
      fw[i] = f(t) * axes[0].weights[i];
    }
    ker.eval_points(axes[0].nodes.data(), inner, kv.data());
    acc = simd::ops().dot(kv.data(), fw.data(), inner);
  } else {
    std::vector<std::size_t> idx(static_cast<std::size_t>(n - 1), 0);
    bool done = false;
    while (!done) {
      double outer_w = 1.0;
      for (int j = 0; j < n - 1; ++j) {
        const auto& ax = axes[static_cast<std::size_t>(j)];
        outer_w *= ax.weights[idx[static_cast<std::size_t>(j)]];
        t[j] = s[j] * ax.exp_nodes[idx[static_cast<std::size_t>(j)]];
      }
      for (std::size_t i = 0; i < inner; ++i) {
        for (int j = 0; j < n - 1; ++j)
          urow[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
              axes[static_cast<std::size_t>(j)].nodes[idx[static_cast<std::size_t>(j)]];
        urow[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(n - 1)] =
            axes.back().nodes[i];
        t[n - 1] = s[n - 1] * axes.back().exp_nodes[i];
        fw[i] = f(t) * axes.back().weights[i];
      }
      ker.eval_points(urow.data(), inner, kv.data());
      acc += outer_w * simd::ops().dot(kv.data(), fw.data(), inner);

      int j = n - 2;
      for (; j >= 0; --j) {
        auto& cur = idx[static_cast<std::size_t>(j)];
        if (++cur < axes[static_cast<std::size_t>(j)].nodes.size()) break;
        cur = 0;
      }
      done = (j < 0);
    }
  }
  if (!std::isfinite(acc)) {
    std::string msg = "apply: non-finite operator value at s = (";
    for (int j = 0; j < n; ++j)
      msg += (j ? ", " : "") + std::to_string(s[j]);
    throw NonFiniteIntegrand(msg + ")");
  }
  return acc;
}

bool featureless(const TestFunction& f) {
  for (const auto& v : f.jumps())
    if (!v.empty()) return false;
  for (const auto& v : f.kinks())
    if (!v.empty()) return false;
  return true;
}

}  // namespace

double apply(const OperatorEvaluation& op, const std::vector<double>& s) {
  validate(op);
  const int n = op.kernel->dimension();
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("apply: point dimension mismatch");
  for (double sj : s)
    if (!(sj > 0.0)) throw std::invalid_argument("apply: s must lie in R^N_+");

  const double r = resolve_half_width(op);
  const int panels = resolve_panels(op, r);
  const LogIntegrand ker = op.kernel->kernel_integrand(op.w);
  std::vector<AxisData> axes;
  axes.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    axes.push_back(build_axis(op, ker, r, panels, j, s[static_cast<std::size_t>(j)]));
  return apply_at(op, ker, axes, s.data());
}

std::size_t SampledGrid::total_points() const {
  std::size_t total = 1;
  for (const auto& ax : axis_log_points) total *= ax.size();
  return total;
}

SampledGrid default_s_grid(int dimension) {
  if (dimension < 1 || dimension > 3)
    throw UnknownDimension("default_s_grid: dimension unsupported (1..3)");
  const int pts = dimension == 1 ? 257 : (dimension == 2 ? 65 : 17);
  return uniform_log_grid(dimension, pts, -5.0, 5.0);
}

SampledGrid uniform_log_grid(int dimension, int points_per_axis, double v_lo,
                             double v_hi) {
  if (dimension < 1 || dimension > 3)
    throw UnknownDimension("uniform_log_grid: dimension unsupported (1..3)");
  if (points_per_axis < 2 || !(v_hi > v_lo))
    throw std::invalid_argument("uniform_log_grid: bad grid parameters");
  std::vector<double> axis(static_cast<std::size_t>(points_per_axis));
  const double h = (v_hi - v_lo) / (points_per_axis - 1);
  for (int i = 0; i < points_per_axis; ++i) axis[static_cast<std::size_t>(i)] = v_lo + h * i;
  axis.back() = v_hi;
  SampledGrid g;
  g.axis_log_points.assign(static_cast<std::size_t>(dimension), axis);
  return g;
}

namespace {

void decode_point(const SampledGrid& grid, std::size_t flat, double* s) {
  const int n = grid.dimension();
  std::size_t rem = flat;
  for (int j = n - 1; j >= 0; --j) {
    const auto& ax = grid.axis_log_points[static_cast<std::size_t>(j)];
    s[j] = std::exp(ax[rem % ax.size()]);
    rem /= ax.size();
  }
}

}  // namespace

SampledFunction apply_on_grid(const OperatorEvaluation& op, const SampledGrid& grid) {
  validate(op);
  if (grid.dimension() != op.kernel->dimension())
    throw std::invalid_argument("apply_on_grid: grid dimension mismatch");
  for (const auto& ax : grid.axis_log_points)
    if (ax.empty() || !std::is_sorted(ax.begin(), ax.end()))
      throw std::invalid_argument("apply_on_grid: axis points must be sorted");

  const double r = resolve_half_width(op);
  const int panels = resolve_panels(op, r);
  const LogIntegrand ker = op.kernel->kernel_integrand(op.w);
  const int n = grid.dimension();

  SampledFunction out;
  out.grid = grid;
  out.values.assign(grid.total_points(), 0.0);

  // when f has no localized features the axis rules do not depend on s
  const bool shared_axes = featureless(*op.f);
  std::vector<AxisData> shared;
  if (shared_axes) {
    shared.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) shared.push_back(build_axis(op, ker, r, panels, j, 1.0));
  }

  parallel_for_blocks(out.values.size(), [&](std::size_t lo, std::size_t hi) {
    double s[3];
    for (std::size_t k = lo; k < hi; ++k) {
      decode_point(grid, k, s);
      if (shared_axes) {
        out.values[k] = apply_at(op, ker, shared, s);
      } else {
        std::vector<AxisData> axes;
        axes.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
          axes.push_back(build_axis(op, ker, r, panels, j, s[j]));
        out.values[k] = apply_at(op, ker, axes, s);
      }
    }
  });
  return out;
}

SampledFunction sample_on_grid(const TestFunction& f, const SampledGrid& grid) {
  if (grid.dimension() != f.dimension())
    throw std::invalid_argument("sample_on_grid: grid dimension mismatch");
  SampledFunction out;
  out.grid = grid;
  out.values.assign(grid.total_points(), 0.0);
  double s[3];
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    decode_point(grid, k, s);
    out.values[k] = f(s);
  }
  return out;
}

double gw_step_closed_form(double w, double s) {
  return 0.5 * std::erfc(w * std::log(1.0 / s));
}

}  // namespace mbv
