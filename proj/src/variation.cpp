#include "mellin_bv/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mellin_bv/parallel.hpp"
#include "mellin_bv/simd.hpp"

namespace mbv {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kJumpStraddle = 1e-9;  // relative gap around jump locations

bool close_enough(double cur, double prev, double tol) {
  return std::fabs(cur - prev) <= tol * std::max(std::fabs(cur), kTiny);
}

// dyadic log grid of [a, b] at the given depth, merged with extra x-space
// points; deeper grids contain shallower ones exactly (i / 2^d is exact)
std::vector<double> log_grid(double a, double b, int depth,
                             const std::vector<double>& extras_x) {
  const double la = std::log(a), lb = std::log(b);
  const std::size_t m = (static_cast<std::size_t>(1) << depth) + 1;
  std::vector<double> pts;
  pts.reserve(m + extras_x.size());
  const double span = lb - la;
  const double inv = 1.0 / static_cast<double>(static_cast<std::size_t>(1) << depth);
  for (std::size_t i = 0; i < m; ++i)
    pts.push_back(std::exp(la + span * (static_cast<double>(i) * inv)));
  pts.front() = a;
  pts.back() = b;
  for (double c : extras_x)
    if (c > a && c < b) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// jump locations get straddled by a tight pair so the grid sees both sides
std::vector<double> feature_points(const TestFunction& f, int axis) {
  std::vector<double> out;
  const auto u = static_cast<std::size_t>(axis);
  for (double c : f.jumps()[u]) {
    out.push_back(c * (1.0 - kJumpStraddle));
    out.push_back(c);
    out.push_back(c * (1.0 + kJumpStraddle));
  }
  for (double c : f.kinks()[u]) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> merge_points(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

double dp_sup(const std::vector<double>& values, const PhiFunction& phi) {
  return var1d_points(values, phi);
}

}  // namespace

Partition1D Partition1D::validated(std::vector<double> pts) {
  if (pts.size() < 2)
    throw std::invalid_argument("Partition1D: need at least two points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i] > 0.0))
      throw std::invalid_argument("Partition1D: points must be positive");
    if (i > 0 && !(pts[i] > pts[i - 1]))
      throw std::invalid_argument("Partition1D: points must be strictly increasing");
  }
  Partition1D p;
  p.points = std::move(pts);
  return p;
}

double var1d(const Scalar1D& g, const PhiFunction& phi, const Partition1D& partition) {
  double acc = 0.0;
  double prev = g(partition.points.front());
  for (std::size_t i = 1; i < partition.points.size(); ++i) {
    const double cur = g(partition.points[i]);
    acc += phi(std::fabs(cur - prev));
    prev = cur;
  }
  return acc;
}

double var1d_points(const std::vector<double>& values, const PhiFunction& phi) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, 0.0);
  const auto p = phi.power_exponent();
  for (std::size_t j = 1; j < n; ++j) {
    if (p) {
      best[j] = simd::ops().dp_relax(best.data(), values.data(), j, values[j], *p);
    } else {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < j; ++i) {
        const double c = best[i] + phi(std::fabs(values[j] - values[i]));
        m = (c > m) ? c : m;
      }
      best[j] = m;
    }
  }
  return best[n - 1];
}

double brute_force_var1d(const std::vector<double>& values, const PhiFunction& phi) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  if (n > 14)
    throw TooManyPoints("brute_force_var1d: more than 14 points (2^(n-2) chains)");
  const std::size_t interior = n - 2;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << interior); ++mask) {
    double prev = values[0];
    double acc = 0.0;
    for (std::size_t b = 0; b < interior; ++b) {
      if (mask & (static_cast<std::size_t>(1) << b)) {
        const double x = values[b + 1];
        acc += phi(std::fabs(x - prev));
        prev = x;
      }
    }
    acc += phi(std::fabs(values[n - 1] - prev));
    best = (acc > best) ? acc : best;
  }
  return best;
}

VariationEstimate var1d_sup(const Scalar1D& g, const PhiFunction& phi, double a,
                            double b, const RefinementPolicy& policy) {
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("var1d_sup: need 0 < a < b");
  const std::vector<double> extras =
      policy.extra_points.empty() ? std::vector<double>{} : policy.extra_points[0];

  VariationEstimate est;
  double prev = 0.0;
  const int d0 = std::min(3, policy.depth_max);
  for (int d = d0; d <= policy.depth_max; ++d) {
    const std::vector<double> xs = log_grid(a, b, d, extras);
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = g(xs[i]);
    const double v = dp_sup(vals, phi);
    est.lower_bound = v;
    est.refinement_depth = d;
    if (d > d0 && close_enough(v, prev, policy.tol)) {
      est.converged = true;
      break;
    }
    prev = v;
  }
  return est;
}

double var_upper_1d(const Scalar1D& g, const PhiFunction& phi, double a, double b,
                    const RefinementPolicy& policy) {
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("var_upper_1d: need 0 < a < b");
  const std::vector<double> extras =
      policy.extra_points.empty() ? std::vector<double>{} : policy.extra_points[0];
  const std::vector<double> xs = log_grid(a, b, policy.depth_max + 1, extras);
  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = g(xs[i]);
  return dp_sup(vals, phi);
}

namespace {

// variation of the axis-j section through the fixed face point
double section_variation(const TestFunction& f, const PhiFunction& phi, double lambda,
                         double a_j, double b_j, int axis_j, const double* face,
                         const RefinementPolicy& policy) {
  const int n = f.dimension();
  Scalar1D g = [&](double x) {
    double t[3];
    for (int i = 0; i < n; ++i) t[i] = face[i];
    t[axis_j] = x;
    return lambda * f(t);
  };
  return var1d_sup(g, phi, a_j, b_j, policy).lower_bound;
}

}  // namespace

double section_functional(const TestFunction& f, const PhiFunction& phi, double lambda,
                          const Box& box, int axis_j, const MarginalQuad& mq,
                          const RefinementPolicy& policy) {
  const int n = f.dimension();
  if (box.dimension() != n)
    throw std::invalid_argument("section_functional: box dimension mismatch");
  if (axis_j < 0 || axis_j >= n)
    throw std::invalid_argument("section_functional: axis out of range");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("section_functional: lambda must be >= 0");

  RefinementPolicy pol = policy;
  {
    std::vector<double> ex = feature_points(f, axis_j);
    if (!policy.extra_points.empty() &&
        static_cast<int>(policy.extra_points.size()) > axis_j)
      ex = merge_points(std::move(ex),
                        policy.extra_points[static_cast<std::size_t>(axis_j)]);
    pol.extra_points = {std::move(ex)};
  }

  const double a_j = box.intervals[static_cast<std::size_t>(axis_j)][0];
  const double b_j = box.intervals[static_cast<std::size_t>(axis_j)][1];

  if (n == 1) {
    double face[1] = {1.0};
    return section_variation(f, phi, lambda, a_j, b_j, 0, face, pol);
  }

  // marginal rule per face axis, in log coordinates, with feature breakpoints
  std::vector<AxisRule> rules;
  std::vector<int> face_axes;
  int panels = std::max(2, mq.nodes_per_axis / 8);
  if (panels % 2 != 0) ++panels;
  for (int i = 0; i < n; ++i) {
    if (i == axis_j) continue;
    const double la = std::log(box.intervals[static_cast<std::size_t>(i)][0]);
    const double lb = std::log(box.intervals[static_cast<std::size_t>(i)][1]);
    std::vector<double> bps;
    for (double c : feature_points(f, i)) {
      const double lc = std::log(c);
      if (lc > la && lc < lb) bps.push_back(lc);
    }
    rules.push_back(build_axis_rule(la, lb, panels, mq.rule, bps));
    face_axes.push_back(i);
  }

  std::size_t combos = 1;
  for (const auto& r : rules) combos *= r.nodes.size();
  std::vector<double> slots(combos, 0.0);

  parallel_for_blocks(combos, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      double face[3] = {1.0, 1.0, 1.0};
      double wgt = 1.0;
      std::size_t rem = k;
      for (int r = static_cast<int>(rules.size()) - 1; r >= 0; --r) {
        const auto& rule = rules[static_cast<std::size_t>(r)];
        const std::size_t idx = rem % rule.nodes.size();
        rem /= rule.nodes.size();
        face[face_axes[static_cast<std::size_t>(r)]] = std::exp(rule.nodes[idx]);
        wgt *= rule.weights[idx];
      }
      slots[k] =
          wgt * section_variation(f, phi, lambda, a_j, b_j, axis_j, face, pol);
    }
  });
  return simd::ops().sum(slots.data(), slots.size());
}

double box_functional(const TestFunction& f, const PhiFunction& phi, double lambda,
                      const Box& box, const MarginalQuad& mq,
                      const RefinementPolicy& policy, std::vector<double>* per_axis) {
  const int n = f.dimension();
  double sq = 0.0;
  bool infinite = false;
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const double v = section_functional(f, phi, lambda, box, j, mq, policy);
    s[static_cast<std::size_t>(j)] = v;
    if (!std::isfinite(v)) infinite = true;
    sq += v * v;
  }
  if (per_axis != nullptr) *per_axis = s;
  if (infinite) return std::numeric_limits<double>::infinity();
  return std::sqrt(sq);
}

namespace {

// per-axis partition edges: dyadic in log space, optionally augmented with
// the feature coordinates of f inside the interval
std::vector<double> partition_edges(const TestFunction& f, int axis, double a,
                                    double b, int depth, bool with_features) {
  std::vector<double> edges = log_grid(a, b, depth, {});
  if (with_features) {
    std::vector<double> feats;
    const auto u = static_cast<std::size_t>(axis);
    for (double c : f.jumps()[u]) feats.push_back(c);
    for (double c : f.kinks()[u]) feats.push_back(c);
    for (double c : feats)
      if (c > a && c < b) edges.push_back(c);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return edges;
}

bool any_features(const TestFunction& f) {
  for (const auto& v : f.jumps())
    if (!v.empty()) return true;
  for (const auto& v : f.kinks())
    if (!v.empty()) return true;
  return false;
}

double partition_sum(const TestFunction& f, const PhiFunction& phi, double lambda,
                     const std::vector<std::vector<double>>& edges,
                     const MarginalQuad& mq, const RefinementPolicy& policy) {
  const int n = f.dimension();
  std::size_t cells = 1;
  for (const auto& e : edges) cells *= e.size() - 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    std::size_t rem = k;
    std::vector<std::array<double, 2>> iv(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
      const auto& e = edges[static_cast<std::size_t>(j)];
      const std::size_t i = rem % (e.size() - 1);
      rem /= e.size() - 1;
      iv[static_cast<std::size_t>(j)] = {e[i], e[i + 1]};
    }
    acc += box_functional(f, phi, lambda, Box::make(std::move(iv)), mq, policy,
                          nullptr);
  }
  return acc;
}

}  // namespace

VariationEstimate var_box(const TestFunction& f, const PhiFunction& phi, double lambda,
                          const Box& box, const MarginalQuad& mq,
                          const RefinementPolicy& policy) {
  const int n = f.dimension();
  if (box.dimension() != n)
    throw std::invalid_argument("var_box: box dimension mismatch");

  VariationEstimate est;
  {
    std::vector<double> per_axis;
    const double whole = box_functional(f, phi, lambda, box, mq, policy, &per_axis);
    est.breakdown = per_axis;
    est.lower_bound = whole;
  }
  const bool feats = any_features(f);
  double prev_depth_value = est.lower_bound;
  for (int d = 0; d <= policy.box_partition_depth; ++d) {
    double depth_value = 0.0;
    for (int variant = 0; variant < (feats ? 2 : 1); ++variant) {
      if (d == 0 && variant == 0) {
        depth_value = std::max(depth_value, est.lower_bound);
        continue;  // the whole box was already evaluated above
      }
      std::vector<std::vector<double>> edges;
      for (int j = 0; j < n; ++j)
        edges.push_back(partition_edges(f, j,
                                        box.intervals[static_cast<std::size_t>(j)][0],
                                        box.intervals[static_cast<std::size_t>(j)][1],
                                        d, variant == 1));
      depth_value =
          std::max(depth_value, partition_sum(f, phi, lambda, edges, mq, policy));
    }
    est.lower_bound = std::max(est.lower_bound, depth_value);
    est.refinement_depth = d;
    if (d > 0 && close_enough(depth_value, prev_depth_value, policy.tol)) {
      est.converged = true;
      break;
    }
    prev_depth_value = depth_value;
  }
  return est;
}

VariationEstimate var_global(const TestFunction& f, const PhiFunction& phi,
                             double lambda, const std::vector<double>& box_ladder,
                             const MarginalQuad& mq, const RefinementPolicy& policy) {
  if (box_ladder.empty())
    throw std::invalid_argument("var_global: empty box ladder");
  const int n = f.dimension();
  VariationEstimate est;
  double prev = 0.0;
  for (std::size_t i = 0; i < box_ladder.size(); ++i) {
    const double m = box_ladder[i];
    if (!(m > 0.0)) throw std::invalid_argument("var_global: ladder entries must be > 0");
    const Box box = Box::cube(std::exp(-m), std::exp(m), n);
    const VariationEstimate be = var_box(f, phi, lambda, box, mq, policy);
    est.ladder_values.push_back(be.lower_bound);
    if (be.lower_bound >= est.lower_bound) {
      est.lower_bound = be.lower_bound;
      est.breakdown = be.breakdown;
    }
    est.refinement_depth = static_cast<int>(i);
    if (i > 0) est.converged = close_enough(be.lower_bound, prev, policy.tol);
    prev = be.lower_bound;
  }
  return est;
}

std::vector<std::vector<double>> modulus_t_samples(int dimension, double delta) {
  if (dimension < 1 || dimension > 3)
    throw UnknownDimension("modulus_t_samples: dimension unsupported (1..3)");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("modulus_t_samples: delta must be in (0, 1)");
  std::vector<std::vector<double>> out;
  const double root_n = std::sqrt(static_cast<double>(dimension));
  for (double r : {delta, 0.5 * delta, 0.25 * delta}) {
    for (int j = 0; j < dimension; ++j) {
      std::vector<double> up(static_cast<std::size_t>(dimension), 1.0);
      up[static_cast<std::size_t>(j)] = 1.0 + r;
      out.push_back(up);
      std::vector<double> down(static_cast<std::size_t>(dimension), 1.0);
      down[static_cast<std::size_t>(j)] = 1.0 - r;
      out.push_back(down);
    }
    if (dimension >= 2) {
      out.emplace_back(static_cast<std::size_t>(dimension), 1.0 + r / root_n);
      out.emplace_back(static_cast<std::size_t>(dimension), 1.0 - r / root_n);
    }
  }
  return out;
}

double modulus(const TestFunction& f, const PhiFunction& phi, double lambda,
               double delta, const std::vector<double>& box_ladder,
               const MarginalQuad& mq, const RefinementPolicy& policy) {
  double best = 0.0;
  for (const auto& t : modulus_t_samples(f.dimension(), delta)) {
    const TestFunction diff = increment(f, t);
    const double v =
        var_global(diff, phi, lambda, box_ladder, mq, policy).lower_bound;
    best = std::max(best, v);
  }
  return best;
}

// ---- sampled-table machinery -------------------------------------------

namespace {

struct IndexRange {
  std::size_t lo = 0, hi = 0;  // inclusive
  std::size_t count() const { return hi - lo + 1; }
};

struct TableShape {
  int n = 1;
  std::array<std::size_t, 3> size{1, 1, 1};
  std::array<std::size_t, 3> stride{1, 1, 1};
};

TableShape shape_of(const SampledFunction& t) {
  TableShape s;
  s.n = t.grid.dimension();
  for (int j = 0; j < s.n; ++j)
    s.size[static_cast<std::size_t>(j)] =
        t.grid.axis_log_points[static_cast<std::size_t>(j)].size();
  s.stride[static_cast<std::size_t>(s.n - 1)] = 1;
  for (int j = s.n - 2; j >= 0; --j)
    s.stride[static_cast<std::size_t>(j)] =
        s.stride[static_cast<std::size_t>(j + 1)] * s.size[static_cast<std::size_t>(j + 1)];
  return s;
}

// trapezoid weights over a slice of log points (single point -> weight 0)
std::vector<double> trap_weights(const std::vector<double>& v, const IndexRange& r) {
  std::vector<double> w(r.count(), 0.0);
  if (r.count() < 2) return w;
  for (std::size_t i = 0; i < r.count(); ++i) {
    const std::size_t g = r.lo + i;
    const double left = (i == 0) ? v[g] : v[g - 1];
    const double right = (i + 1 == r.count()) ? v[g] : v[g + 1];
    w[i] = 0.5 * (right - left);
  }
  return w;
}

// Tonelli value of the table over one index-space cell
double table_cell_value(const SampledFunction& t, const TableShape& sh,
                        const PhiFunction& phi, double lambda,
                        const std::array<IndexRange, 3>& r) {
  const int n = sh.n;
  if (n == 1) {
    std::vector<double> vals;
    vals.reserve(r[0].count());
    for (std::size_t i = r[0].lo; i <= r[0].hi; ++i)
      vals.push_back(lambda * t.values[i]);
    return var1d_points(vals, phi);
  }

  double sq = 0.0;
  for (int j = 0; j < n; ++j) {
    // iterate the face (all axes but j), integrate section variations
    std::array<int, 2> face_axes{};
    int fa = 0;
    for (int i = 0; i < n; ++i)
      if (i != j) face_axes[static_cast<std::size_t>(fa++)] = i;

    std::vector<std::vector<double>> fw(static_cast<std::size_t>(fa));
    std::size_t combos = 1;
    for (int i = 0; i < fa; ++i) {
      const int ax = face_axes[static_cast<std::size_t>(i)];
      fw[static_cast<std::size_t>(i)] = trap_weights(
          t.grid.axis_log_points[static_cast<std::size_t>(ax)],
          r[static_cast<std::size_t>(ax)]);
      combos *= r[static_cast<std::size_t>(ax)].count();
    }

    const auto ju = static_cast<std::size_t>(j);
    double phi_j = 0.0;
    std::vector<double> vals(r[ju].count());
    for (std::size_t k = 0; k < combos; ++k) {
      std::size_t rem = k;
      std::size_t base = 0;
      double wgt = 1.0;
      for (int i = fa - 1; i >= 0; --i) {
        const int ax = face_axes[static_cast<std::size_t>(i)];
        const auto au = static_cast<std::size_t>(ax);
        const std::size_t local = rem % r[au].count();
        rem /= r[au].count();
        base += (r[au].lo + local) * sh.stride[au];
        wgt *= fw[static_cast<std::size_t>(i)][local];
      }
      for (std::size_t i = 0; i < r[ju].count(); ++i)
        vals[i] = lambda * t.values[base + (r[ju].lo + i) * sh.stride[ju]];
      phi_j += wgt * var1d_points(vals, phi);
    }
    sq += phi_j * phi_j;
  }
  return std::sqrt(sq);
}

// sup over index-space tensor partitions at dyadic depths
double table_box_value(const SampledFunction& t, const TableShape& sh,
                       const PhiFunction& phi, double lambda,
                       const std::array<IndexRange, 3>& full, int depth_max) {
  const int n = sh.n;
  double best = table_cell_value(t, sh, phi, lambda, full);
  if (n == 1) return best;  // 1-D variation is superadditive: splitting loses

  for (int d = 1; d <= depth_max; ++d) {
    const std::size_t chunks = static_cast<std::size_t>(1) << d;
    bool feasible = true;
    std::array<std::vector<std::size_t>, 3> cuts;
    for (int j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const std::size_t m = full[ju].count();
      if (m < chunks + 1) {
        feasible = false;
        break;
      }
      auto& c = cuts[ju];
      for (std::size_t k = 0; k <= chunks; ++k)
        c.push_back(full[ju].lo + (m - 1) * k / chunks);
    }
    if (!feasible) break;

    std::size_t cells = 1;
    for (int j = 0; j < n; ++j) cells *= chunks;
    double total = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
      std::size_t rem = k;
      std::array<IndexRange, 3> r = full;
      for (int j = n - 1; j >= 0; --j) {
        const auto ju = static_cast<std::size_t>(j);
        const std::size_t i = rem % chunks;
        rem /= chunks;
        r[ju] = {cuts[ju][i], cuts[ju][i + 1]};
      }
      total += table_cell_value(t, sh, phi, lambda, r);
    }
    best = std::max(best, total);
  }
  return best;
}

std::array<IndexRange, 3> clip_ranges(const SampledFunction& t, double log_half_width,
                                      bool& usable) {
  const int n = t.grid.dimension();
  std::array<IndexRange, 3> r{};
  usable = true;
  for (int j = 0; j < n; ++j) {
    const auto& ax = t.grid.axis_log_points[static_cast<std::size_t>(j)];
    std::size_t lo = 0;
    while (lo < ax.size() && ax[lo] < -log_half_width) ++lo;
    std::size_t hi = ax.size();
    while (hi > 0 && ax[hi - 1] > log_half_width) --hi;
    if (hi < lo + 2) {
      usable = false;
      return r;
    }
    r[static_cast<std::size_t>(j)] = {lo, hi - 1};
  }
  return r;
}

}  // namespace

VariationEstimate var_global_table(const SampledFunction& table, const PhiFunction& phi,
                                   double lambda, const std::vector<double>& box_ladder,
                                   const RefinementPolicy& policy) {
  if (box_ladder.empty())
    throw std::invalid_argument("var_global_table: empty box ladder");
  const TableShape sh = shape_of(table);
  VariationEstimate est;
  double prev = 0.0;
  for (std::size_t i = 0; i < box_ladder.size(); ++i) {
    bool usable = false;
    const auto ranges = clip_ranges(table, box_ladder[i], usable);
    const double v = usable ? table_box_value(table, sh, phi, lambda, ranges,
                                              policy.box_partition_depth)
                            : 0.0;
    est.ladder_values.push_back(v);
    est.lower_bound = std::max(est.lower_bound, v);
    est.refinement_depth = static_cast<int>(i);
    if (i > 0) est.converged = close_enough(v, prev, policy.tol);
    prev = v;
  }
  return est;
}

double var_upper_table(const SampledFunction& table, const PhiFunction& phi,
                       double lambda) {
  const TableShape sh = shape_of(table);
  std::array<IndexRange, 3> full{};
  for (int j = 0; j < sh.n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (sh.size[ju] < 2) return 0.0;
    full[ju] = {0, sh.size[ju] - 1};
  }
  return table_box_value(table, sh, phi, lambda, full, 3);
}

std::vector<double> default_box_ladder() { return {1.0, 2.0, 4.0, 8.0}; }

}  // namespace mbv
