#include "mellin_bv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mellin_bv/parallel.hpp"
#include "mellin_bv/simd.hpp"

namespace mbv {

namespace {

// 8-point Gauss-Legendre abscissae/weights on [-1, 1]
constexpr double kGl8X[4] = {0.18343464249564980494, 0.52553240991632898582,
                             0.79666647741362673959, 0.96028985649753623168};
constexpr double kGl8W[4] = {0.36268378337836198297, 0.31370664587788728734,
                             0.22238103445337447054, 0.10122853629037625915};

constexpr int kMaxDim = 3;
constexpr int kMaxPanelNodes = 8;          // per axis, per leaf
constexpr int kOriginRefineDepth = 26;     // geometric refinement toward u = 0
constexpr int kBoundarySubdivDepth = 4;    // dyadic subdivision of cut cells

int nodes_per_panel(QuadRule rule) {
  switch (rule) {
    case QuadRule::midpoint: return 1;
    case QuadRule::trapezoid: return 2;
    case QuadRule::gauss_legendre_composite: return 8;
  }
  return 8;
}

int even_up(int n) { return (n % 2 == 0) ? n : n + 1; }

void append_panel_nodes(double a, double b, QuadRule rule, double* xs, double* ws,
                        int& count) {
  const double c = 0.5 * (a + b);
  const double h2 = 0.5 * (b - a);
  count = 0;
  switch (rule) {
    case QuadRule::midpoint:
      xs[count] = c;
      ws[count++] = b - a;
      break;
    case QuadRule::trapezoid:
      xs[count] = a;
      ws[count++] = h2;
      xs[count] = b;
      ws[count++] = h2;
      break;
    case QuadRule::gauss_legendre_composite:
      for (int i = 3; i >= 0; --i) {
        xs[count] = c - h2 * kGl8X[i];
        ws[count++] = h2 * kGl8W[i];
      }
      for (int i = 0; i < 4; ++i) {
        xs[count] = c + h2 * kGl8X[i];
        ws[count++] = h2 * kGl8W[i];
      }
      break;
  }
}

std::vector<double> build_edges(double lo, double hi, int base_panels,
                                const std::vector<double>& breakpoints) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(base_panels) + breakpoints.size() + 1);
  for (int i = 0; i <= base_panels; ++i)
    edges.push_back(lo + (hi - lo) * (static_cast<double>(i) / base_panels));
  const double tol =
      1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  for (double b : breakpoints)
    if (b > lo + tol && b < hi - tol) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  out.reserve(edges.size());
  for (double e : edges)
    if (out.empty() || e - out.back() > tol) out.push_back(e);
  out.back() = hi;
  return out;
}

struct CellBounds {
  double lo[kMaxDim];
  double hi[kMaxDim];
};

bool touches_origin(const CellBounds& c, int dim) {
  for (int j = 0; j < dim; ++j)
    if (c.lo[j] > 0.0 || c.hi[j] < 0.0) return false;
  return true;
}

enum class CellClass { all_near, all_far, cut };

// interval bounds of rho(u)^2 = sum_j (1 - e^{u_j})^2 over the cell
CellClass classify_cell(const CellBounds& c, int dim, double delta) {
  const double d2 = delta * delta;
  double lo_sum = 0.0, hi_sum = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double ga = 1.0 - std::exp(c.lo[j]);
    const double gb = 1.0 - std::exp(c.hi[j]);
    const double ga2 = ga * ga, gb2 = gb * gb;
    const bool spans_zero = c.lo[j] <= 0.0 && c.hi[j] >= 0.0;
    lo_sum += spans_zero ? 0.0 : std::min(ga2, gb2);
    hi_sum += std::max(ga2, gb2);
  }
  if (hi_sum <= d2) return CellClass::all_near;
  if (lo_sum > d2) return CellClass::all_far;
  return CellClass::cut;
}

struct Engine {
  const LogIntegrand* f = nullptr;
  int dim = 1;
  QuadRule rule = QuadRule::gauss_legendre_composite;
  bool region_mode = false;
  Region region = Region::near;
  double delta = 0.0;

  [[noreturn]] void throw_nonfinite(const double* u, double value) const {
    char buf[256];
    if (dim == 1)
      std::snprintf(buf, sizeof buf,
                    "integrand non-finite (%g) at t = (%.17g)", value, std::exp(u[0]));
    else if (dim == 2)
      std::snprintf(buf, sizeof buf,
                    "integrand non-finite (%g) at t = (%.17g, %.17g)", value,
                    std::exp(u[0]), std::exp(u[1]));
    else
      std::snprintf(buf, sizeof buf,
                    "integrand non-finite (%g) at t = (%.17g, %.17g, %.17g)", value,
                    std::exp(u[0]), std::exp(u[1]), std::exp(u[2]));
    throw NonFiniteIntegrand(buf);
  }

  // one panel-product cell evaluated with the local rule; sharp_indicator
  // zeroes the weights of nodes on the wrong side of |1 - t| = delta
  double eval_leaf(const CellBounds& c, bool sharp_indicator,
                   std::int64_t& nodes_used) const {
    double xs[kMaxDim][kMaxPanelNodes];
    double ws[kMaxDim][kMaxPanelNodes];
    int counts[kMaxDim] = {0, 0, 0};
    for (int j = 0; j < dim; ++j)
      append_panel_nodes(c.lo[j], c.hi[j], rule, xs[j], ws[j], counts[j]);

    constexpr int kCap = kMaxPanelNodes * kMaxPanelNodes * kMaxPanelNodes;
    double u_flat[kCap * kMaxDim];
    double wts[kCap];
    double vals[kCap];

    std::size_t n = 0;
    const int n0 = counts[0];
    const int n1 = dim > 1 ? counts[1] : 1;
    const int n2 = dim > 2 ? counts[2] : 1;
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
          double w = ws[0][i0];
          u_flat[n * dim + 0] = xs[0][i0];
          if (dim > 1) {
            u_flat[n * dim + 1] = xs[1][i1];
            w *= ws[1][i1];
          }
          if (dim > 2) {
            u_flat[n * dim + 2] = xs[2][i2];
            w *= ws[2][i2];
          }
          wts[n++] = w;
        }

    f->eval_points(u_flat, n, vals);
    nodes_used += static_cast<std::int64_t>(n);
    for (std::size_t k = 0; k < n; ++k)
      if (!std::isfinite(vals[k])) throw_nonfinite(u_flat + k * dim, vals[k]);

    if (sharp_indicator) {
      const double d2 = delta * delta;
      for (std::size_t k = 0; k < n; ++k) {
        double rho2 = 0.0;
        for (int j = 0; j < dim; ++j) {
          const double g = 1.0 - std::exp(u_flat[k * dim + j]);
          rho2 += g * g;
        }
        const bool near = rho2 <= d2;
        if (near != (region == Region::near)) wts[k] = 0.0;
      }
    }
    return simd::ops().dot(vals, wts, n);
  }

  // geometric refinement toward the origin corner for radially kinked
  // integrands; all emitted leaves are plain
  double origin_recurse(const CellBounds& c, int depth, std::int64_t& nodes_used) const {
    if (depth >= kOriginRefineDepth || !touches_origin(c, dim))
      return eval_leaf(c, false, nodes_used);
    double total = 0.0;
    const int parts = 1 << dim;
    for (int mask = 0; mask < parts; ++mask) {
      CellBounds sub = c;
      for (int j = 0; j < dim; ++j) {
        const double mid = 0.5 * (c.lo[j] + c.hi[j]);
        if (mask & (1 << j))
          sub.lo[j] = mid;
        else
          sub.hi[j] = mid;
      }
      if (touches_origin(sub, dim))
        total += origin_recurse(sub, depth + 1, nodes_used);
      else
        total += eval_leaf(sub, false, nodes_used);
    }
    return total;
  }

  double plain_cell(const CellBounds& c, std::int64_t& nodes_used) const {
    if (f->nonsmooth_at_origin && touches_origin(c, dim))
      return origin_recurse(c, 0, nodes_used);
    return eval_leaf(c, false, nodes_used);
  }

  double region_recurse(const CellBounds& c, int depth, std::int64_t& nodes_used) const {
    const CellClass cls = classify_cell(c, dim, delta);
    if (cls == CellClass::all_near)
      return region == Region::near ? plain_cell(c, nodes_used) : 0.0;
    if (cls == CellClass::all_far)
      return region == Region::far ? eval_leaf(c, false, nodes_used) : 0.0;
    if (depth >= kBoundarySubdivDepth) return eval_leaf(c, true, nodes_used);
    double total = 0.0;
    const int parts = 1 << dim;
    for (int mask = 0; mask < parts; ++mask) {
      CellBounds sub = c;
      for (int j = 0; j < dim; ++j) {
        const double mid = 0.5 * (c.lo[j] + c.hi[j]);
        if (mask & (1 << j))
          sub.lo[j] = mid;
        else
          sub.hi[j] = mid;
      }
      total += region_recurse(sub, depth + 1, nodes_used);
    }
    return total;
  }

  double process_cell(const CellBounds& c, std::int64_t& nodes_used) const {
    if (region_mode) return region_recurse(c, 0, nodes_used);
    return plain_cell(c, nodes_used);
  }
};

// one full pass at the given resolution; cells in lexicographic order
double run_pass(const Engine& eng, double half_width, int base_panels,
                std::int64_t* nodes_used_out) {
  const int dim = eng.dim;
  std::vector<double> edges[kMaxDim];
  std::size_t cells_per_axis[kMaxDim] = {1, 1, 1};
  std::size_t total_cells = 1;
  static const std::vector<double> kNoBreaks;
  for (int j = 0; j < dim; ++j) {
    const std::vector<double>& breaks =
        j < static_cast<int>(eng.f->axis_breakpoints.size()) ? eng.f->axis_breakpoints[j]
                                                             : kNoBreaks;
    edges[j] = build_edges(-half_width, half_width, base_panels, breaks);
    cells_per_axis[j] = edges[j].size() - 1;
    total_cells *= cells_per_axis[j];
  }

  std::vector<double> cell_values(total_cells, 0.0);
  std::vector<std::int64_t> cell_nodes(total_cells, 0);

  parallel_for_blocks(total_cells, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rem = idx;
      CellBounds c{};
      for (int j = dim - 1; j >= 0; --j) {
        const std::size_t i = rem % cells_per_axis[j];
        rem /= cells_per_axis[j];
        c.lo[j] = edges[j][i];
        c.hi[j] = edges[j][i + 1];
      }
      std::int64_t used = 0;
      cell_values[idx] = eng.process_cell(c, used);
      cell_nodes[idx] = used;
    }
  });

  if (nodes_used_out) {
    std::int64_t total = 0;
    for (std::int64_t k : cell_nodes) total += k;
    *nodes_used_out = total;
  }
  return simd::ops().sum(cell_values.data(), total_cells);
}

}  // namespace

LogDomainQuadrature LogDomainQuadrature::make(int dimension, double half_width,
                                              int nodes_per_axis, QuadRule rule) {
  if (dimension < 1 || dimension > kMaxDim)
    throw UnknownDimension("LogDomainQuadrature: dimension must be 1..3, got " +
                           std::to_string(dimension));
  if (!(half_width > 0.0))
    throw std::invalid_argument("LogDomainQuadrature: half_width must be > 0");
  if (nodes_per_axis < 8)
    throw std::invalid_argument("LogDomainQuadrature: nodes_per_axis must be >= 8");
  LogDomainQuadrature q;
  q.dimension = dimension;
  q.half_width = half_width;
  q.rule = rule;
  const int npp = nodes_per_panel(rule);
  const int panels = even_up(std::max(2, (nodes_per_axis + npp - 1) / npp));
  q.nodes_per_axis = panels * npp;
  return q;
}

double default_half_width(double w) {
  const double r = 40.0 / std::max(1.0, w);
  return std::clamp(r, 1e-2, 40.0);
}

double region_half_width(double w, double delta) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("region_half_width: delta must be in (0, 1)");
  const double extent = std::max(-std::log1p(-delta), std::log1p(delta));
  return default_half_width(w) + extent;
}

int default_nodes_per_axis(double w, double half_width) {
  const double span = half_width * std::max(1.0, w);
  const int panels = std::clamp(even_up(static_cast<int>(std::ceil(span / 1.25))),
                                16, 1024);
  return panels * 8;
}

LogIntegrand wrap_pointwise(int dimension, std::function<double(const double*)> f_of_t) {
  LogIntegrand g;
  g.dimension = dimension;
  g.eval_points = [dimension, f = std::move(f_of_t)](const double* u_flat,
                                                     std::size_t n, double* out) {
    double t[kMaxDim];
    for (std::size_t k = 0; k < n; ++k) {
      for (int j = 0; j < dimension; ++j) t[j] = std::exp(u_flat[k * dimension + j]);
      out[k] = f(t);
    }
  };
  return g;
}

namespace {

QuadratureResult integrate_impl(const LogIntegrand& f, const LogDomainQuadrature& q,
                                bool region_mode, Region region, double delta) {
  if (f.dimension != q.dimension)
    throw std::invalid_argument("integrate_haar: integrand/quadrature dimension mismatch");
  if (!f.eval_points)
    throw std::invalid_argument("integrate_haar: missing eval_points");

  // In region mode the boundary crosses each axis at log(1 -+ delta); aligning
  // panel edges there removes the indicator error entirely in one dimension.
  LogIntegrand augmented;
  const LogIntegrand* integrand = &f;
  if (region_mode) {
    augmented = f;
    augmented.axis_breakpoints.resize(static_cast<std::size_t>(q.dimension));
    for (auto& breaks : augmented.axis_breakpoints) {
      breaks.push_back(std::log1p(-delta));
      breaks.push_back(std::log1p(delta));
    }
    integrand = &augmented;
  }

  Engine eng;
  eng.f = integrand;
  eng.dim = q.dimension;
  eng.rule = q.rule;
  eng.region_mode = region_mode;
  eng.region = region;
  eng.delta = delta;

  const int base_panels = std::max(2, q.nodes_per_axis / nodes_per_panel(q.rule));

  QuadratureResult res;
  res.value = run_pass(eng, q.half_width, base_panels, &res.nodes_used);

  if (q.estimate_errors) {
    const int half_panels = std::max(2, even_up(base_panels / 2));
    const double v_half = run_pass(eng, q.half_width, half_panels, nullptr);
    res.est_discretization_error = std::fabs(res.value - v_half);
    const double v_wide = run_pass(eng, 2.0 * q.half_width, half_panels, nullptr);
    res.est_truncation_error = std::fabs(v_wide - v_half);
  }
  return res;
}

}  // namespace

QuadratureResult integrate_haar(const LogIntegrand& f, const LogDomainQuadrature& q) {
  return integrate_impl(f, q, false, Region::near, 0.0);
}

QuadratureResult integrate_haar_region(const LogIntegrand& f,
                                       const LogDomainQuadrature& q, Region region,
                                       double delta) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("integrate_haar_region: delta must be in (0, 1)");
  return integrate_impl(f, q, true, region, delta);
}

AxisRule build_axis_rule(double lo, double hi, int base_panels, QuadRule rule,
                         const std::vector<double>& breakpoints) {
  if (!(hi > lo)) throw std::invalid_argument("build_axis_rule: hi must exceed lo");
  if (base_panels < 1) throw std::invalid_argument("build_axis_rule: panels < 1");
  const std::vector<double> edges = build_edges(lo, hi, base_panels, breakpoints);
  AxisRule r;
  const int npp = nodes_per_panel(rule);
  r.nodes.reserve((edges.size() - 1) * npp);
  r.weights.reserve((edges.size() - 1) * npp);
  double xs[kMaxPanelNodes], ws[kMaxPanelNodes];
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    int count = 0;
    append_panel_nodes(edges[i], edges[i + 1], rule, xs, ws, count);
    for (int k = 0; k < count; ++k) {
      r.nodes.push_back(xs[k]);
      r.weights.push_back(ws[k]);
    }
  }
  return r;
}

}  // namespace mbv
