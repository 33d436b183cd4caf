#include "mellin_bv/functions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mellin_bv/errors.hpp"

namespace mbv {

namespace {

// C1 bump: (1 - v^2)^2 on [-1, 1], zero outside; peak value 1 at v = 0
double bump(double v) {
  if (v <= -1.0 || v >= 1.0) return 0.0;
  const double q = 1.0 - v * v;
  return q * q;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double step_at_one(double x) { return x >= 1.0 ? 1.0 : 0.0; }

const double kSineWindow = 2.0 * 3.14159265358979323846;

}  // namespace

TestFunction::TestFunction(std::string name, int dimension, Eval eval,
                           RegularityTags tags)
    : name_(std::move(name)),
      dim_(dimension),
      eval_(std::move(eval)),
      tags_(tags),
      jumps_(static_cast<std::size_t>(dimension)),
      kinks_(static_cast<std::size_t>(dimension)) {}

std::optional<double> TestFunction::exact_variation(const PhiFunction& phi,
                                                    double lambda,
                                                    const Box* box) const {
  if (!exact_) return std::nullopt;
  return exact_(phi, lambda, box);
}

TestFunction& TestFunction::with_jumps(std::vector<std::vector<double>> j) {
  jumps_ = std::move(j);
  return *this;
}

TestFunction& TestFunction::with_kinks(std::vector<std::vector<double>> k) {
  kinks_ = std::move(k);
  return *this;
}

TestFunction& TestFunction::with_exact_variation(ExactVariation ev) {
  exact_ = std::move(ev);
  return *this;
}

TestFunction translate(const TestFunction& f, const std::vector<double>& t) {
  const int n = f.dimension();
  if (static_cast<int>(t.size()) != n)
    throw std::invalid_argument("translate: t has wrong dimension");
  for (double tj : t)
    if (!(tj > 0.0)) throw std::invalid_argument("translate: t must be positive");

  TestFunction::Eval ev = [f, t, n](const double* x) {
    double xt[3];
    for (int j = 0; j < n; ++j) xt[j] = x[j] * t[j];
    return f(xt);
  };
  TestFunction out("translate(" + f.name() + ")", n, std::move(ev), f.tags());

  auto shift = [&](const std::vector<std::vector<double>>& src) {
    std::vector<std::vector<double>> dst(src.size());
    for (int j = 0; j < n; ++j) {
      for (double c : src[static_cast<std::size_t>(j)])
        dst[static_cast<std::size_t>(j)].push_back(c / t[static_cast<std::size_t>(j)]);
      std::sort(dst[static_cast<std::size_t>(j)].begin(),
                dst[static_cast<std::size_t>(j)].end());
    }
    return dst;
  };
  out.with_jumps(shift(f.jumps())).with_kinks(shift(f.kinks()));

  // variation is invariant under the homothety: the value over a box equals
  // the value of f over the componentwise scaled box
  out.with_exact_variation(
      [f, t, n](const PhiFunction& phi, double lambda,
                const Box* box) -> std::optional<double> {
        if (box == nullptr) return f.exact_variation(phi, lambda, nullptr);
        std::vector<std::array<double, 2>> iv;
        iv.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
          const auto& ab = box->intervals[static_cast<std::size_t>(j)];
          iv.push_back({ab[0] * t[static_cast<std::size_t>(j)],
                        ab[1] * t[static_cast<std::size_t>(j)]});
        }
        const Box shifted = Box::make(std::move(iv));
        return f.exact_variation(phi, lambda, &shifted);
      });
  return out;
}

TestFunction increment(const TestFunction& f, const std::vector<double>& t) {
  const int n = f.dimension();
  if (static_cast<int>(t.size()) != n)
    throw std::invalid_argument("increment: t has wrong dimension");
  for (double tj : t)
    if (!(tj > 0.0)) throw std::invalid_argument("increment: t must be positive");

  TestFunction::Eval ev = [f, t, n](const double* x) {
    double xt[3];
    for (int j = 0; j < n; ++j) xt[j] = x[j] * t[j];
    return f(xt) - f(x);
  };
  RegularityTags tags;
  tags.bounded = f.tags().bounded;  // nothing else survives the difference
  TestFunction out("increment(" + f.name() + ")", n, std::move(ev), tags);

  auto merged = [&](const std::vector<std::vector<double>>& src) {
    std::vector<std::vector<double>> dst(src.size());
    for (int j = 0; j < n; ++j) {
      auto& col = dst[static_cast<std::size_t>(j)];
      for (double c : src[static_cast<std::size_t>(j)]) {
        col.push_back(c);
        col.push_back(c / t[static_cast<std::size_t>(j)]);
      }
      std::sort(col.begin(), col.end());
      col.erase(std::unique(col.begin(), col.end()), col.end());
    }
    return dst;
  };
  out.with_jumps(merged(f.jumps())).with_kinks(merged(f.kinks()));
  return out;
}

TestFunction sum_of(const TestFunction& a, const TestFunction& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("sum_of: dimensions differ");
  const int n = a.dimension();
  RegularityTags tags;
  tags.bounded = a.tags().bounded && b.tags().bounded;
  tags.bv_phi = a.tags().bv_phi && b.tags().bv_phi;
  tags.ac_phi = a.tags().ac_phi && b.tags().ac_phi;
  if (a.tags().lip_alpha && b.tags().lip_alpha)
    tags.lip_alpha = std::min(*a.tags().lip_alpha, *b.tags().lip_alpha);
  TestFunction out(
      "sum(" + a.name() + "," + b.name() + ")", n,
      [a, b](const double* x) { return a(x) + b(x); }, tags);

  std::vector<std::vector<double>> jumps(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> kinks(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto u = static_cast<std::size_t>(j);
    auto merge = [&](std::vector<double>& dst, const std::vector<double>& s1,
                     const std::vector<double>& s2) {
      dst = s1;
      dst.insert(dst.end(), s2.begin(), s2.end());
      std::sort(dst.begin(), dst.end());
      dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
    };
    merge(jumps[u], a.jumps()[u], b.jumps()[u]);
    merge(kinks[u], a.kinks()[u], b.kinks()[u]);
  }
  out.with_jumps(std::move(jumps)).with_kinks(std::move(kinks));
  return out;
}

TestFunction scale_of(const TestFunction& f, double c) {
  TestFunction out(
      "scale(" + f.name() + ")", f.dimension(),
      [f, c](const double* x) { return c * f(x); }, f.tags());
  out.with_jumps(f.jumps()).with_kinks(f.kinks());
  const double ac = std::fabs(c);
  out.with_exact_variation(
      [f, ac](const PhiFunction& phi, double lambda,
              const Box* box) -> std::optional<double> {
        if (ac == 0.0) return 0.0;
        return f.exact_variation(phi, lambda * ac, box);
      });
  return out;
}

namespace {

TestFunction make_step1d() {
  RegularityTags tags;
  tags.bv_phi = true;
  tags.bounded = true;
  TestFunction f(
      "step1d", 1, [](const double* x) { return step_at_one(x[0]); }, tags);
  f.with_jumps({{1.0}});
  f.with_exact_variation([](const PhiFunction& phi, double lambda,
                            const Box* box) -> std::optional<double> {
    if (box == nullptr) return phi(lambda);
    const auto& ab = box->intervals[0];
    // the jump contributes iff the box has points strictly below 1 and at or
    // above 1
    return (ab[0] < 1.0 && ab[1] >= 1.0) ? phi(lambda) : 0.0;
  });
  return f;
}

TestFunction make_logbump(int n) {
  RegularityTags tags;
  tags.bv_phi = true;
  tags.ac_phi = true;
  tags.bounded = true;
  tags.lip_alpha = 1.0;
  TestFunction f(
      "logbump", n,
      [n](const double* x) {
        double v = 1.0;
        for (int j = 0; j < n; ++j) v *= bump(std::log(x[j]));
        return v;
      },
      tags);
  std::vector<std::vector<double>> kinks(
      static_cast<std::size_t>(n),
      std::vector<double>{std::exp(-1.0), std::exp(1.0)});
  f.with_kinks(std::move(kinks));
  if (n == 1) {
    f.with_exact_variation([](const PhiFunction& phi, double lambda,
                              const Box* box) -> std::optional<double> {
      auto g = [](double x) { return bump(std::log(x)); };
      if (box == nullptr) return phi(lambda) + phi(lambda);  // up 1, down 1
      const double a = box->intervals[0][0], b = box->intervals[0][1];
      if (b <= 1.0) return phi(lambda * (g(b) - g(a)));  // nondecreasing piece
      if (a >= 1.0) return phi(lambda * (g(a) - g(b)));  // nonincreasing piece
      return phi(lambda * (1.0 - g(a))) + phi(lambda * (1.0 - g(b)));
    });
  }
  return f;
}

TestFunction make_clamplog() {
  RegularityTags tags;
  tags.bv_phi = true;
  tags.ac_phi = true;
  tags.bounded = true;
  tags.lip_alpha = 1.0;
  TestFunction f(
      "clamplog", 1, [](const double* x) { return clamp01(std::log(x[0])); }, tags);
  f.with_kinks({{1.0, std::exp(1.0)}});
  f.with_exact_variation([](const PhiFunction& phi, double lambda,
                            const Box* box) -> std::optional<double> {
    // nondecreasing, so the variation is one increment end to end
    double lo = 0.0, hi = 1.0;
    if (box != nullptr) {
      lo = clamp01(std::log(box->intervals[0][0]));
      hi = clamp01(std::log(box->intervals[0][1]));
    }
    return phi(lambda * (hi - lo));
  });
  return f;
}

TestFunction make_sinelog() {
  RegularityTags tags;
  tags.bv_phi = true;
  tags.ac_phi = true;
  tags.bounded = true;
  TestFunction f(
      "sinelog", 1,
      [](const double* x) {
        const double v = std::log(x[0]);
        return std::sin(v) * bump(v / kSineWindow);
      },
      tags);
  f.with_kinks({{std::exp(-kSineWindow), std::exp(kSineWindow)}});
  return f;
}

TestFunction make_prodstep(int n) {
  RegularityTags tags;
  tags.bv_phi = true;  // on boxes; the global ladder grows with the box
  tags.bounded = true;
  TestFunction f(
      "prodstep", n,
      [n](const double* x) {
        double v = 1.0;
        for (int j = 0; j < n; ++j) v *= step_at_one(x[j]);
        return v;
      },
      tags);
  std::vector<std::vector<double>> jumps(static_cast<std::size_t>(n),
                                         std::vector<double>{1.0});
  f.with_jumps(std::move(jumps));
  return f;
}

TestFunction make_const(int n) {
  RegularityTags tags;
  tags.bv_phi = true;
  tags.ac_phi = true;
  tags.bounded = true;
  TestFunction f(
      "const", n, [](const double*) { return 1.0; }, tags);
  f.with_exact_variation([](const PhiFunction&, double,
                            const Box*) -> std::optional<double> { return 0.0; });
  return f;
}

std::vector<TestFunction> build_registry(int n) {
  std::vector<TestFunction> r;
  if (n == 1) {
    r.push_back(make_step1d());
    r.push_back(make_logbump(1));
    r.push_back(make_clamplog());
    r.push_back(make_sinelog());
    r.push_back(make_const(1));
  } else {
    r.push_back(make_logbump(n));
    r.push_back(make_prodstep(n));
    r.push_back(make_const(n));
  }
  return r;
}

}  // namespace

const std::vector<TestFunction>& builtin_registry(int dimension) {
  if (dimension < 1 || dimension > 3)
    throw UnknownDimension("builtin_registry: dimension " +
                           std::to_string(dimension) + " unsupported (1..3)");
  static const std::vector<TestFunction> r1 = build_registry(1);
  static const std::vector<TestFunction> r2 = build_registry(2);
  static const std::vector<TestFunction> r3 = build_registry(3);
  switch (dimension) {
    case 1: return r1;
    case 2: return r2;
    default: return r3;
  }
}

const TestFunction& find_function(const std::string& name, int dimension) {
  for (const auto& f : builtin_registry(dimension))
    if (f.name() == name) return f;
  std::string msg = "unknown function '" + name + "' for N=" +
                    std::to_string(dimension) + "; available:";
  for (const auto& f : builtin_registry(dimension)) msg += " " + f.name();
  throw std::invalid_argument(msg);
}

std::vector<std::string> builtin_names(int dimension) {
  std::vector<std::string> out;
  for (const auto& f : builtin_registry(dimension)) out.push_back(f.name());
  return out;
}

}  // namespace mbv
