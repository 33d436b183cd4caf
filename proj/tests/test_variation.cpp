#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "mellin_bv/box.hpp"
#include "mellin_bv/errors.hpp"
#include "mellin_bv/functions.hpp"
#include "mellin_bv/mellin_op.hpp"
#include "mellin_bv/phi.hpp"
#include "mellin_bv/variation.hpp"

using mbv::Box;
using mbv::MarginalQuad;
using mbv::Partition1D;
using mbv::PhiFunction;
using mbv::RefinementPolicy;
using mbv::TestFunction;

namespace {

struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  double next(double lo, double hi) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return lo + (hi - lo) * (static_cast<double>(s >> 11) * 0x1.0p-53);
  }
  int next_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next(0.0, 1.0) * (hi - lo + 1));
  }
};

bool bits_equal(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, 8);
  std::memcpy(&ub, &b, 8);
  return ua == ub;
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition1D::validated({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition1D::validated({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition1D::validated({2.0, 1.0}), std::invalid_argument);
  CHECK(Partition1D::validated({0.5, 1.0, 2.0}).points.size() == 3);
}

TEST_CASE("single-partition sums") {
  const auto& f = mbv::find_function("clamplog", 1);
  auto g = [&f](double x) { return f.eval1(x); };
  const auto part =
      Partition1D::validated({0.5, 1.0, std::exp(0.5), std::exp(1.0), 3.0});
  const PhiFunction p2 = PhiFunction::power(2.0);
  // increments along the partition: 0, 0.5, 0.5, 0
  CHECK(mbv::var1d(g, p2, part) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mbv::var1d(g, PhiFunction::classical(), part) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("point DP equals the exhaustive oracle bit for bit") {
  const PhiFunction gauges[] = {PhiFunction::power(2.0), PhiFunction::classical(),
                                PhiFunction::power(1.5)};
  Lcg rng(424242);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = rng.next_int(2, 12);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.next(-2.0, 2.0);
    const auto& phi = gauges[rep % 3];
    CHECK(bits_equal(mbv::var1d_points(v, phi), mbv::brute_force_var1d(v, phi)));
  }
}

TEST_CASE("point DP closed cases") {
  const PhiFunction p2 = PhiFunction::power(2.0);
  CHECK(mbv::var1d_points({3.0}, p2) == 0.0);
  CHECK(mbv::var1d_points({1.0, 2.5}, p2) == doctest::Approx(2.25).epsilon(1e-15));
  // monotone data: convexity prefers one merged increment
  CHECK(mbv::var1d_points({0.0, 0.25, 0.3, 0.9, 1.0}, p2) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // up-down data keeps the peak
  CHECK(mbv::var1d_points({0.0, 1.0, 0.2}, p2) ==
        doctest::Approx(1.0 + 0.64).epsilon(1e-15));
  // the oracle refuses exponentially large inputs
  std::vector<double> big(15, 0.0);
  CHECK_THROWS_AS(mbv::brute_force_var1d(big, p2), mbv::TooManyPoints);
}

TEST_CASE("scaling monotonicity and subadditivity of the point DP") {
  const PhiFunction gauges[] = {PhiFunction::power(2.0), PhiFunction::classical()};
  Lcg rng(777);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = rng.next_int(3, 24);
    std::vector<double> g(static_cast<std::size_t>(n)), h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = rng.next(-1.5, 1.5);
      h[i] = rng.next(-1.5, 1.5);
    }
    for (const auto& phi : gauges) {
      // lambda-monotonicity
      std::vector<double> half(g.size()), sum(g.size()), g2(g.size()), h2(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        half[i] = 0.5 * g[i];
        sum[i] = g[i] + h[i];
        g2[i] = 2.0 * g[i];
        h2[i] = 2.0 * h[i];
      }
      CHECK(mbv::var1d_points(half, phi) <= mbv::var1d_points(g, phi) + 1e-12);
      // convexity: V[g + h] <= (V[2g] + V[2h]) / 2
      CHECK(mbv::var1d_points(sum, phi) <=
            0.5 * (mbv::var1d_points(g2, phi) + mbv::var1d_points(h2, phi)) + 1e-10);
    }
  }
}

TEST_CASE("1-D sup over dyadic grids") {
  RefinementPolicy pol;
  const PhiFunction p2 = PhiFunction::power(2.0);
  const auto& clamp = mbv::find_function("clamplog", 1);
  auto g = [&clamp](double x) { return clamp.eval1(x); };

  const auto est = mbv::var1d_sup(g, p2, std::exp(-1.0), std::exp(2.0), pol);
  CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.converged);

  // total variation of sin(log x) over one full period is 4
  auto sine = [](double x) { return std::sin(std::log(x)); };
  const auto tv = mbv::var1d_sup(sine, PhiFunction::classical(), 1.0,
                                 std::exp(2.0 * 3.14159265358979323846), pol);
  CHECK(tv.lower_bound == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(tv.lower_bound <= 4.0 + 1e-12);  // grid estimates stay lower bounds

  // the upper-role estimate is at least as sharp
  const double up = mbv::var_upper_1d(g, p2, std::exp(-1.0), std::exp(2.0), pol);
  CHECK(up >= est.lower_bound - 1e-12);
  CHECK(up == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sections and boxes in two dimensions") {
  // f(x1, x2) = clamplog(x1): only the first axis carries variation
  mbv::RegularityTags tags;
  tags.bv_phi = tags.ac_phi = tags.bounded = true;
  TestFunction f(
      "clamp_x1", 2,
      [](const double* x) {
        return std::min(1.0, std::max(0.0, std::log(x[0])));
      },
      tags);
  f.with_kinks({{1.0, std::exp(1.0)}, {}});

  const PhiFunction p2 = PhiFunction::power(2.0);
  const Box box = Box::make({{std::exp(-1.0), std::exp(2.0)}, {1.0, std::exp(1.0)}});
  MarginalQuad mq;
  RefinementPolicy pol;

  const double s0 = mbv::section_functional(f, p2, 1.0, box, 0, mq, pol);
  const double s1 = mbv::section_functional(f, p2, 1.0, box, 1, mq, pol);
  CHECK(s0 == doctest::Approx(1.0).epsilon(1e-10));  // variation 1, face measure 1
  CHECK(s1 == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<double> per_axis;
  const double c = mbv::box_functional(f, p2, 1.0, box, mq, pol, &per_axis);
  CHECK(c == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(per_axis.size() == 2);
  CHECK(per_axis[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(per_axis[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("box variation picks up jump partitions") {
  const PhiFunction p2 = PhiFunction::power(2.0);
  MarginalQuad mq;
  RefinementPolicy pol;

  const auto& step = mbv::find_function("step1d", 1);
  const Box b1 = Box::make({{0.5, 2.0}});
  CHECK(mbv::var_box(step, p2, 1.0, b1, mq, pol).lower_bound ==
        doctest::Approx(1.0).epsilon(1e-12));

  // prodstep over a square around one: both axes contribute log(2) phi(lambda)
  const auto& ps = mbv::find_function("prodstep", 2);
  const Box b2 = Box::cube(0.5, 2.0, 2);
  const double want = 2.0 * std::log(2.0);
  CHECK(mbv::var_box(ps, p2, 1.0, b2, mq, pol).lower_bound ==
        doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("global variation matches the closed forms") {
  const PhiFunction p2 = PhiFunction::power(2.0);
  MarginalQuad mq;
  RefinementPolicy pol;
  const auto ladder = mbv::default_box_ladder();
  CHECK(ladder == std::vector<double>{1.0, 2.0, 4.0, 8.0});

  const auto& step = mbv::find_function("step1d", 1);
  CHECK(mbv::var_global(step, p2, 1.0, ladder, mq, pol).lower_bound ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mbv::var_global(step, p2, 0.5, ladder, mq, pol).lower_bound ==
        doctest::Approx(0.25).epsilon(1e-12));

  const auto& bump = mbv::find_function("logbump", 1);
  const auto vb = mbv::var_global(bump, p2, 1.0, ladder, mq, pol);
  CHECK(vb.lower_bound == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(vb.ladder_values.size() == ladder.size());

  const auto& cst = mbv::find_function("const", 1);
  CHECK(mbv::var_global(cst, p2, 4.0, ladder, mq, pol).lower_bound == 0.0);

  const auto& clamp = mbv::find_function("clamplog", 1);
  CHECK(mbv::var_global(clamp, PhiFunction::classical(), 1.0, ladder, mq, pol)
            .lower_bound == doctest::Approx(1.0).epsilon(1e-10));

  // estimates never exceed the exact variation
  for (double lambda : {1.0, 0.5}) {
    const double est = mbv::var_global(bump, p2, lambda, ladder, mq, pol).lower_bound;
    const double exact = *bump.exact_variation(p2, lambda);
    CHECK(est <= exact + 1e-12);
    CHECK(est >= exact - 1e-6);
  }
}

TEST_CASE("modulus sphere sampler") {
  const auto s1 = mbv::modulus_t_samples(1, 0.5);
  CHECK(s1.size() == 6);
  const auto s2 = mbv::modulus_t_samples(2, 0.3);
  CHECK(s2.size() == 18);
  for (const auto& t : s2) {
    double d2 = 0.0;
    for (double tj : t) d2 += (1.0 - tj) * (1.0 - tj);
    CHECK(std::sqrt(d2) <= 0.3 + 1e-12);
    CHECK(std::sqrt(d2) >= 0.3 * 0.25 - 1e-12);
  }
  CHECK_THROWS_AS(mbv::modulus_t_samples(0, 0.5), mbv::UnknownDimension);
  CHECK_THROWS_AS(mbv::modulus_t_samples(1, 0.0), std::invalid_argument);
}

TEST_CASE("modulus of smoothness") {
  const PhiFunction p2 = PhiFunction::power(2.0);
  MarginalQuad mq;
  RefinementPolicy pol;
  const auto ladder = mbv::default_box_ladder();

  // step increments are up-down boxes of height one: 2 phi(lambda)
  const auto& step = mbv::find_function("step1d", 1);
  CHECK(mbv::modulus(step, p2, 1.0, 0.5, ladder, mq, pol) ==
        doctest::Approx(2.0).epsilon(1e-9));

  // clamplog increments are tents of height |log t|; the largest sample is
  // t = 1 - delta, so the modulus is 2 phi(|log(1 - delta)|)
  const auto& clamp = mbv::find_function("clamplog", 1);
  const double want = 2.0 * std::pow(std::log(2.0), 2.0);
  CHECK(mbv::modulus(clamp, p2, 1.0, 0.5, ladder, mq, pol) ==
        doctest::Approx(want).epsilon(1e-9));

  // smaller deltas give smaller moduli
  const double w1 = mbv::modulus(clamp, p2, 1.0, 0.25, ladder, mq, pol);
  const double w2 = mbv::modulus(clamp, p2, 1.0, 0.05, ladder, mq, pol);
  CHECK(w2 <= w1 + 1e-12);
  CHECK(w1 <= mbv::modulus(clamp, p2, 1.0, 0.5, ladder, mq, pol) + 1e-12);
}

TEST_CASE("sampled-table variation") {
  const PhiFunction p2 = PhiFunction::power(2.0);
  RefinementPolicy pol;
  const auto ladder = mbv::default_box_ladder();

  // step sampled on a grid holding exp(0): jump captured exactly
  const auto grid = mbv::uniform_log_grid(1, 65, -3.0, 3.0);
  const auto table = mbv::sample_on_grid(mbv::find_function("step1d", 1), grid);
  const auto est = mbv::var_global_table(table, p2, 1.0, ladder, pol);
  CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mbv::var_global_table(table, p2, 0.5, ladder, pol).lower_bound ==
        doctest::Approx(0.25).epsilon(1e-12));

  const auto ctab = mbv::sample_on_grid(mbv::find_function("clamplog", 1), grid);
  CHECK(mbv::var_upper_table(ctab, p2, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(mbv::var_upper_table(ctab, p2, 1.0) >=
        mbv::var_global_table(ctab, p2, 1.0, ladder, pol).lower_bound - 1e-12);
}
