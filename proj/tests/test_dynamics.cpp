#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "invset/dynamics.hpp"
#include "invset/sampling.hpp"

using namespace invset;

namespace {

std::vector<double> at(const MapSystem& f, std::vector<double> x) { return f.eval(x); }

std::vector<double> fd_jacobian(const MapSystem& f, std::vector<double> x, double h = 1e-6) {
  const std::size_t d = f.dim;
  std::vector<double> j(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    const double xc = x[c];
    x[c] = xc + h;
    const auto fp = f.eval(x);
    x[c] = xc - h;
    const auto fm = f.eval(x);
    x[c] = xc;
    for (std::size_t r = 0; r < d; ++r) j[r * d + c] = (fp[r] - fm[r]) / (2 * h);
  }
  return j;
}

double det(const std::vector<double>& m, std::size_t d) {
  if (d == 1) return m[0];
  if (d == 2) return m[0] * m[3] - m[1] * m[2];
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

TEST_CASE("linear_1d") {
  CHECK(at(linear_1d(0.1), {1.0})[0] == doctest::Approx(0.1));
  for (double a : {0.1, 10.0, 1.1, 1.01}) CHECK(at(linear_1d(a), {0.0})[0] == 0.0);
  const auto f = linear_1d(10);
  for (double x : {-1.0, 0.0, 0.7}) CHECK(f.jacobian(std::vector<double>{x})[0] == 10.0);
  CHECK_THROWS_AS(linear_1d(0.0), std::invalid_argument);
}

TEST_CASE("connecting_1d") {
  const auto f = connecting_1d(0.8);
  CHECK(at(f, {0.0})[0] == 0.0);
  CHECK(at(f, {1.0})[0] == 1.0);
  CHECK(at(f, {0.5})[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(f.jacobian(std::vector<double>{0.0})[0] == doctest::Approx(1.8));
  CHECK(f.jacobian(std::vector<double>{1.0})[0] == doctest::Approx(0.2));
}

TEST_CASE("connecting_2d") {
  const auto f = connecting_2d();
  for (double x : {-1.0, 0.0, 1.0}) {
    const auto y = at(f, {x, 0.0});
    CHECK(y[0] == doctest::Approx(x).epsilon(1e-15));
    CHECK(y[1] == 0.0);
  }
  const auto y = at(f, {0.0, 1.0});
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 10.0);
  const auto j = f.jacobian(std::vector<double>{0.0, 0.0});
  CHECK(j == std::vector<double>{-0.5, 0.0, 0.0, 10.0});
}

TEST_CASE("euler_step and disk_field") {
  const VectorField zero{2, [](auto, std::span<double> o) { o[0] = o[1] = 0; },
                         [](auto, std::span<double> o) { std::fill(o.begin(), o.end(), 0.0); }};
  const auto id = euler_step(zero, 0.3);
  CHECK(at(id, {0.4, -1.2}) == std::vector<double>{0.4, -1.2});

  const auto v = disk_field(10);
  std::vector<double> out(2);
  v.eval_fn(std::vector<double>{0.0, 0.0}, out);
  CHECK(out == std::vector<double>{0.0, 0.0});
  for (double a : {0.5, 10.0, 3.0}) {
    disk_field(a).eval_fn(std::vector<double>{1.0, 0.0}, out);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 1.0);
  }
  v.eval_fn(std::vector<double>{2.0, 0.0}, out);
  CHECK(out[0] == 60.0);
  CHECK(out[1] == 2.0);

  const auto f = euler_step(v, 0.1);
  const auto y = at(f, {1.0, 0.0});
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(0.1).epsilon(1e-15));

  // Definitional: x + h v(x), bit for bit.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    v.eval_fn(x, out);
    const auto fx = f.eval(x);
    CHECK(fx[0] == x[0] + 0.1 * out[0]);
    CHECK(fx[1] == x[1] + 0.1 * out[1]);
  }
  CHECK_THROWS_AS(euler_step(v, 0.0), std::invalid_argument);
}

TEST_CASE("invariant circle of the Euler disk map") {
  const double a = 10, h = 0.1;
  const double r = disk_invariant_radius(a, h);
  CHECK(r == doctest::Approx(0.997490).epsilon(1e-6));
  // Independent oracle: the radial map r -> |f(r,0)| has r* as a fixed point;
  // rotation invariance makes |f| depend on |x| only. u = r^2 - 1 solves
  // a^2 h u^2 + 2 a u + h = 0 (root closer to 0).
  const double u = (-2 * a + std::sqrt(4 * a * a - 4 * a * a * h * h)) / (2 * a * a * h);
  CHECK(r == doctest::Approx(std::sqrt(1 + u)).epsilon(1e-14));
  const auto f = make_map("disk_euler");
  for (int k = 0; k < 360; ++k) {
    const double t = 2 * M_PI * k / 360.0;
    const auto y = f.eval(std::vector<double>{r * std::cos(t), r * std::sin(t)});
    CHECK(std::abs(std::hypot(y[0], y[1]) - r) <= 1e-12);
  }
}

TEST_CASE("henon") {
  const auto f = henon(1.3, 0.3);
  const auto y0 = at(f, {0.0, 0.0});
  CHECK(y0 == std::vector<double>{1.0, 0.0});
  const double xs = (-0.7 - std::sqrt(5.69)) / 2.6;
  CHECK(xs == doctest::Approx(-1.1867).epsilon(1e-4));
  const std::vector<double> fp{xs, 0.9 * xs};
  const auto y = f.eval(fp);
  CHECK(std::hypot(y[0] - fp[0], y[1] - fp[1]) <= 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) CHECK(det(f.jacobian(std::vector<double>{u(rng), u(rng)}), 2) == doctest::Approx(-0.3));
}

TEST_CASE("henon_3d") {
  const double a = 1.4, b = 0.1, c = 0.3;
  const auto f = henon_3d(a, b, c);
  CHECK(at(f, {0, 0, 0}) == std::vector<double>{0.0, 0.0, 1.4});
  // x^2 + (1 - b - c) x - a = 0
  const double p = 1 - b - c;
  for (double sgn : {-1.0, 1.0}) {
    const double x = (-p + sgn * std::sqrt(p * p + 4 * a)) / 2;
    const auto y = f.eval(std::vector<double>{x, x, x});
    double err = 0;
    for (int i = 0; i < 3; ++i) err += (y[i] - x) * (y[i] - x);
    CHECK(std::sqrt(err) <= 1e-12);
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i)
    CHECK(det(f.jacobian(std::vector<double>{u(rng), u(rng), u(rng)}), 3) == doctest::Approx(0.1));
}

TEST_CASE("fixed points of the 1d and 2d maps") {
  CHECK(at(make_map("linear_1d", {{"a", 1.01}}), {0.0})[0] == 0.0);
  const auto g = make_map("connecting_1d");
  CHECK(std::abs(at(g, {1.0})[0] - 1.0) <= 1e-12);
  CHECK(std::abs(at(make_map("disk_euler"), {0.0, 0.0})[0]) <= 1e-12);
}

TEST_CASE("analytic Jacobians match central differences on every benchmark") {
  for (const auto& name : map_names()) {
    CAPTURE(name);
    const auto f = make_map(name);
    REQUIRE(f.box);
    const auto pts = uniform_random(*f.box, 100, 42);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::vector<double> x(pts[i].begin(), pts[i].end());
      const auto ja = f.jacobian(x);
      const auto jf = fd_jacobian(f, x);
      double num = 0, den = 0;
      for (std::size_t k = 0; k < ja.size(); ++k) {
        num += (ja[k] - jf[k]) * (ja[k] - jf[k]);
        den += ja[k] * ja[k];
      }
      worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-12));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("registry") {
  const auto names = map_names();
  CHECK(names.size() == 6);
  CHECK(make_map("henon").params.size() == 2);
  CHECK(make_map("henon", {{"a", 1.4}}).eval(std::vector<double>{1.0, 0.0})[0] == doctest::Approx(-0.4));
  CHECK_THROWS_AS(make_map("lorenz"), std::invalid_argument);
  CHECK_THROWS_AS(make_map("henon", {{"q", 1.0}}), std::invalid_argument);
  CHECK(make_map("henon_3d").box->dim() == 3);
  CHECK(make_map("connecting_1d").box->lower()[0] == -1.0);
  CHECK(make_map("connecting_1d").box->upper()[0] == 2.0);
}
