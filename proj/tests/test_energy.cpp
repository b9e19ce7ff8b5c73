#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "invset/energy.hpp"
#include "oracles.hpp"

using namespace invset;

namespace {

MapSystem doubling() { return linear_1d(2.0); }

MapSystem identity_2d() {
  MapSystem f;
  f.name = "identity";
  f.dim = 2;
  f.eval_fn = [](std::span<const double> x, std::span<double> o) { std::copy(x.begin(), x.end(), o.begin()); };
  f.jacobian_fn = [](std::span<const double>, std::span<double> o) {
    o[0] = o[3] = 1.0;
    o[1] = o[2] = 0.0;
  };
  return f;
}

PointCloud image(const PointCloud& x, const MapSystem& f) {
  std::vector<double> c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto y = f.eval(x[i]);
    c.insert(c.end(), y.begin(), y.end());
  }
  return PointCloud(x.dim(), c);
}

/// Brute-force Ê, no kd-tree.
double energy_oracle(const PointCloud& x, const MapSystem& f) { return modified_hausdorff(x, image(x, f)); }

/// Brute-force J with the (δ/r)^p form of the potential.
double augmented_oracle(const PointCloud& x, const MapSystem& f, int p, std::size_t m, double mu, double delta) {
  double lj = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d.push_back({oracle::sq(x[i], x[j]), j});
    std::sort(d.begin(), d.end());
    for (std::size_t k = 0; k < m; ++k) {
      const double q = std::pow(delta / std::max(std::sqrt(d[k].first), 1e-12), p);
      lj += (q - 1) * (q - 1);
    }
  }
  return energy_oracle(x, f) + mu * lj / static_cast<double>(n * m);
}

double min_pair_distance(const PointCloud& x) {
  double best = INFINITY;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::min(best, std::sqrt(oracle::sq(x[i], x[j])));
  return best;
}

std::vector<std::vector<double>> fixed_point_set(const std::string& name) {
  if (name == "linear_1d") return {{0.0}};
  if (name == "connecting_1d") return {{0.0}, {1.0}};
  if (name == "connecting_2d") return {{-1, 0}, {0, 0}, {1, 0}};
  if (name == "disk_euler") return {{0, 0}};
  if (name == "henon") {
    std::vector<std::vector<double>> out;
    for (double s : {-1.0, 1.0}) {
      const double x = (-0.7 + s * std::sqrt(0.49 + 4 * 1.3)) / 2.6;
      out.push_back({x, 0.9 * x});
    }
    return out;
  }
  // henon_3d: x^2 + (1 - b - c) x - a = 0 on the diagonal
  std::vector<std::vector<double>> out;
  for (double s : {-1.0, 1.0}) {
    const double x = (-0.6 + s * std::sqrt(0.36 + 5.6)) / 2;
    out.push_back({x, x, x});
  }
  return out;
}

}  // namespace

TEST_CASE("energy examples for f(x) = 2x") {
  CHECK(energy(PointCloud(1, {0.0}), doubling()).value == 0.0);
  CHECK(energy(PointCloud(1, {1.0}), doubling()).value == 1.0);
  CHECK(energy(PointCloud(1, {0.0, 1.0}), doubling()).value == doctest::Approx(0.5).epsilon(1e-15));
  const auto r = energy(PointCloud(1, {1.0}), doubling());
  REQUIRE(r.grad.size() == 1);
  CHECK(r.grad[0] == doctest::Approx(2.0).epsilon(1e-15));
  const auto fd = oracle::central_diff([](const std::vector<double>& v) { return energy_oracle(PointCloud(1, v), doubling()); },
                                       {1.0});
  CHECK(fd[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(energy_grad(PointCloud(1, {1.0}), doubling()) == r.grad);
}

TEST_CASE("energy is zero with zero gradient on fixed-point sets") {
  for (const auto& name : map_names()) {
    CAPTURE(name);
    const auto f = make_map(name);
    const auto x = PointCloud::from_points(fixed_point_set(name));
    const auto r = energy(x, f);
    CHECK(r.value <= 1e-24);
    double ginf = 0.0;
    for (double g : r.grad) ginf = std::max(ginf, std::abs(g));
    CHECK(ginf <= 1e-10);
  }
  // A set mapped onto itself pointwise by the connecting orbit map.
  CHECK(energy(PointCloud(1, {0.0, 1.0}), connecting_1d(0.8)).value == 0.0);
}

TEST_CASE("energy is nonnegative and permutation invariant") {
  std::mt19937_64 rng(21);
  const auto f = make_map("henon");
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_cloud(rng, 30, 2, -2, 2);
    const auto r = energy(x, f);
    CHECK(r.value >= 0.0);
    CHECK(r.value == doctest::Approx(energy_oracle(x, f)).epsilon(1e-13));
    // Reverse the order: value equal, gradient reversed.
    std::vector<double> rev;
    for (std::size_t i = x.size(); i-- > 0;) rev.insert(rev.end(), x[i].begin(), x[i].end());
    const auto rr = energy(PointCloud(2, rev), f);
    CHECK(rr.value == doctest::Approx(r.value).epsilon(1e-13));
    if (oracle::tie_margin(x, f) > 1e-9) {
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t c = 0; c < 2; ++c)
          CHECK(rr.grad[(x.size() - 1 - i) * 2 + c] == doctest::Approx(r.grad[i * 2 + c]).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy assignments are nearest neighbours") {
  std::mt19937_64 rng(22);
  const auto f = make_map("connecting_2d");
  const auto x = oracle::random_cloud(rng, 40, 2, -2, 2);
  const auto r = energy(x, f);
  const auto fx = image(x, f);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(r.assign_fwd[i] == point_to_set_sq(x[i], fx).second);
    CHECK(r.assign_bwd[i] == point_to_set_sq(fx[i], x).second);
  }
}

TEST_CASE("energy gradient matches central differences on every benchmark") {
  std::mt19937_64 rng(23);
  for (const auto& name : map_names()) {
    CAPTURE(name);
    const auto f = make_map(name);
    const auto& box = *f.box;
    int checked = 0, failed = 0;
    while (checked < 50) {
      const auto x = oracle::random_cloud(rng, 12, f.dim, box.lower()[0], box.upper()[0]);
      if (oracle::tie_margin(x, f) < 1e-4) continue;
      const auto g = energy(x, f).grad;
      const auto fd = oracle::central_diff(
          [&](const std::vector<double>& v) { return energy_oracle(PointCloud(f.dim, v), f); }, x.coords());
      if (oracle::rel_err(g, fd) > 1e-5) ++failed;
      ++checked;
    }
    CHECK(failed == 0);
  }
}

TEST_CASE("lj potential examples") {
  for (int p : {1, 2, 6}) {
    CHECK(lj_potential(0.7, 0.7, p) == 0.0);
    CHECK(lj_derivs(0.7, 0.7, p).d_r == 0.0);
  }
  CHECK(lj_potential(2.0, 1.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lj_potential(1e-6, 1.0, 1) > 1e11);
  CHECK(std::isfinite(lj_potential(0.0, 1.0, 1)));
  CHECK(lj_potential(0.0, 1.0, 1) == doctest::Approx(1e24).epsilon(1e-10));
  CHECK_THROWS_AS(lj_potential(-1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lj_potential(1.0, 1.0, 0), std::invalid_argument);
  // Derivatives against central differences.
  for (int p : {1, 2, 3}) {
    for (double r : {0.3, 0.9, 1.7}) {
      const double delta = 0.8, h = 1e-6;
      const auto d = lj_derivs(r, delta, p);
      const double dr = (lj_potential(r + h, delta, p) - lj_potential(r - h, delta, p)) / (2 * h);
      const double dd = (lj_potential(r, delta + h, p) - lj_potential(r, delta - h, p)) / (2 * h);
      CHECK(d.d_r == doctest::Approx(dr).epsilon(1e-6));
      CHECK(d.d_delta == doctest::Approx(dd).epsilon(1e-6));
    }
  }
}

TEST_CASE("lj params validation") {
  CHECK_NOTHROW(LJParams{1, 6, 1.0, 0.1}.validate(7));
  CHECK_THROWS_AS((LJParams{1, 6, 1.0, 0.1}.validate(6)), std::invalid_argument);
  CHECK_THROWS_AS((LJParams{0, 6, 1.0, 0.1}.validate(100)), std::invalid_argument);
  CHECK_THROWS_AS((LJParams{1, 0, 1.0, 0.1}.validate(100)), std::invalid_argument);
  CHECK_THROWS_AS((LJParams{1, 6, -1.0, 0.1}.validate(100)), std::invalid_argument);
}

TEST_CASE("augmented with mu = 0 reduces to the energy") {
  std::mt19937_64 rng(24);
  const auto f = make_map("henon");
  const auto x = oracle::random_cloud(rng, 50, 2, -2, 2);
  const auto e = energy(x, f);
  const auto a = augmented(x, LJParams{1, 6, 0.0, 0.3}, f);
  CHECK(a.value == e.value);
  REQUIRE(a.grad.size() == e.grad.size() + 1);
  for (std::size_t i = 0; i < e.grad.size(); ++i) CHECK(a.grad[i] == e.grad[i]);
  CHECK(a.grad.back() == 0.0);
  CHECK(a.lj_value == 0.0);
}

TEST_CASE("two points at distance delta under the identity") {
  const auto x = PointCloud::from_points({{0.0, 0.0}, {0.25, 0.0}});
  const auto a = augmented(x, LJParams{1, 1, 1.0, 0.25}, identity_2d());
  CHECK(a.value == 0.0);
}

TEST_CASE("lj term vanishes only at the well") {
  std::mt19937_64 rng(25);
  const auto x = oracle::random_cloud(rng, 20, 2, -1, 1);
  const auto a = augmented(x, LJParams{1, 3, 1.0, 0.2}, identity_2d());
  CHECK(a.lj_value > 0.0);
  CHECK(a.energy_value == 0.0);
}

TEST_CASE("augmented value matches the brute-force oracle") {
  std::mt19937_64 rng(26);
  for (const auto& name : map_names()) {
    const auto f = make_map(name);
    const auto x = oracle::random_cloud(rng, 25, f.dim, -1.5, 1.5);
    const auto a = augmented(x, LJParams{2, 4, 0.7, 0.3}, f);
    CHECK(a.value == doctest::Approx(augmented_oracle(x, f, 2, 4, 0.7, 0.3)).epsilon(1e-12));
  }
}

TEST_CASE("augmented gradient matches central differences on every benchmark") {
  std::mt19937_64 rng(27);
  for (const auto& name : map_names()) {
    CAPTURE(name);
    const auto f = make_map(name);
    const auto& box = *f.box;
    int checked = 0, failed = 0;
    while (checked < 50) {
      const std::size_t m = 1 + checked % 4;
      const int p = 1 + checked % 2;
      const auto x = oracle::random_cloud(rng, 12, f.dim, box.lower()[0], box.upper()[0]);
      if (oracle::tie_margin(x, f, m) < 1e-4) continue;
      // Deep inside the repulsive core V grows like r^{-2p}; a 1e-6 central
      // difference is then dominated by truncation and cancellation.
      if (min_pair_distance(x) < 0.05) continue;
      const double delta = 0.2 + 0.01 * checked;
      const double mu = 0.5;
      const auto g = augmented(x, LJParams{p, m, mu, delta}, f).grad;
      std::vector<double> vars = x.coords();
      vars.push_back(delta);
      const auto fd = oracle::central_diff(
          [&](const std::vector<double>& v) {
            const PointCloud c(f.dim, std::vector<double>(v.begin(), v.end() - 1));
            return augmented_oracle(c, f, p, m, mu, v.back());
          },
          vars);
      if (oracle::rel_err(g, fd) > 1e-5) ++failed;
      ++checked;
    }
    CHECK(failed == 0);
  }
}

TEST_CASE("coincident points stay finite") {
  const auto x = PointCloud::from_points({{0.1, 0.1}, {0.1, 0.1}, {0.5, 0.2}});
  const auto a = augmented(x, LJParams{1, 1, 1.0, 0.1}, make_map("henon"));
  CHECK(std::isfinite(a.value));
  for (double g : a.grad) CHECK(std::isfinite(g));
}

TEST_CASE("cloud objective adapter") {
  const auto f = make_map("henon");
  std::mt19937_64 rng(28);
  const auto x = oracle::random_cloud(rng, 10, 2, -1, 1);
  const CloudObjective plain(f, 2);
  std::vector<double> g(20);
  CHECK(plain(x.coords(), g) == energy(x, f).value);
  CHECK(g == energy(x, f).grad);
  CHECK_FALSE(plain.has_delta());

  const CloudObjective withlj(f, 2, LJParams{1, 3, 1.0, 0.2});
  auto vars = x.coords();
  vars.push_back(0.35);
  std::vector<double> g2(21);
  CHECK(withlj(vars, g2) == augmented(x, LJParams{1, 3, 1.0, 0.35}, f).value);
  CHECK(withlj.has_delta());

  // Diverged coordinates: NaN instead of an exception.
  std::vector<double> bad = x.coords();
  bad[0] = 1e300;
  CHECK(std::isnan(plain(bad, g)));
  bad[0] = NAN;
  CHECK(std::isnan(plain(bad, g)));
}
