#include "invset/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace invset {

std::vector<double> MapSystem::eval(std::span<const double> x) const {
  if (x.size() != dim) throw std::invalid_argument(name + ": dimension mismatch");
  std::vector<double> out(dim);
  eval_fn(x, out);
  return out;
}

std::vector<double> MapSystem::jacobian(std::span<const double> x) const {
  if (x.size() != dim) throw std::invalid_argument(name + ": dimension mismatch");
  std::vector<double> out(dim * dim);
  jacobian_fn(x, out);
  return out;
}

MapSystem linear_1d(double a) {
  if (a == 0.0 || !std::isfinite(a))
    throw std::invalid_argument("linear_1d: a must be finite and nonzero");
  MapSystem m;
  m.name = "linear_1d";
  m.dim = 1;
  m.params = {{"a", a}};
  m.box = AxisBox::cube(1, -1.0, 1.0);
  m.eval_fn = [a](std::span<const double> x, std::span<double> out) { out[0] = a * x[0]; };
  m.jacobian_fn = [a](std::span<const double>, std::span<double> out) { out[0] = a; };
  return m;
}

MapSystem connecting_1d(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("connecting_1d: a must be positive");
  MapSystem m;
  m.name = "connecting_1d";
  m.dim = 1;
  m.params = {{"a", a}};
  m.box = AxisBox::cube(1, -1.0, 2.0);
  m.eval_fn = [a](std::span<const double> x, std::span<double> out) {
    out[0] = x[0] + a * x[0] * (1.0 - x[0]);
  };
  m.jacobian_fn = [a](std::span<const double> x, std::span<double> out) {
    out[0] = 1.0 + a * (1.0 - 2.0 * x[0]);
  };
  return m;
}

MapSystem connecting_2d() {
  MapSystem m;
  m.name = "connecting_2d";
  m.dim = 2;
  m.box = AxisBox::cube(2, -2.0, 2.0);
  m.eval_fn = [](std::span<const double> x, std::span<double> out) {
    out[0] = 1.5 * x[0] * x[0] * x[0] - 0.5 * x[0];
    out[1] = 10.0 * x[1];
  };
  m.jacobian_fn = [](std::span<const double> x, std::span<double> out) {
    out[0] = 4.5 * x[0] * x[0] - 0.5;
    out[1] = 0.0;
    out[2] = 0.0;
    out[3] = 10.0;
  };
  return m;
}

MapSystem euler_step(const VectorField& v, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("euler_step: h must be positive");
  const std::size_t d = v.dim;
  MapSystem m;
  m.name = "euler_step";
  m.dim = d;
  m.params = {{"h", h}};
  m.eval_fn = [v, h, d](std::span<const double> x, std::span<double> out) {
    v.eval_fn(x, out);
    for (std::size_t i = 0; i < d; ++i) out[i] = x[i] + h * out[i];
  };
  m.jacobian_fn = [v, h, d](std::span<const double> x, std::span<double> out) {
    v.jacobian_fn(x, out);
    for (std::size_t i = 0; i < d * d; ++i) out[i] *= h;
    for (std::size_t i = 0; i < d; ++i) out[i * d + i] += 1.0;
  };
  return m;
}

VectorField disk_field(double a) {
  VectorField v;
  v.dim = 2;
  v.eval_fn = [a](std::span<const double> p, std::span<double> out) {
    const double x = p[0], y = p[1];
    const double s = x * x + y * y - 1.0;
    out[0] = -y + a * x * s;
    out[1] = x + a * y * s;
  };
  v.jacobian_fn = [a](std::span<const double> p, std::span<double> out) {
    const double x = p[0], y = p[1];
    const double s = x * x + y * y - 1.0;
    out[0] = a * (s + 2.0 * x * x);
    out[1] = -1.0 + 2.0 * a * x * y;
    out[2] = 1.0 + 2.0 * a * x * y;
    out[3] = a * (s + 2.0 * y * y);
  };
  return v;
}

MapSystem henon(double a, double b) {
  MapSystem m;
  m.name = "henon";
  m.dim = 2;
  m.params = {{"a", a}, {"b", b}};
  m.box = AxisBox::cube(2, -2.0, 2.0);
  m.eval_fn = [a, b](std::span<const double> p, std::span<double> out) {
    const double x = p[0], y = p[1];
    out[0] = 1.0 - a * x * x + y / 3.0;
    out[1] = 3.0 * b * x;
  };
  m.jacobian_fn = [a, b](std::span<const double> p, std::span<double> out) {
    out[0] = -2.0 * a * p[0];
    out[1] = 1.0 / 3.0;
    out[2] = 3.0 * b;
    out[3] = 0.0;
  };
  return m;
}

MapSystem henon_3d(double a, double b, double c) {
  MapSystem m;
  m.name = "henon_3d";
  m.dim = 3;
  m.params = {{"a", a}, {"b", b}, {"c", c}};
  m.box = AxisBox::cube(3, -2.0, 2.0);
  m.eval_fn = [a, b, c](std::span<const double> p, std::span<double> out) {
    const double x = p[0], y = p[1], z = p[2];
    out[0] = y;
    out[1] = z;
    out[2] = a + b * x + c * y - z * z;
  };
  m.jacobian_fn = [b, c](std::span<const double> p, std::span<double> out) {
    out[0] = 0.0, out[1] = 1.0, out[2] = 0.0;
    out[3] = 0.0, out[4] = 0.0, out[5] = 1.0;
    out[6] = b, out[7] = c, out[8] = -2.0 * p[2];
  };
  return m;
}

double disk_invariant_radius(double a, double h) {
  // |f(x)|^2 = r^2 ((1 + a h u)^2 + h^2) with u = r^2 - 1; invariance needs
  // a^2 h u^2 + 2 a u + h = 0, whose root near 0 is taken here.
  const double u = (-1.0 + std::sqrt(1.0 - h * h)) / (a * h);
  return std::sqrt(1.0 + u);
}

namespace {

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

MapSystem make_map(std::string_view name, const std::map<std::string, double>& params) {
  auto rest = params;
  MapSystem m;
  if (name == "linear_1d") {
    m = linear_1d(take(rest, "a", 0.1));
  } else if (name == "connecting_1d") {
    m = connecting_1d(take(rest, "a", 0.8));
  } else if (name == "connecting_2d") {
    m = connecting_2d();
  } else if (name == "disk_euler") {
    const double a = take(rest, "a", 10.0);
    const double h = take(rest, "h", 0.1);
    m = euler_step(disk_field(a), h);
    m.name = "disk_euler";
    m.params = {{"a", a}, {"h", h}};
    m.box = AxisBox::cube(2, -2.0, 2.0);
  } else if (name == "henon") {
    const double a = take(rest, "a", 1.3);
    m = henon(a, take(rest, "b", 0.3));
  } else if (name == "henon_3d") {
    const double a = take(rest, "a", 1.4);
    const double b = take(rest, "b", 0.1);
    m = henon_3d(a, b, take(rest, "c", 0.3));
  } else {
    throw std::invalid_argument("unknown map '" + std::string(name) + "'");
  }
  if (!rest.empty())
    throw std::invalid_argument("map '" + std::string(name) + "' has no parameter '" + rest.begin()->first + "'");
  return m;
}

std::vector<std::string> map_names() {
  return {"linear_1d", "connecting_1d", "connecting_2d", "disk_euler", "henon", "henon_3d"};
}

}  // namespace invset
