#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invset/geometry.hpp"

namespace invset {

/// Writes f(x) (or a d*d row-major Jacobian) into the output span.
using PointFn = std::function<void(std::span<const double> x, std::span<double> out)>;

/// A map f: R^d -> R^d with its Jacobian. Values are immutable once built
/// and safe to share across threads.
struct MapSystem {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::pair<std::string, double>> params;
  /// The phase-space region the benchmark experiments use, if any.
  std::optional<AxisBox> box;
  PointFn eval_fn;
  PointFn jacobian_fn;

  std::vector<double> eval(std::span<const double> x) const;
  std::vector<double> jacobian(std::span<const double> x) const;
};

struct VectorField {
  std::size_t dim = 0;
  PointFn eval_fn;
  PointFn jacobian_fn;
};

/// f(x) = a x
MapSystem linear_1d(double a);

/// f(x) = x + a x (1 - x); fixed points 0 (unstable) and 1 (stable).
MapSystem connecting_1d(double a);

/// f(x, y) = (1.5 x^3 - 0.5 x, 10 y)
MapSystem connecting_2d();

/// f(x) = x + h v(x)
MapSystem euler_step(const VectorField& v, double h);

/// v(x, y) = (-y + a x (r^2 - 1), x + a y (r^2 - 1)).
VectorField disk_field(double a);

/// Scaled Henon map f(x, y) = (1 - a x^2 + y / 3, 3 b x).
MapSystem henon(double a, double b);

/// f(x, y, z) = (y, z, a + b x + c y - z^2).
MapSystem henon_3d(double a, double b, double c);

/// Radius of the invariant circle of euler_step(disk_field(a), h).
double disk_invariant_radius(double a, double h);

/// Builds a benchmark map by registry name. Unlisted parameters take their
/// benchmark defaults; unknown names or parameters throw std::invalid_argument.
///
///   linear_1d      a=0.1             Q=[-1,1]
///   connecting_1d  a=0.8             Q=[-1,2]
///   connecting_2d                    Q=[-2,2]^2
///   disk_euler     a=10, h=0.1       Q=[-2,2]^2
///   henon          a=1.3, b=0.3      Q=[-2,2]^2
///   henon_3d       a=1.4, b=0.1, c=0.3   Q=[-2,2]^3
MapSystem make_map(std::string_view name, const std::map<std::string, double>& params = {});

std::vector<std::string> map_names();

}  // namespace invset
