#include "invset/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "invset/knn.hpp"

namespace invset {

void LJParams::validate(std::size_t n) const {
  if (p < 1) throw std::invalid_argument("lj.p must be >= 1");
  if (m < 1) throw std::invalid_argument("lj.m must be >= 1");
  if (m >= n)
    throw std::invalid_argument("lj.m=" + std::to_string(m) + " needs at least m+1 points, got n=" +
                                std::to_string(n));
  if (!std::isfinite(mu) || mu < 0.0) throw std::invalid_argument("lj.mu must be finite and >= 0");
  if (!std::isfinite(delta)) throw std::invalid_argument("lj.delta must be finite");
}

namespace {

struct Images {
  std::vector<double> values;     // n*d
  std::vector<double> jacobians;  // n*d*d, row-major per point
};

Images map_cloud(const PointCloud& x, const MapSystem& f) {
  if (x.dim() != f.dim)
    throw std::invalid_argument("energy: cloud dimension " + std::to_string(x.dim()) + " but map '" +
                                f.name + "' has dimension " + std::to_string(f.dim));
  const std::size_t n = x.size(), d = x.dim();
  Images img{std::vector<double>(n * d), std::vector<double>(n * d * d)};
  for (std::size_t i = 0; i < n; ++i) {
    f.eval_fn(x[i], std::span<double>(img.values.data() + i * d, d));
    f.jacobian_fn(x[i], std::span<double>(img.jacobians.data() + i * d * d, d * d));
  }
  for (double v : img.values)
    if (!std::isfinite(v)) throw std::domain_error("energy: map '" + f.name + "' produced a non-finite image");
  return img;
}

// out += Df^T v, with Df row-major d*d.
void add_jac_transpose_times(const double* jac, const double* v, double scale, double* out, std::size_t d) {
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out[c] += scale * jac[r * d + c] * v[r];
}

EnergyReport evaluate(const PointCloud& x, const MapSystem& f, const NeighborTree& tree_x) {
  const std::size_t n = x.size(), d = x.dim();
  const Images img = map_cloud(x, f);
  const PointCloud fx(d, img.values);
  const NeighborTree tree_fx(fx);

  EnergyReport rep;
  rep.assign_fwd.resize(n);
  rep.assign_bwd.resize(n);
  double fwd_sum = 0.0, bwd_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Neighbor a = tree_fx.nearest(x[i]);
    const Neighbor b = tree_x.nearest(fx[i]);
    rep.assign_fwd[i] = a.index;
    rep.assign_bwd[i] = b.index;
    fwd_sum += a.dist_sq;
    bwd_sum += b.dist_sq;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  rep.energy_value = 0.5 * inv_n * (fwd_sum + bwd_sum);
  rep.value = rep.energy_value;

  // Frozen-assignment gradient, scattered in index order for reproducibility.
  rep.grad.assign(n * d, 0.0);
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = x[i];
    double* gi = rep.grad.data() + i * d;

    // Forward term |x_i - f(x_j)|^2 with j = j(i): touches x_i and x_j.
    const std::size_t j = rep.assign_fwd[i];
    const auto fj = fx[j];
    for (std::size_t a = 0; a < d; ++a) diff[a] = xi[a] - fj[a];
    for (std::size_t a = 0; a < d; ++a) gi[a] += inv_n * diff[a];
    add_jac_transpose_times(img.jacobians.data() + j * d * d, diff.data(), -inv_n, rep.grad.data() + j * d, d);

    // Backward term |f(x_i) - x_k|^2 with k = k(i): touches x_i and x_k.
    const std::size_t k = rep.assign_bwd[i];
    const auto fi = fx[i];
    const auto xk = x[k];
    for (std::size_t a = 0; a < d; ++a) diff[a] = fi[a] - xk[a];
    add_jac_transpose_times(img.jacobians.data() + i * d * d, diff.data(), inv_n, gi, d);
    double* gk = rep.grad.data() + k * d;
    for (std::size_t a = 0; a < d; ++a) gk[a] -= inv_n * diff[a];
  }
  return rep;
}

double clamp_pair_distance(double r) {
  if (std::isnan(r) || r < 0.0) throw std::invalid_argument("lj: pair distance must be >= 0");
  return std::max(r, kMinPairDistance);
}

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

EnergyReport energy(const PointCloud& x, const MapSystem& f) {
  return evaluate(x, f, NeighborTree(x));
}

std::vector<double> energy_grad(const PointCloud& x, const MapSystem& f) { return energy(x, f).grad; }

double lj_potential(double r, double delta, int p) {
  if (p < 1) throw std::invalid_argument("lj: exponent p must be >= 1");
  const double qp = int_pow(delta / clamp_pair_distance(r), p);
  return (qp - 1.0) * (qp - 1.0);
}

LJDerivs lj_derivs(double r, double delta, int p) {
  if (p < 1) throw std::invalid_argument("lj: exponent p must be >= 1");
  const double rc = clamp_pair_distance(r);
  const double q = delta / rc;
  const double qpm1 = int_pow(q, p - 1);
  const double qp = qpm1 * q;
  const double pd = static_cast<double>(p);
  return {-2.0 * pd * qp * (qp - 1.0) / rc, 2.0 * pd * qpm1 * (qp - 1.0) / rc};
}

EnergyReport augmented(const PointCloud& x, const LJParams& lj, const MapSystem& f) {
  const std::size_t n = x.size(), d = x.dim();
  lj.validate(n);
  const NeighborTree tree_x(x);
  EnergyReport rep = evaluate(x, f, tree_x);
  rep.grad.push_back(0.0);

  const double w = lj.mu / (static_cast<double>(n) * static_cast<double>(lj.m));
  double lj_sum = 0.0, d_delta = 0.0;
  std::vector<double> dir(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = x[i];
    auto nbrs = tree_x.query(xi, lj.m + 1);
    // Drop i itself; if more than m+1 points coincide with x_i, i may be absent.
    auto self = std::find_if(nbrs.begin(), nbrs.end(), [i](const Neighbor& nb) { return nb.index == i; });
    nbrs.erase(self != nbrs.end() ? self : nbrs.end() - 1);

    for (const Neighbor& nb : nbrs) {
      const auto xj = x[nb.index];
      const double r = std::sqrt(nb.dist_sq);
      const double rc = std::max(r, kMinPairDistance);
      lj_sum += lj_potential(r, lj.delta, lj.p);
      const LJDerivs dv = lj_derivs(r, lj.delta, lj.p);
      d_delta += dv.d_delta;
      for (std::size_t a = 0; a < d; ++a) dir[a] = (xi[a] - xj[a]) / rc;
      double* gi = rep.grad.data() + i * d;
      double* gj = rep.grad.data() + nb.index * d;
      for (std::size_t a = 0; a < d; ++a) {
        gi[a] += w * dv.d_r * dir[a];
        gj[a] -= w * dv.d_r * dir[a];
      }
    }
  }
  rep.lj_value = w * lj_sum;
  rep.value = rep.energy_value + rep.lj_value;
  rep.grad.back() = w * d_delta;
  return rep;
}

CloudObjective::CloudObjective(MapSystem f, std::size_t dim, std::optional<LJParams> lj)
    : f_(std::move(f)), dim_(dim), lj_(std::move(lj)) {
  if (dim_ != f_.dim) throw std::invalid_argument("CloudObjective: dimension mismatch with map '" + f_.name + "'");
}

EnergyReport CloudObjective::report(std::span<const double> vars) const {
  const std::size_t extra = lj_ ? 1 : 0;
  if (vars.size() < extra + dim_ || (vars.size() - extra) % dim_ != 0)
    throw std::invalid_argument("CloudObjective: variable vector has wrong length");
  PointCloud cloud(dim_, std::vector<double>(vars.begin(), vars.end() - static_cast<std::ptrdiff_t>(extra)));
  if (!lj_) return energy(cloud, f_);
  LJParams lj = *lj_;
  lj.delta = vars.back();
  return augmented(cloud, lj, f_);
}

double CloudObjective::operator()(std::span<const double> vars, std::span<double> grad) const {
  for (double v : vars)
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
  EnergyReport rep;
  try {
    rep = report(vars);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::copy(rep.grad.begin(), rep.grad.end(), grad.begin());
  return rep.value;
}

}  // namespace invset
