#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "invset/dynamics.hpp"
#include "invset/geometry.hpp"

namespace invset {

/// Pair distances are clamped to this before evaluating the potential.
inline constexpr double kMinPairDistance = 1e-12;

struct LJParams {
  int p = 1;
  std::size_t m = 6;
  double mu = 1.0;
  double delta = 0.0;

  /// Throws std::invalid_argument if p < 1, m < 1, m >= n, mu < 0, or a
  /// non-finite mu/delta.
  void validate(std::size_t n) const;
};

/// One evaluation of the objective.
///
/// grad is laid out like the cloud coordinates (n*d), plus a trailing
/// d/d(delta) slot when the Lennard-Jones term is active.
struct EnergyReport {
  double value = 0.0;
  /// The set-distance part alone; equals value when LJ is inactive.
  double energy_value = 0.0;
  /// mu-weighted mean pair potential; 0 when LJ is inactive.
  double lj_value = 0.0;
  std::vector<double> grad;
  /// j(i) = argmin_j |x_i - f(x_j)|^2
  std::vector<std::size_t> assign_fwd;
  /// k(i) = argmin_j |f(x_i) - x_j|^2
  std::vector<std::size_t> assign_bwd;
};

/// Modified-Hausdorff distance between the cloud and its image, with its
/// frozen-assignment gradient.
EnergyReport energy(const PointCloud& x, const MapSystem& f);

std::vector<double> energy_grad(const PointCloud& x, const MapSystem& f);

/// V(r) = (delta/r)^{2p} - 2 (delta/r)^p + 1, with r clamped from below.
/// Throws std::invalid_argument for negative or NaN r, or p < 1.
double lj_potential(double r, double delta, int p);

struct LJDerivs {
  double d_r;
  double d_delta;
};

LJDerivs lj_derivs(double r, double delta, int p);

/// energy() plus mu/(n m) sum_i sum_{j in N_m(i)} V(|x_i - x_j|), where
/// N_m(i) are the m nearest other points of x_i.
EnergyReport augmented(const PointCloud& x, const LJParams& lj, const MapSystem& f);

/// Adapts energy()/augmented() to a flat variable vector for the optimizer.
///
/// Variables are the n*d cloud coordinates, followed by delta when the
/// Lennard-Jones term is active. Non-finite input or images yield a NaN
/// value instead of an exception.
class CloudObjective {
 public:
  CloudObjective(MapSystem f, std::size_t dim, std::optional<LJParams> lj = std::nullopt);

  double operator()(std::span<const double> vars, std::span<double> grad) const;

  EnergyReport report(std::span<const double> vars) const;

  std::size_t dim() const noexcept { return dim_; }
  bool has_delta() const noexcept { return lj_.has_value(); }

 private:
  MapSystem f_;
  std::size_t dim_;
  std::optional<LJParams> lj_;
};

}  // namespace invset
