#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace invset {

/// Returns f(x) and writes the gradient into grad (same length as x).
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct OptimOptions {
  /// Stop once the gradient infinity norm drops below this.
  double grad_tol = 1e-6;
  std::size_t max_iters = 500;
  /// Number of stored curvature pairs.
  std::size_t memory = 10;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  /// Keep a copy of x every this many accepted steps (0 = none).
  std::size_t snapshot_every = 0;
  /// Objective evaluations allowed per line search.
  std::size_t max_line_evals = 40;

  void validate() const;
};

enum class Termination { GradTol, MaxIters, LineSearchFailure };

std::string_view to_string(Termination t) noexcept;

struct TraceRecord {
  std::size_t iteration;
  double value;
  double grad_inf;
  std::optional<std::vector<double>> snapshot;
};

struct OptimRun {
  std::vector<double> final_x;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  Termination termination = Termination::MaxIters;
  std::vector<TraceRecord> trace;
};

/// Called with (iteration, x) for the start point and each accepted step.
using IterationObserver = std::function<void(std::size_t iteration, std::span<const double> x)>;

/// Limited-memory BFGS with a strong-Wolfe line search.
///
/// Iterations count accepted steps only. Trace row 0 is the starting
/// point. If a line search fails, the curvature memory is dropped and one
/// steepest-descent step is attempted; a second consecutive failure ends
/// the run with Termination::LineSearchFailure at the last accepted iterate.
///
/// Throws std::invalid_argument for bad options or a non-finite value or
/// gradient at x0.
OptimRun minimize(const Objective& obj, std::vector<double> x0, const OptimOptions& opts,
                  const IterationObserver& observe = {});

}  // namespace invset
