#include "invset/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace invset {

void OptimOptions::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("optim.grad_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("optim.max_iters must be >= 1");
  if (memory < 1) throw std::invalid_argument("optim.memory must be >= 1");
  if (!(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0))
    throw std::invalid_argument("optim: need 0 < wolfe_c1 < wolfe_c2 < 1");
  if (max_line_evals < 2) throw std::invalid_argument("optim.max_line_evals must be >= 2");
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::GradTol: return "GradTol";
    case Termination::MaxIters: return "MaxIters";
    case Termination::LineSearchFailure: return "LineSearchFailure";
  }
  return "?";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H g.
std::vector<double> lbfgs_direction(const std::deque<CurvaturePair>& mem, std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> alpha(mem.size());
  for (std::size_t k = mem.size(); k-- > 0;) {
    alpha[k] = mem[k].rho * dot(mem[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * mem[k].y[i];
  }
  if (!mem.empty()) {
    const auto& last = mem.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < mem.size(); ++k) {
    const double beta = mem[k].rho * dot(mem[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * mem[k].s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

struct Point {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative
  std::vector<double> x;
  std::vector<double> g;
  bool finite = true;
};

class LineSearch {
 public:
  LineSearch(const Objective& obj, const OptimOptions& opts, std::size_t& evals)
      : obj_(obj), opts_(opts), evals_(evals) {}

  // Returns the accepted point, or nullopt on failure.
  std::optional<Point> run(const Point& start, std::span<const double> dir, double alpha0) {
    start_ = &start;
    dir_ = dir;
    used_ = 0;
    Point prev = start;
    prev.alpha = 0.0;
    double alpha = alpha0;
    for (bool first = true; used_ < opts_.max_line_evals; first = false) {
      Point cur = probe(alpha);
      if (!cur.finite || !armijo(cur) || (!first && cur.value >= prev.value)) return zoom(prev, cur);
      if (std::abs(cur.slope) <= -opts_.wolfe_c2 * start.slope) return cur;
      if (cur.slope >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 4.0;
    }
    return armijo_fallback(prev);
  }

 private:
  bool armijo(const Point& p) const {
    return p.value <= start_->value + opts_.wolfe_c1 * p.alpha * start_->slope;
  }

  Point probe(double alpha) {
    ++used_;
    ++evals_;
    Point p;
    p.alpha = alpha;
    p.x.resize(start_->x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] = start_->x[i] + alpha * dir_[i];
    p.g.assign(p.x.size(), 0.0);
    p.value = obj_(p.x, p.g);
    p.finite = std::isfinite(p.value) && all_finite(p.g);
    p.slope = p.finite ? dot(p.g, dir_) : std::numeric_limits<double>::quiet_NaN();
    return p;
  }

  // lo satisfies sufficient decrease and has the lowest value seen so far;
  // the minimizer along dir lies between lo and hi.
  std::optional<Point> zoom(Point lo, Point hi) {
    while (used_ < opts_.max_line_evals) {
      const double width = hi.alpha - lo.alpha;
      if (std::abs(width) <= 1e-14 * std::max(1.0, std::abs(lo.alpha))) break;
      double alpha = interpolate(lo, hi);
      const double lo_edge = std::min(lo.alpha, hi.alpha) + 0.1 * std::abs(width);
      const double hi_edge = std::max(lo.alpha, hi.alpha) - 0.1 * std::abs(width);
      if (!std::isfinite(alpha) || alpha < lo_edge || alpha > hi_edge) alpha = lo.alpha + 0.5 * width;
      Point cur = probe(alpha);
      if (!cur.finite || !armijo(cur) || cur.value >= lo.value) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -opts_.wolfe_c2 * start_->slope) return cur;
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
      lo = std::move(cur);
    }
    return armijo_fallback(lo);
  }

  // Minimizer of the cubic matching values and slopes at both ends.
  static double interpolate(const Point& a, const Point& b) {
    if (!a.finite || !b.finite) return std::numeric_limits<double>::quiet_NaN();
    const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    return b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
  }

  // On kinks the curvature condition may be unattainable; a strictly
  // decreasing step that satisfies sufficient decrease is still accepted.
  std::optional<Point> armijo_fallback(const Point& best) const {
    if (best.alpha > 0.0 && best.finite && best.value < start_->value) return best;
    return std::nullopt;
  }

  const Objective& obj_;
  const OptimOptions& opts_;
  std::size_t& evals_;
  const Point* start_ = nullptr;
  std::span<const double> dir_;
  std::size_t used_ = 0;
};

}  // namespace

OptimRun minimize(const Objective& obj, std::vector<double> x0, const OptimOptions& opts,
                  const IterationObserver& observe) {
  opts.validate();
  if (x0.empty()) throw std::invalid_argument("minimize: empty starting point");

  OptimRun run;
  Point cur;
  cur.x = std::move(x0);
  cur.g.assign(cur.x.size(), 0.0);
  cur.value = obj(cur.x, cur.g);
  run.evaluations = 1;
  if (!std::isfinite(cur.value) || !all_finite(cur.g))
    throw std::invalid_argument("minimize: non-finite objective or gradient at the starting point");

  auto record = [&](std::size_t iter) {
    TraceRecord rec{iter, cur.value, inf_norm(cur.g), std::nullopt};
    if (opts.snapshot_every > 0 && iter % opts.snapshot_every == 0) rec.snapshot = cur.x;
    run.trace.push_back(std::move(rec));
    if (observe) observe(iter, cur.x);
  };
  record(0);

  std::deque<CurvaturePair> memory;
  LineSearch search(obj, opts, run.evaluations);
  std::size_t iter = 0;
  for (;;) {
    if (inf_norm(cur.g) < opts.grad_tol) {
      run.termination = Termination::GradTol;
      break;
    }
    if (iter >= opts.max_iters) {
      run.termination = Termination::MaxIters;
      break;
    }

    std::optional<Point> next;
    for (int attempt = 0; attempt < 2 && !next; ++attempt) {
      std::vector<double> dir;
      double slope = 0.0;
      if (!memory.empty()) {
        dir = lbfgs_direction(memory, cur.g);
        slope = dot(dir, cur.g);
      }
      double alpha0 = 1.0;
      if (memory.empty() || !(slope < 0.0)) {
        memory.clear();
        dir.assign(cur.g.size(), 0.0);
        for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -cur.g[i];
        slope = -dot(cur.g, cur.g);
        alpha0 = std::min(1.0, 1.0 / std::sqrt(-slope));
      }
      cur.slope = slope;
      next = search.run(cur, dir, alpha0);
      if (!next) {
        if (memory.empty()) break;  // steepest descent already failed
        memory.clear();
      }
    }
    if (!next) {
      run.termination = Termination::LineSearchFailure;
      break;
    }

    CurvaturePair pair;
    pair.s.resize(cur.x.size());
    pair.y.resize(cur.x.size());
    for (std::size_t i = 0; i < cur.x.size(); ++i) {
      pair.s[i] = next->x[i] - cur.x[i];
      pair.y[i] = next->g[i] - cur.g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > opts.memory) memory.pop_front();
    }

    cur = std::move(*next);
    ++iter;
    record(iter);
  }

  run.iterations = iter;
  run.final_value = cur.value;
  run.final_grad_norm = inf_norm(cur.g);
  run.final_x = std::move(cur.x);
  return run;
}

}  // namespace invset
