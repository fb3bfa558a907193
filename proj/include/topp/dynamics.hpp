#pragma once

// Orbits of the map: iteration with region bookkeeping, convergence to the
// known fixed points, period search, and basin labelling over grids.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "topp/errors.hpp"
#include "topp/model.hpp"
#include "topp/stability.hpp"

namespace topp {

inline constexpr double kSubcriticalTol = 1e-8;
inline constexpr double kCriticalTol = 1e-4;
inline constexpr std::size_t kDefaultMaxIter = 1'000'000;

/// Convergence tolerance used when the caller does not supply one. The
/// eigenvalue-1 direction at u2 makes critical-regime convergence
/// sub-geometric, hence the looser value there.
inline double default_tolerance(const Regime& r) {
  return r.kind == RegimeKind::Critical ? kCriticalTol : kSubcriticalTol;
}

struct RegionFlags {
  bool omega = false;
  bool omega1 = false;
  bool omega2 = false;

  friend bool operator==(const RegionFlags&, const RegionFlags&) = default;
};

inline RegionFlags region_flags(const Regions& regions, const State& s) {
  RegionFlags f;
  f.omega = regions.omega(s);
  f.omega1 = f.omega && regions.omega1(s);
  f.omega2 = regions.has_omega2() && regions.omega2(s);
  return f;
}

enum class IterationMode {
  Admissible,   // params must be admissible; region bookkeeping on
  Exploration,  // any positive params; no region bookkeeping
};

struct Trajectory {
  ModelParams params;
  std::vector<State> states;  // states[0] is the initial state
  std::optional<std::size_t> omega_exit;
  std::vector<RegionFlags> region_flags;  // empty in exploration mode
};

/// Calls visit(n, state) for n = 0..steps. Throws DomainError if an iterate
/// leaves the nonnegative octant.
template <class Visitor>
void for_each_state(const ModelParams& p, State s, std::size_t steps,
                    Visitor&& visit) {
  visit(std::size_t{0}, s);
  for (std::size_t n = 1; n <= steps; ++n) {
    s = step(p, s);
    visit(n, s);
  }
}

inline Trajectory iterate(const ModelParams& p, const State& s0,
                          std::size_t steps,
                          IterationMode mode = IterationMode::Admissible,
                          RegimeOptions opt = {}) {
  require_positive(p);
  Trajectory t;
  t.params = p;
  t.states.reserve(steps + 1);

  std::optional<Regions> regions;
  if (mode == IterationMode::Admissible) {
    if (!classify_regime(p, opt).admissible()) {
      throw PreconditionError(
          "iterate: inadmissible parameters require exploration mode");
    }
    regions.emplace(p, opt);
    t.region_flags.reserve(steps + 1);
  }

  for_each_state(p, s0, steps, [&](std::size_t n, const State& s) {
    t.states.push_back(s);
    if (regions) {
      const RegionFlags f = region_flags(*regions, s);
      t.region_flags.push_back(f);
      if (!f.omega && !t.omega_exit) t.omega_exit = n;
    }
  });
  return t;
}

enum class Verdict { Converged, MaxIterations, ExitedDomain };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::MaxIterations: return "max_iterations";
    case Verdict::ExitedDomain: return "exited_domain";
  }
  return "unknown";
}

struct ConvergenceResult {
  std::optional<State> limit;
  std::optional<FixedPointLabel> target;
  std::size_t iterations = 0;
  /// Sup-norm distance from the last state to the target, or to the nearest
  /// fixed point when nothing was reached.
  double achieved_residual = std::numeric_limits<double>::infinity();
  Verdict verdict = Verdict::MaxIterations;
  State final_state;
};

/// Iterates until the state is within tol of a known fixed point and the
/// one-step residual is also within tol. observe(state) sees every visited
/// state, including the initial and the final one.
template <class Observer>
ConvergenceResult run_to_convergence(const ModelParams& p, const State& s0,
                                     double tol, std::size_t max_iter,
                                     Observer&& observe,
                                     RegimeOptions opt = {}) {
  if (!(tol > 0.0)) throw PreconditionError("tol must be positive");
  if (max_iter < 1) throw PreconditionError("max_iter must be at least 1");
  const auto fps = fixed_points(p, opt);

  ConvergenceResult out;
  auto nearest = [&](const State& s) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& fp : fps) best = std::min(best, sup_distance(s, fp.location));
    return best;
  };

  State s = s0;
  for (std::size_t n = 0;; ++n) {
    observe(s);
    const State next = evaluate(p, s);
    const double movement = sup_distance(next, s);
    for (const auto& fp : fps) {
      const double d = sup_distance(s, fp.location);
      if (d <= tol && movement <= tol) {
        out.limit = fp.location;
        out.target = fp.label;
        out.iterations = n;
        out.achieved_residual = d;
        out.verdict = Verdict::Converged;
        out.final_state = s;
        return out;
      }
    }
    if (n == max_iter) {
      out.iterations = n;
      out.achieved_residual = nearest(s);
      out.verdict = Verdict::MaxIterations;
      out.final_state = s;
      return out;
    }
    if (!nonnegative(next)) {
      out.iterations = n + 1;
      out.achieved_residual = nearest(next);
      out.verdict = Verdict::ExitedDomain;
      out.final_state = next;
      return out;
    }
    s = next;
  }
}

inline ConvergenceResult run_to_convergence(const ModelParams& p,
                                            const State& s0, double tol,
                                            std::size_t max_iter,
                                            RegimeOptions opt = {}) {
  return run_to_convergence(p, s0, tol, max_iter, [](const State&) {}, opt);
}

/// After burn_in iterations, returns the smallest p in [1, pmax] with
/// |W^p(u) - u| <= tol at the current point u, if any.
inline std::optional<std::size_t> detect_period(const ModelParams& p,
                                                const State& s0,
                                                std::size_t pmax, double tol,
                                                std::size_t burn_in = 0) {
  if (pmax < 1) throw PreconditionError("pmax must be at least 1");
  State u = s0;
  for (std::size_t i = 0; i < burn_in; ++i) u = evaluate(p, u);
  State w = u;
  for (std::size_t period = 1; period <= pmax; ++period) {
    w = evaluate(p, w);
    if (sup_distance(w, u) <= tol) return period;
  }
  return std::nullopt;
}

enum class BasinOutcome { ToU1, ToU2, Undecided };

inline std::string_view to_string(BasinOutcome b) {
  switch (b) {
    case BasinOutcome::ToU1: return "u1";
    case BasinOutcome::ToU2: return "u2";
    case BasinOutcome::Undecided: return "undecided";
  }
  return "unknown";
}

struct BasinLabel {
  State initial;
  BasinOutcome label = BasinOutcome::Undecided;
  std::size_t iterations = 0;
  /// x(n) > g0/g1 at every observed n.
  bool x_hypothesis = false;
  /// z(n) > z* at every observed n; false when z* does not exist.
  bool z_hypothesis = false;

  friend bool operator==(const BasinLabel&, const BasinLabel&) = default;
};

/// Empirical basin label of s0, together with the two orbit-wide hypotheses
/// under which the limit is known in the critical regime. The hypotheses are
/// recorded, never used to predict the label.
inline BasinLabel classify_basin(const ModelParams& p, const State& s0,
                                 double tol, std::size_t max_iter,
                                 RegimeOptions opt = {}) {
  const Regions regions(p, opt);
  const double x_cap = p.g0 / p.g1;
  const auto z_star = regions.z_star();

  BasinLabel out;
  out.initial = s0;
  bool x_hyp = true;
  bool z_hyp = z_star.has_value();
  const ConvergenceResult r = run_to_convergence(
      p, s0, tol, max_iter,
      [&](const State& s) {
        x_hyp = x_hyp && s.x > x_cap;
        z_hyp = z_hyp && s.z > *z_star;
      },
      opt);
  out.iterations = r.iterations;
  out.x_hypothesis = x_hyp;
  out.z_hypothesis = z_hyp;
  if (r.verdict == Verdict::Converged) {
    out.label = *r.target == FixedPointLabel::u1 ? BasinOutcome::ToU1
                                                 : BasinOutcome::ToU2;
  }
  return out;
}

struct MonotoneCheck {
  bool ok = true;
  /// Index n of the first state with z(n) > z(n-1).
  std::optional<std::size_t> first_violation;
};

inline MonotoneCheck check_monotone_z(const Trajectory& t) {
  for (std::size_t n = 1; n < t.states.size(); ++n) {
    if (t.states[n].z > t.states[n - 1].z) return {false, n};
  }
  return {};
}

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  double at(std::size_t i) const {
    if (count <= 1) return min;
    return min + (max - min) * static_cast<double>(i) /
                     static_cast<double>(count - 1);
  }
  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct GridSpec {
  GridAxis x, y, z;

  std::size_t size() const { return x.count * y.count * z.count; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Lattice point with flat index i in row-major (x, y, z) order, clipped to
/// the invariant box.
inline State grid_point(const GridSpec& g, const DomainBounds& b,
                        const ModelParams& p, std::size_t i) {
  const std::size_t iz = i % g.z.count;
  const std::size_t iy = (i / g.z.count) % g.y.count;
  const std::size_t ix = i / (g.z.count * g.y.count);
  return {std::clamp(g.x.at(ix), p.g0, b.A), std::clamp(g.y.at(iy), 0.0, b.B),
          std::clamp(g.z.at(iz), 0.0, b.C)};
}

/// One basin label per lattice point, row-major in (x, y, z). Points are
/// evaluated on up to `threads` workers (0 = hardware concurrency); the result
/// does not depend on the worker count.
inline std::vector<BasinLabel> sweep_grid(const ModelParams& p,
                                          const GridSpec& grid, double tol,
                                          std::size_t max_iter,
                                          unsigned threads = 0,
                                          RegimeOptions opt = {}) {
  if (grid.x.count < 1 || grid.y.count < 1 || grid.z.count < 1) {
    throw PreconditionError("grid resolution must be at least 1 per axis");
  }
  if (!classify_regime(p, opt).admissible()) {
    throw PreconditionError("sweep_grid requires admissible parameters");
  }
  const DomainBounds bounds = domain_bounds(p);
  const std::size_t total = grid.size();
  std::vector<BasinLabel> out(total);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      out[i] = classify_basin(p, grid_point(grid, bounds, p, i), tol, max_iter,
                              opt);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

}  // namespace topp
