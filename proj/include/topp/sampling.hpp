#pragma once

// Seeded generators of admissible parameter sets and of states inside the
// invariant regions, for randomized property checks.

#include <algorithm>
#include <cmath>
#include <random>

#include "topp/model.hpp"

namespace topp {

using Rng = std::mt19937_64;

namespace detail {
inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline void sample_common(Rng& rng, ModelParams& p) {
  p.g1 = uniform(rng, 0.05, 0.95);
  p.k = uniform(rng, 0.05, 1.0);
  p.c = uniform(rng, 0.1, 2.0);
  p.s1 = uniform(rng, 0.1, 2.0);
  p.s2 = uniform(rng, 0.05, 2.0);
}
}  // namespace detail

/// Parameters with r1^2 < 4 r2 d0 strictly, satisfying every admissibility
/// condition.
inline ModelParams sample_subcritical(Rng& rng) {
  for (;;) {
    ModelParams p;
    detail::sample_common(rng, p);
    p.r1 = detail::uniform(rng, 0.2, 2.0);
    p.r2 = detail::uniform(rng, 0.2, 2.0);
    const double d0_min = p.r1 * p.r1 / (4.0 * p.r2);
    // Keep a margin from tangency so the slowest eigenvalue at u1 stays
    // below 0.995.
    if (d0_min >= 0.9) continue;
    p.d0 = detail::uniform(rng, d0_min + 0.05 * (1.0 - d0_min), 1.0);
    const double A = domain_bounds(p).A;
    p.g0 = detail::uniform(rng, 0.05, 1.0) * p.g1 * A;
    if (classify_regime(p).kind == RegimeKind::Subcritical) return p;
  }
}

/// Parameters with r1^2 = 4 r2 d0 and the second fixed point inside the box.
inline ModelParams sample_critical(Rng& rng) {
  for (;;) {
    ModelParams p;
    detail::sample_common(rng, p);
    p.r1 = detail::uniform(rng, 0.2, 2.0);
    p.r2 = detail::uniform(rng, 0.2, 2.0);
    p.d0 = p.r1 * p.r1 / (4.0 * p.r2);
    if (p.d0 > 1.0) continue;
    const double x_star = p.r1 / (2.0 * p.r2);
    const double A = domain_bounds(p).A;
    const double lo = p.g1 * x_star;
    const double hi = std::min(x_star, p.g1 * A);
    if (!(hi > lo)) continue;
    p.g0 = lo + detail::uniform(rng, 0.05, 0.95) * (hi - lo);
    const double s2_max = p.d0 * (p.r1 - 2.0 * p.r2 * p.g0) /
                          (p.r2 * (2.0 * p.r2 * p.g0 - p.g1 * p.r1));
    p.s2 = detail::uniform(rng, 0.05, 1.0) * std::min(s2_max, 5.0);
    if (classify_regime(p).has_two_fixed_points()) return p;
  }
}

/// Subcritical or critical-with-two-fixed-points, with equal odds.
inline ModelParams sample_admissible(Rng& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? sample_subcritical(rng)
                                               : sample_critical(rng);
}

/// Uniform in the invariant box.
inline State sample_omega(Rng& rng, const ModelParams& p) {
  const DomainBounds b = domain_bounds(p);
  return {detail::uniform(rng, p.g0, b.A), detail::uniform(rng, 0.0, b.B),
          detail::uniform(rng, 0.0, b.C)};
}

/// Uniform in the box restricted to x <= g0/g1.
inline State sample_omega1(Rng& rng, const ModelParams& p) {
  const DomainBounds b = domain_bounds(p);
  const double x_hi = std::min(b.A, p.g0 / p.g1);
  return {detail::uniform(rng, p.g0, x_hi), detail::uniform(rng, 0.0, b.B),
          detail::uniform(rng, 0.0, b.C)};
}

/// Uniform in Omega1 restricted to z < z*. Requires two fixed points.
inline State sample_omega2(Rng& rng, const Regions& regions,
                           const ModelParams& p) {
  const DomainBounds& b = regions.bounds();
  const double x_hi = std::min(b.A, p.g0 / p.g1);
  const double z_hi = std::min(b.C, regions.z_star().value());
  return {detail::uniform(rng, p.g0, x_hi), detail::uniform(rng, 0.0, b.B),
          detail::uniform(rng, 0.0, z_hi)};
}

}  // namespace topp
