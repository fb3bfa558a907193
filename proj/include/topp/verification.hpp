#pragma once

// Randomized property checks for one parameter set: region invariance,
// z-monotonicity, orbit bounds, sign conditions at u2, closed-form vs numeric
// eigenvalues, and absence of periodic orbits.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "topp/dynamics.hpp"
#include "topp/model.hpp"
#include "topp/sampling.hpp"
#include "topp/stability.hpp"

namespace topp {

enum class PropertyStatus { Pass, Fail, Skipped };

inline std::string_view to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::Pass: return "pass";
    case PropertyStatus::Fail: return "fail";
    case PropertyStatus::Skipped: return "skipped";
  }
  return "unknown";
}

struct PropertyResult {
  std::string name;
  PropertyStatus status = PropertyStatus::Pass;
  std::size_t checked = 0;
  std::string detail;
  std::optional<State> counterexample;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 10'000;
  std::size_t period_samples = 1'000;
  std::size_t pmax = 64;
  double period_tol = 1e-10;
  std::size_t burn_in = 0;
  std::size_t orbit_count = 100;
  std::size_t orbit_length = 500;
  RegimeOptions regime;
};

/// Independent stream per property so adding or skipping a suite does not
/// shift the samples of the others.
inline Rng property_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

enum class Region { Omega, Omega1, Omega2 };

inline PropertyResult check_region_closure(const ModelParams& p, Region which,
                                           const VerifyOptions& opt) {
  static constexpr std::string_view names[] = {
      "omega_invariance", "omega1_invariance", "omega2_invariance"};
  PropertyResult r;
  r.name = std::string(names[static_cast<int>(which)]);
  const Regions regions(p, opt.regime);
  if (which == Region::Omega2 && !regions.has_omega2()) {
    r.status = PropertyStatus::Skipped;
    r.detail = "Omega2 needs the critical regime with two fixed points";
    return r;
  }
  Rng rng = property_rng(opt.seed, 1 + static_cast<std::uint64_t>(which));
  auto inside = [&](const State& s) {
    switch (which) {
      case Region::Omega: return regions.omega(s);
      case Region::Omega1: return regions.omega1(s);
      case Region::Omega2: return regions.omega2(s);
    }
    return false;
  };
  for (std::size_t i = 0; i < opt.samples; ++i) {
    State s;
    switch (which) {
      case Region::Omega: s = sample_omega(rng, p); break;
      case Region::Omega1: s = sample_omega1(rng, p); break;
      case Region::Omega2: s = sample_omega2(rng, regions, p); break;
    }
    if (!inside(s)) continue;
    ++r.checked;
    const State next = evaluate(p, s);
    if (!inside(next)) {
      r.status = PropertyStatus::Fail;
      r.counterexample = s;
      r.detail = "image left the region";
      return r;
    }
  }
  return r;
}

/// z never increases in one step from inside Omega; strictly decreases when
/// r1^2 < 4 r2 d0 and z > 0. Also checks x' >= g0 and y' <= B.
inline PropertyResult check_step_bounds(const ModelParams& p,
                                        const VerifyOptions& opt) {
  PropertyResult r;
  r.name = "z_monotone_and_step_bounds";
  const Regime regime = classify_regime(p, opt.regime);
  const bool strict = regime.kind == RegimeKind::Subcritical;
  const DomainBounds b = domain_bounds(p);
  Rng rng = property_rng(opt.seed, 10);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const State s = sample_omega(rng, p);
    const State next = evaluate(p, s);
    ++r.checked;
    const bool z_ok = strict && s.z > 0.0 ? next.z < s.z : next.z <= s.z;
    if (!z_ok || next.x < p.g0 || next.y > b.B) {
      r.status = PropertyStatus::Fail;
      r.counterexample = s;
      r.detail = !z_ok ? "z increased" : next.x < p.g0 ? "x' < g0" : "y' > B";
      return r;
    }
  }
  return r;
}

/// Along sampled orbits: x(n) <= (g0/g1)(1-(1-g1)^n) + (1-g1)^n x(0), z is
/// non-increasing, and in the subcritical regime
/// z(n) <= (1 + (r1^2 - 4 r2 d0)/(4 r2))^n z(0).
inline PropertyResult check_orbit_bounds(const ModelParams& p,
                                         const VerifyOptions& opt) {
  PropertyResult r;
  r.name = "orbit_bounds";
  const bool subcritical =
      classify_regime(p, opt.regime).kind == RegimeKind::Subcritical;
  const double contraction =
      1.0 + (p.r1 * p.r1 - 4.0 * p.r2 * p.d0) / (4.0 * p.r2);
  const double ratio = p.g0 / p.g1;
  constexpr double slack = 1e-12;
  Rng rng = property_rng(opt.seed, 11);
  for (std::size_t o = 0; o < opt.orbit_count; ++o) {
    const State s0 = sample_omega(rng, p);
    State s = s0;
    double decay = 1.0;  // (1-g1)^n
    double z_factor = 1.0;
    for (std::size_t n = 1; n <= opt.orbit_length; ++n) {
      const State next = evaluate(p, s);
      decay *= 1.0 - p.g1;
      z_factor *= contraction;
      ++r.checked;
      const double x_cap = ratio * (1.0 - decay) + decay * s0.x;
      std::string why;
      if (next.x > x_cap * (1.0 + slack)) why = "x exceeded its closed-form bound";
      else if (next.z > s.z) why = "z increased";
      else if (subcritical && next.z > z_factor * s0.z * (1.0 + slack) + 1e-300)
        why = "z exceeded its geometric bound";
      if (!why.empty()) {
        r.status = PropertyStatus::Fail;
        r.counterexample = s0;
        r.detail = why + " at n=" + std::to_string(n);
        return r;
      }
      s = next;
    }
  }
  return r;
}

/// F(1) > 0, F(-1) > 0 and C* < 1 at u2.
inline PropertyResult check_sign_conditions(const ModelParams& p,
                                            const VerifyOptions& opt) {
  PropertyResult r;
  r.name = "u2_sign_conditions";
  if (!classify_regime(p, opt.regime).has_two_fixed_points()) {
    r.status = PropertyStatus::Skipped;
    r.detail = "u2 does not exist for these parameters";
    return r;
  }
  const CharQuadratic q = char_quadratic_u2(p, opt.regime);
  const QuadraticRootCase qc = classify_quadratic(q.b_star, q.c_star);
  r.checked = 1;
  std::ostringstream d;
  d.precision(17);
  d << "F(1)=" << qc.signs.f_plus_one << " F(-1)=" << qc.signs.f_minus_one
    << " C*=" << q.c_star;
  r.detail = d.str();
  if (!(qc.signs.f_plus_one > 0.0 && qc.signs.f_minus_one > 0.0 &&
        q.c_star < 1.0)) {
    r.status = PropertyStatus::Fail;
    r.counterexample = interior_equilibrium(p);
  }
  return r;
}

/// Closed-form eigenvalues at each fixed point against the generic solver on
/// the Jacobian, componentwise after sorting.
inline PropertyResult check_eigen_agreement(const ModelParams& p,
                                            const VerifyOptions& opt,
                                            double tol = 1e-10) {
  PropertyResult r;
  r.name = "eigenvalue_agreement";
  for (const auto& fp : fixed_points(p, opt.regime)) {
    const auto numeric = eigenvalues_numeric(jacobian(p, fp.location));
    ++r.checked;
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::abs(numeric[i] - fp.eigenvalues[i]) > tol) {
        r.status = PropertyStatus::Fail;
        r.counterexample = fp.location;
        r.detail = "mismatch at " + std::string(to_string(fp.label));
        return r;
      }
    }
  }
  return r;
}

/// No sampled state in Omega returns to itself within [2, pmax] steps.
inline PropertyResult check_period_absence(const ModelParams& p,
                                           const VerifyOptions& opt) {
  PropertyResult r;
  r.name = "period_absence";
  Rng rng = property_rng(opt.seed, 12);
  for (std::size_t i = 0; i < opt.period_samples; ++i) {
    const State s = sample_omega(rng, p);
    ++r.checked;
    const auto period = detect_period(p, s, opt.pmax, opt.period_tol, opt.burn_in);
    if (period && *period >= 2) {
      r.status = PropertyStatus::Fail;
      r.counterexample = s;
      r.detail = "period " + std::to_string(*period) + " detected";
      return r;
    }
  }
  return r;
}

/// Runs every suite. Throws PreconditionError for inadmissible parameters.
inline std::vector<PropertyResult> run_verification(const ModelParams& p,
                                                    const VerifyOptions& opt) {
  if (!classify_regime(p, opt.regime).admissible()) {
    throw PreconditionError("verification requires admissible parameters");
  }
  return {
      check_region_closure(p, Region::Omega, opt),
      check_region_closure(p, Region::Omega1, opt),
      check_region_closure(p, Region::Omega2, opt),
      check_step_bounds(p, opt),
      check_orbit_bounds(p, opt),
      check_sign_conditions(p, opt),
      check_eigen_agreement(p, opt),
      check_period_absence(p, opt),
  };
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (r.status == PropertyStatus::Fail) return false;
  return true;
}

}  // namespace topp
