#pragma once

// Discrete glucose / insulin / beta-cell map, its invariant box and the
// admissibility classification of parameter sets.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topp/errors.hpp"

namespace topp {

/// The nine positive model constants.
///
///   g0  glucose infusion rate                 (mg/dl/day)
///   g1  insulin-independent glucose uptake     (1/day)
///   c   insulin sensitivity                    (ml/uU/day)
///   s1  secretory capacity per beta-cell       (uU*dl/ml/mg/day)
///   s2  Hill half-saturation scale             (mg^2/dl^2)
///   k   insulin clearance rate                 (1/day)
///   d0  beta-cell death rate at zero glucose   (1/day)
///   r1  beta-cell growth coefficient           (dl/mg/day)
///   r2  beta-cell apoptosis coefficient        (dl^2/mg^2/day)
struct ModelParams {
  double g0 = 0.0;
  double g1 = 0.0;
  double c = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double k = 0.0;
  double d0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline constexpr std::array<std::string_view, 9> kParamNames = {
    "g0", "g1", "c", "s1", "s2", "k", "d0", "r1", "r2"};

/// Field access by position in kParamNames order.
inline double& param_at(ModelParams& p, std::size_t i) {
  std::array<double*, 9> f = {&p.g0, &p.g1, &p.c,  &p.s1, &p.s2,
                              &p.k,  &p.d0, &p.r1, &p.r2};
  return *f.at(i);
}
inline double param_at(const ModelParams& p, std::size_t i) {
  return param_at(const_cast<ModelParams&>(p), i);
}

inline bool all_positive(const ModelParams& p) {
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    const double v = param_at(p, i);
    if (!(std::isfinite(v) && v > 0.0)) return false;
  }
  return true;
}

/// Throws PreconditionError naming the first non-positive or non-finite field.
inline void require_positive(const ModelParams& p) {
  for (std::size_t i = 0; i < kParamNames.size(); ++i) {
    const double v = param_at(p, i);
    if (!(std::isfinite(v) && v > 0.0)) {
      throw PreconditionError("parameter " + std::string(kParamNames[i]) +
                              " must be finite and strictly positive");
    }
  }
}

/// Parameter set of the subcritical figure experiment (r1^2 < 4 r2 d0).
inline constexpr ModelParams figure1_params() {
  return {0.1, 0.15, 0.6, 1.0, 0.2, 0.1, 0.4, 1.0, 1.0};
}

/// Parameter set of the critical figure experiment (r1^2 == 4 r2 d0).
inline constexpr ModelParams figure2_params() {
  return {0.1, 0.15, 0.6, 1.0, 0.2, 0.1, 0.25, 1.0, 1.0};
}

/// Glucose (mg/dl), insulin (uU/ml) and functional beta-cell mass (mg).
struct State {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

inline bool nonnegative(const State& s) {
  return s.x >= 0.0 && s.y >= 0.0 && s.z >= 0.0;
}

inline double sup_distance(const State& a, const State& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

/// One application of the evolution operator on an arbitrary real triple.
/// No sign checks; used where iteration outside the octant must be observed.
inline State evaluate(const ModelParams& p, const State& s) {
  const double x2 = s.x * s.x;
  return {p.g0 + s.x * (1.0 - p.g1 - p.c * s.y),
          p.s1 * x2 / (p.s2 + x2) * s.z + (1.0 - p.k) * s.y,
          (1.0 - p.d0 + p.r1 * s.x - p.r2 * x2) * s.z};
}

/// One application of the evolution operator. Throws DomainError if the
/// image leaves the nonnegative octant (only possible for inputs outside the
/// invariant box).
inline State step(const ModelParams& p, const State& s) {
  const State next = evaluate(p, s);
  if (!(next.x >= 0.0) || !(next.y >= 0.0) || !(next.z >= 0.0)) {
    throw DomainError("step left the nonnegative octant");
  }
  return next;
}

/// Upper corners of the invariant box: g0 <= x <= A, 0 <= y <= B, 0 <= z <= C.
struct DomainBounds {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

inline DomainBounds domain_bounds(const ModelParams& p) {
  const double radicand = p.r1 * p.r1 + 4.0 * p.r2 * (1.0 - p.d0);
  if (!(radicand >= 0.0)) {
    throw DomainError("r1^2 + 4*r2*(1-d0) < 0: glucose bound A is not real");
  }
  return {(p.r1 + std::sqrt(radicand)) / (2.0 * p.r2), (1.0 - p.g1) / p.c,
          (1.0 - p.g1) * p.k / (p.s1 * p.c)};
}

// Names of the admissibility conditions, in evaluation order.
namespace condition {
inline constexpr std::string_view kG1 = "0 < g1 < 1";
inline constexpr std::string_view kK = "0 < k <= 1";
inline constexpr std::string_view kD0 = "0 < d0 <= 1";
inline constexpr std::string_view kGlucoseBound = "g0/g1 <= A";
inline constexpr std::string_view kGrowth = "r1^2 <= 4*r2*d0";
// Second-fixed-point conditions, checked only in the critical regime.
inline constexpr std::string_view kX2Lower = "g1*r1/(2*r2) < g0";
inline constexpr std::string_view kX2Upper = "g0 < r1/(2*r2)";
inline constexpr std::string_view kS2Bound =
    "s2 <= d0*(r1-2*r2*g0)/(r2*(2*r2*g0-g1*r1))";
}  // namespace condition

enum class RegimeKind { Subcritical, Critical, Inadmissible };

inline std::string_view to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::Subcritical: return "subcritical";
    case RegimeKind::Critical: return "critical";
    case RegimeKind::Inadmissible: return "inadmissible";
  }
  return "unknown";
}

/// Whether the critical regime additionally places the second fixed point in
/// the invariant box. `failed` lists the sub-conditions that did not hold.
struct CriticalExtras {
  bool two_fixed_points = false;
  std::vector<std::string> failed;
};

struct Regime {
  RegimeKind kind = RegimeKind::Inadmissible;
  std::vector<std::string> violations;
  std::optional<CriticalExtras> critical_extras;

  bool admissible() const { return kind != RegimeKind::Inadmissible; }
  bool has_two_fixed_points() const {
    return kind == RegimeKind::Critical && critical_extras &&
           critical_extras->two_fixed_points;
  }
};

struct RegimeOptions {
  /// Relative tolerance for r1^2 == 4 r2 d0.
  double kappa = 1e-9;
};

inline bool growth_at_tangency(const ModelParams& p, double kappa) {
  const double lhs = p.r1 * p.r1;
  const double rhs = 4.0 * p.r2 * p.d0;
  return std::abs(lhs - rhs) <= kappa * std::max(lhs, rhs);
}

inline Regime classify_regime(const ModelParams& p, RegimeOptions opt = {}) {
  require_positive(p);
  Regime r;
  auto fail = [&](std::string_view name) { r.violations.emplace_back(name); };

  if (!(p.g1 > 0.0 && p.g1 < 1.0)) fail(condition::kG1);
  if (!(p.k > 0.0 && p.k <= 1.0)) fail(condition::kK);
  if (!(p.d0 > 0.0 && p.d0 <= 1.0)) fail(condition::kD0);

  const double radicand = p.r1 * p.r1 + 4.0 * p.r2 * (1.0 - p.d0);
  const bool glucose_ok =
      radicand >= 0.0 &&
      p.g0 <= p.g1 * (p.r1 + std::sqrt(radicand)) / (2.0 * p.r2);
  if (!glucose_ok) fail(condition::kGlucoseBound);

  const bool tangent = growth_at_tangency(p, opt.kappa);
  if (!tangent && !(p.r1 * p.r1 < 4.0 * p.r2 * p.d0)) fail(condition::kGrowth);

  if (!r.violations.empty()) {
    r.kind = RegimeKind::Inadmissible;
    return r;
  }
  if (!tangent) {
    r.kind = RegimeKind::Subcritical;
    return r;
  }

  r.kind = RegimeKind::Critical;
  CriticalExtras extras;
  const double x_star = p.r1 / (2.0 * p.r2);
  if (!(p.g1 * x_star < p.g0)) extras.failed.emplace_back(condition::kX2Lower);
  if (!(p.g0 < x_star)) extras.failed.emplace_back(condition::kX2Upper);
  // Division-free form of the s2 bound; denominators are positive once the two
  // strict inequalities above hold.
  const double lhs = p.s2 * p.r2 * (2.0 * p.r2 * p.g0 - p.g1 * p.r1);
  const double rhs = p.d0 * (p.r1 - 2.0 * p.r2 * p.g0);
  if (!(lhs <= rhs)) extras.failed.emplace_back(condition::kS2Bound);
  extras.two_fixed_points = extras.failed.empty();
  r.critical_extras = std::move(extras);
  return r;
}

/// Location of the interior equilibrium (x*, y*, z*) from its closed form.
/// Defined for any positive parameters; only meaningful as a fixed point when
/// r1^2 == 4 r2 d0.
inline State interior_equilibrium(const ModelParams& p) {
  const double xs = p.r1 / (2.0 * p.r2);
  const double ys = (p.g0 - p.g1 * xs) / (p.c * xs);
  const double zs = p.k * ys * (p.s2 + xs * xs) / (p.s1 * xs * xs);
  return {xs, ys, zs};
}

/// The boundary equilibrium (g0/g1, 0, 0).
inline State boundary_equilibrium(const ModelParams& p) {
  return {p.g0 / p.g1, 0.0, 0.0};
}

/// Membership tests for the invariant box and its two sub-regions, with the
/// bounds precomputed once per parameter set.
class Regions {
 public:
  explicit Regions(const ModelParams& p, RegimeOptions opt = {})
      : params_(p), bounds_(domain_bounds(p)), x_cap_(p.g0 / p.g1) {
    if (classify_regime(p, opt).has_two_fixed_points()) {
      z_star_ = interior_equilibrium(p).z;
    }
  }

  const DomainBounds& bounds() const { return bounds_; }
  std::optional<double> z_star() const { return z_star_; }
  bool has_omega2() const { return z_star_.has_value(); }

  bool omega(const State& s) const {
    return params_.g0 <= s.x && s.x <= bounds_.A && 0.0 <= s.y &&
           s.y <= bounds_.B && 0.0 <= s.z && s.z <= bounds_.C;
  }

  bool omega1(const State& s) const { return omega(s) && s.x <= x_cap_; }

  /// Throws PreconditionError unless the regime is critical with two fixed
  /// points.
  bool omega2(const State& s) const {
    if (!z_star_) {
      throw PreconditionError(
          "Omega2 requires the critical regime with two fixed points");
    }
    return omega1(s) && s.z < *z_star_;
  }

 private:
  ModelParams params_;
  DomainBounds bounds_;
  double x_cap_;
  std::optional<double> z_star_;
};

inline bool in_omega(const ModelParams& p, const State& s) {
  return Regions(p).omega(s);
}
inline bool in_omega1(const ModelParams& p, const State& s) {
  return Regions(p).omega1(s);
}
inline bool in_omega2(const ModelParams& p, const State& s) {
  return Regions(p).omega2(s);
}

}  // namespace topp
