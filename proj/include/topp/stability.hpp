#pragma once

// Fixed points of the map, the Jacobian, closed-form eigenvalues and the
// resulting stability type.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "topp/errors.hpp"
#include "topp/model.hpp"
#include "topp/numeric_eigen.hpp"
#include "topp/quadratic.hpp"

namespace topp {

/// Tolerance on | |l| - 1 | for deciding that an eigenvalue sits on the unit
/// circle.
inline constexpr double kUnitCircleTol = 1e-12;

/// Largest accepted sup-norm residual |W(u) - u| for a reported fixed point.
inline constexpr double kFixedPointResidualTol = 1e-12;

enum class StabilityKind { Attracting, Repelling, Saddle, NonHyperbolic };

inline std::string_view to_string(StabilityKind k) {
  switch (k) {
    case StabilityKind::Attracting: return "attracting";
    case StabilityKind::Repelling: return "repelling";
    case StabilityKind::Saddle: return "saddle";
    case StabilityKind::NonHyperbolic: return "non-hyperbolic";
  }
  return "unknown";
}

struct StabilityClass {
  StabilityKind kind = StabilityKind::NonHyperbolic;
  /// "semi-attracting" when exactly one eigenvalue is on the unit circle and
  /// the other two are inside; empty otherwise.
  std::string detail;

  friend bool operator==(const StabilityClass&, const StabilityClass&) = default;
};

inline std::string describe(const StabilityClass& s) {
  std::string out(to_string(s.kind));
  if (!s.detail.empty()) out += " (" + s.detail + ")";
  return out;
}

/// Classifies a fixed point from the moduli of its Jacobian eigenvalues.
inline StabilityClass classify_eigenvalues(std::span<const Complex> ev,
                                           double unit_tol = kUnitCircleTol) {
  int inside = 0, on = 0, outside = 0;
  for (const Complex& l : ev) {
    const double m = std::abs(l);
    if (std::abs(m - 1.0) <= unit_tol) ++on;
    else if (m < 1.0) ++inside;
    else ++outside;
  }
  const int n = static_cast<int>(ev.size());
  if (on > 0) {
    StabilityClass s{StabilityKind::NonHyperbolic, {}};
    if (on == 1 && inside == n - 1) s.detail = "semi-attracting";
    return s;
  }
  if (inside == n) return {StabilityKind::Attracting, {}};
  if (outside == n) return {StabilityKind::Repelling, {}};
  return {StabilityKind::Saddle, {}};
}

enum class FixedPointLabel { u1, u2 };

inline std::string_view to_string(FixedPointLabel l) {
  return l == FixedPointLabel::u1 ? "u1" : "u2";
}

/// u1 (no insulin, no beta-cells) is the diseased state; u2 the healthy one.
inline std::string_view biological_label(FixedPointLabel l) {
  return l == FixedPointLabel::u1 ? "pathological" : "physiological";
}

struct FixedPointRecord {
  State location;
  FixedPointLabel label = FixedPointLabel::u1;
  std::array<Complex, 3> eigenvalues;  // sorted by (re, im)
  StabilityClass stability;
  bool in_region = false;
};

/// Jacobian of the map at s.
inline Matrix3 jacobian(const ModelParams& p, const State& s) {
  const double x2 = s.x * s.x;
  const double hill_den = p.s2 + x2;
  return {{
      {1.0 - p.g1 - p.c * s.y, -p.c * s.x, 0.0},
      {2.0 * p.s1 * p.s2 * s.x * s.z / (hill_den * hill_den), 1.0 - p.k,
       p.s1 * x2 / hill_den},
      {(p.r1 - 2.0 * p.r2 * s.x) * s.z, 0.0, 1.0 - p.d0 + p.r1 * s.x - p.r2 * x2},
  }};
}

/// Eigenvalues at u1 = (g0/g1, 0, 0): (1-g1, 1-k, 1-d0+r1 g0/g1 - r2 (g0/g1)^2).
inline std::array<double, 3> eigenvalues_u1(const ModelParams& p) {
  const double ratio = p.g0 / p.g1;
  return {1.0 - p.g1, 1.0 - p.k,
          1.0 - p.d0 + p.r1 * ratio - p.r2 * ratio * ratio};
}

/// Coefficients of the quadratic factor of the characteristic polynomial at
/// u2, which factors as (l - 1)(l^2 + B* l + C*).
struct CharQuadratic {
  double b_star = 0.0;
  double c_star = 0.0;
};

/// B* and C* evaluated at the interior equilibrium without any regime check.
inline CharQuadratic char_quadratic_closed_form(const ModelParams& p) {
  const State u2 = interior_equilibrium(p);
  const double ratio = p.g0 / u2.x;
  return {p.k + ratio - 2.0,
          (1.0 - ratio) * (1.0 - p.k) +
              2.0 * p.s2 * p.k * p.c * u2.y / (p.s2 + u2.x * u2.x)};
}

inline CharQuadratic char_quadratic_u2(const ModelParams& p,
                                       RegimeOptions opt = {}) {
  if (!classify_regime(p, opt).has_two_fixed_points()) {
    throw PreconditionError(
        "char_quadratic_u2 requires the critical regime with two fixed points");
  }
  return char_quadratic_closed_form(p);
}

inline std::array<Complex, 3> eigenvalues_u2(const ModelParams& p,
                                             RegimeOptions opt = {}) {
  const CharQuadratic q = char_quadratic_u2(p, opt);
  const auto roots = quadratic_roots(q.b_star, q.c_star);
  std::array<Complex, 3> ev{Complex(1.0), roots[0], roots[1]};
  sort_eigenvalues(ev);
  return ev;
}

namespace detail {

inline FixedPointRecord make_record(const ModelParams& p, FixedPointLabel label,
                                    const State& loc,
                                    std::array<Complex, 3> ev) {
  const double residual = sup_distance(evaluate(p, loc), loc);
  if (!(residual <= kFixedPointResidualTol)) {
    std::ostringstream msg;
    msg << "fixed point " << to_string(label) << " has residual " << residual;
    throw DomainError(msg.str());
  }
  sort_eigenvalues(ev);
  FixedPointRecord r;
  r.location = loc;
  r.label = label;
  r.eigenvalues = ev;
  r.stability = classify_eigenvalues(r.eigenvalues);
  r.in_region = Regions(p).omega(loc);
  return r;
}

}  // namespace detail

/// Fixed points inside the invariant box, u1 first.
inline std::vector<FixedPointRecord> fixed_points(const ModelParams& p,
                                                  RegimeOptions opt = {}) {
  const Regime regime = classify_regime(p, opt);
  if (!regime.admissible()) {
    throw PreconditionError("fixed_points requires admissible parameters");
  }
  std::vector<FixedPointRecord> out;
  const auto l1 = eigenvalues_u1(p);
  out.push_back(detail::make_record(p, FixedPointLabel::u1,
                                    boundary_equilibrium(p),
                                    {Complex(l1[0]), Complex(l1[1]),
                                     Complex(l1[2])}));
  if (regime.has_two_fixed_points()) {
    out.push_back(detail::make_record(p, FixedPointLabel::u2,
                                      interior_equilibrium(p),
                                      eigenvalues_u2(p, opt)));
  }
  return out;
}

/// Notes about equilibria that exist algebraically but are not reported.
inline std::vector<std::string> fixed_point_diagnostics(const ModelParams& p,
                                                        RegimeOptions opt = {}) {
  std::vector<std::string> notes;
  const Regime regime = classify_regime(p, opt);
  if (regime.kind != RegimeKind::Critical || regime.has_two_fixed_points()) {
    return notes;
  }
  const State u2 = interior_equilibrium(p);
  std::ostringstream msg;
  msg.precision(17);
  msg << "u2 = (" << u2.x << ", " << u2.y << ", " << u2.z
      << ") lies outside Omega; failed:";
  for (const auto& f : regime.critical_extras->failed) msg << " [" << f << "]";
  notes.push_back(msg.str());
  return notes;
}

/// Stability type of a record produced by fixed_points().
inline StabilityClass classify_fixed_point(const ModelParams& p,
                                           const FixedPointRecord& fp,
                                           RegimeOptions opt = {}) {
  if (fp.label == FixedPointLabel::u1) {
    const auto l = eigenvalues_u1(p);
    const std::array<Complex, 3> ev{Complex(l[0]), Complex(l[1]),
                                    Complex(l[2])};
    return classify_eigenvalues(ev);
  }
  return classify_eigenvalues(eigenvalues_u2(p, opt));
}

}  // namespace topp
