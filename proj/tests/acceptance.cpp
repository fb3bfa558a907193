// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "topp/topp.hpp"

using namespace topp;

namespace {

const State kOrbitA{0.5, 0.3, 0.016};
const State kOrbitB{0.5, 0.18, 0.016};
const State kU1{2.0 / 3.0, 0.0, 0.0};
const State kU2{0.5, 1.0 / 12.0, 0.015};

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Runs an orbit until it is within `tol` of `target` or the cap is hit.
std::size_t steps_to_reach(const ModelParams& p, State s, const State& target, double tol,
                           std::size_t cap, double& dist) {
  for (std::size_t n = 0; n <= cap; ++n) {
    dist = sup_distance(s, target);
    if (dist <= tol) return n;
    if (n < cap) s = step(p, s);
  }
  return cap + 1;
}

Outcome figure1() {
  Outcome o;
  std::ostringstream d;
  for (const State& s0 : {kOrbitA, kOrbitB}) {
    double dist = 0;
    const std::size_t n = steps_to_reach(figure1_params(), s0, kU1, 1e-6, 10'000, dist);
    o.ok = o.ok && n <= 10'000;
    d << "n=" << n << " dist=" << dist << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome figure2() {
  Outcome o;
  std::ostringstream d;
  double dist = 0;
  std::size_t n = steps_to_reach(figure2_params(), kOrbitA, kU1, 1e-6, 1'000'000, dist);
  o.ok = n <= 1'000'000;
  d << "to u1 n=" << n << " dist=" << dist << "; ";
  n = steps_to_reach(figure2_params(), kOrbitB, kU2, 1e-4, 1'000'000, dist);
  o.ok = o.ok && n <= 1'000'000;
  d << "to u2 n=" << n << " dist=" << dist;
  o.detail = d.str();
  return o;
}

Outcome fixed_point_forms() {
  const ModelParams p = figure2_params();
  const auto fps = fixed_points(p);
  Outcome o;
  if (fps.size() != 2) return {false, "expected two fixed points"};
  const State want[2] = {kU1, {0.5, 1.0 / 12.0, 3.0 / 200.0}};
  std::ostringstream d;
  d.precision(17);
  for (int i = 0; i < 2; ++i) {
    const double err = sup_distance(fps[i].location, want[i]);
    const double residual = sup_distance(evaluate(p, fps[i].location), fps[i].location);
    o.ok = o.ok && err <= 4 * std::numeric_limits<double>::epsilon() && residual <= 1e-12;
    d << to_string(fps[i].label) << " err=" << err << " residual=" << residual << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome stability() {
  Outcome o;
  std::ostringstream d;
  d.precision(17);
  const auto f1 = fixed_points(figure1_params());
  o.ok = f1.size() == 1 && f1[0].stability.kind == StabilityKind::Attracting;
  const auto f2 = fixed_points(figure2_params());
  if (f2.size() != 2) return {false, "fig2: expected two fixed points"};
  o.ok = o.ok && f2[0].stability.kind == StabilityKind::Attracting &&
         f2[1].stability.kind == StabilityKind::NonHyperbolic;
  const double modulus = std::sqrt(163.0 / 225.0);
  int unit = 0, paired = 0;
  for (const Complex& l : f2[1].eigenvalues) {
    if (std::abs(l - Complex(1.0)) <= 1e-12) ++unit;
    else if (std::abs(std::abs(l) - modulus) <= 1e-9) ++paired;
    d << "(" << l.real() << "," << l.imag() << ") ";
  }
  o.ok = o.ok && unit == 1 && paired == 2;
  d << "u2: " << describe(f2[1].stability);
  o.detail = d.str();
  return o;
}

Outcome invariance() {
  Outcome o;
  Rng rng(20240611);
  std::size_t checked = 0;
  for (int set = 0; set < 100; ++set) {
    const ModelParams p = sample_admissible(rng);
    VerifyOptions opt;
    opt.seed = 1000 + static_cast<std::uint64_t>(set);
    opt.samples = 10'000;
    for (Region r : {Region::Omega, Region::Omega1, Region::Omega2}) {
      const PropertyResult res = check_region_closure(p, r, opt);
      checked += res.checked;
      if (res.status == PropertyStatus::Fail) {
        return {false, "set " + std::to_string(set) + ": " + res.name + " " + res.detail};
      }
    }
  }
  o.detail = std::to_string(checked) + " states";
  return o;
}

Outcome sign_conditions() {
  Rng rng(31337);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = sample_critical(rng);
    const PropertyResult r = check_sign_conditions(p, {});
    if (r.status != PropertyStatus::Pass) return {false, r.detail};
  }
  return {true, "1000 sets"};
}

Outcome eigen_agreement() {
  Rng rng(4242);
  std::size_t points = 0;
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = sample_admissible(rng);
    const PropertyResult r = check_eigen_agreement(p, {}, 1e-10);
    points += r.checked;
    if (r.status != PropertyStatus::Pass) return {false, r.detail};
  }
  return {true, "100 sets, " + std::to_string(points) + " fixed points"};
}

Outcome period_absence() {
  for (const ModelParams& p : {figure1_params(), figure2_params()}) {
    VerifyOptions opt;
    opt.seed = 64;
    opt.period_samples = 1000;
    opt.pmax = 64;
    opt.period_tol = 1e-10;
    const PropertyResult r = check_period_absence(p, opt);
    if (r.status != PropertyStatus::Pass || r.checked != 1000) return {false, r.detail};
  }
  return {true, "2 x 1000 states"};
}

Outcome jacobian_fd() {
  Rng rng(2718);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = sample_admissible(rng);
    const State s = sample_omega(rng, p);
    const Matrix3 j = jacobian(p, s);
    for (int col = 0; col < 3; ++col) {
      State lo = s, hi = s;
      double* lo_c[3] = {&lo.x, &lo.y, &lo.z};
      double* hi_c[3] = {&hi.x, &hi.y, &hi.z};
      *lo_c[col] -= h;
      *hi_c[col] += h;
      const State a = evaluate(p, hi), b = evaluate(p, lo);
      const double diff[3] = {(a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h),
                              (a.z - b.z) / (2 * h)};
      for (int row = 0; row < 3; ++row) {
        worst = std::max(worst, std::abs(diff[row] - j[row][col]));
      }
    }
  }
  std::ostringstream d;
  d << "max entry error " << worst;
  return {worst <= 1e-6, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = no runtime bound
  };
  const std::vector<Criterion> criteria = {
      {"figure1_reproduction", figure1, 1.0},
      {"figure2_reproduction", figure2, 10.0},
      {"fixed_point_closed_forms", fixed_point_forms, 0.0},
      {"stability_classification", stability, 0.0},
      {"region_invariance", invariance, 30.0},
      {"sign_conditions", sign_conditions, 0.0},
      {"eigenvalue_agreement", eigen_agreement, 0.0},
      {"period_absence", period_absence, 0.0},
      {"jacobian_finite_differences", jacobian_fd, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.ok = false;
      o.detail += " (over " + std::to_string(c.budget_s) + " s budget)";
    }
    failures += !o.ok;
    std::printf("%s %s  [%.3f s]  %s\n", o.ok ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
