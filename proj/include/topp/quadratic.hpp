#pragma once

// Root location of the monic quadratic F(l) = l^2 + b*l + c relative to the
// unit circle, decided from the signs of F(1), F(-1) and c - 1.

#include <array>
#include <cmath>
#include <complex>
#include <string_view>

namespace topp {

using Complex = std::complex<double>;

/// Where the two roots sit relative to the unit circle.
///
///   F(1) > 0:  i1  both |l| < 1              F(-1) > 0, C < 1
///              i2  one root -1, other not    F(-1) = 0, B != 2
///              i3  |l1| < 1 < |l2|           F(-1) < 0
///              i4  both |l| > 1              F(-1) > 0, C > 1
///              i5  conjugate pair, |l| = 1   -2 < B < 2, C = 1
///              i6  double root -1            F(-1) = 0, B = 2
///   F(1) = 0:  one root is 1; the other has |l| =, <, > 1 as |C| =, <, > 1
///   F(1) < 0:  one root in (1, inf); the other is < -1, = -1 (iii1_lt,
///              iii1_eq) or in (-1, 1) (iii2) as F(-1) <, =, > 0
///
/// The published statement of i6 reads "B = 2"; B is the linear coefficient.
enum class QuadraticCase {
  i1, i2, i3, i4, i5, i6,
  ii_eq, ii_lt, ii_gt,
  iii1_lt, iii1_eq, iii2,
};

inline std::string_view to_string(QuadraticCase c) {
  switch (c) {
    case QuadraticCase::i1: return "i1";
    case QuadraticCase::i2: return "i2";
    case QuadraticCase::i3: return "i3";
    case QuadraticCase::i4: return "i4";
    case QuadraticCase::i5: return "i5";
    case QuadraticCase::i6: return "i6";
    case QuadraticCase::ii_eq: return "ii_eq";
    case QuadraticCase::ii_lt: return "ii_lt";
    case QuadraticCase::ii_gt: return "ii_gt";
    case QuadraticCase::iii1_lt: return "iii1_lt";
    case QuadraticCase::iii1_eq: return "iii1_eq";
    case QuadraticCase::iii2: return "iii2";
  }
  return "unknown";
}

struct QuadraticSigns {
  double f_plus_one = 0.0;   // F(1)
  double f_minus_one = 0.0;  // F(-1)
  double c_minus_one = 0.0;  // C - 1
};

struct QuadraticRootCase {
  QuadraticCase case_id = QuadraticCase::i1;
  std::array<Complex, 2> roots;
  QuadraticSigns signs;
};

/// Absolute tolerance for the boundary equalities F(1)=0, F(-1)=0, C=1, B=2.
inline constexpr double kQuadraticEqualityTol = 1e-12;

/// Roots of l^2 + b*l + c. Real roots use the cancellation-free form; a
/// complex pair is returned as (re - i*im, re + i*im).
inline std::array<Complex, 2> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) return {Complex(0.0), Complex(0.0)};
    const double r1 = q;
    const double r2 = c / q;
    return r1 <= r2 ? std::array{Complex(r1), Complex(r2)}
                    : std::array{Complex(r2), Complex(r1)};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {Complex(re, -im), Complex(re, im)};
}

inline QuadraticRootCase classify_quadratic(double b, double c) {
  constexpr double tol = kQuadraticEqualityTol;
  QuadraticRootCase out;
  out.signs = {1.0 + b + c, 1.0 - b + c, c - 1.0};
  out.roots = quadratic_roots(b, c);

  const double f1 = out.signs.f_plus_one;
  const double fm1 = out.signs.f_minus_one;
  const bool f1_zero = std::abs(f1) <= tol;
  const bool fm1_zero = std::abs(fm1) <= tol;

  if (f1_zero) {
    const double mag = std::abs(c);
    if (std::abs(mag - 1.0) <= tol) out.case_id = QuadraticCase::ii_eq;
    else if (mag < 1.0) out.case_id = QuadraticCase::ii_lt;
    else out.case_id = QuadraticCase::ii_gt;
  } else if (f1 > 0.0) {
    if (fm1_zero) {
      out.case_id = std::abs(b - 2.0) <= tol ? QuadraticCase::i6
                                             : QuadraticCase::i2;
    } else if (fm1 < 0.0) {
      out.case_id = QuadraticCase::i3;
    } else if (std::abs(c - 1.0) <= tol) {
      // F(1) > 0 and F(-1) > 0 already force -2 < b < 2.
      out.case_id = QuadraticCase::i5;
    } else if (c < 1.0) {
      out.case_id = QuadraticCase::i1;
    } else {
      out.case_id = QuadraticCase::i4;
    }
  } else {
    if (fm1_zero) out.case_id = QuadraticCase::iii1_eq;
    else if (fm1 < 0.0) out.case_id = QuadraticCase::iii1_lt;
    else out.case_id = QuadraticCase::iii2;
  }
  return out;
}

}  // namespace topp
