#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "topp/quadratic.hpp"

namespace topp {
namespace {

// Roots of l^2 + b l + c checked through Vieta's relations rather than the
// quadratic formula.
void expect_roots_valid(double b, double c, const std::array<Complex, 2>& r) {
  EXPECT_NEAR(std::abs(r[0] + r[1] + b), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[0] * r[1] - c), 0.0, 1e-12);
}

TEST(ClassifyQuadratic, CriticalFigureCharacteristicFactor) {
  const double b = -1.7, c = 163.0 / 225.0;
  const QuadraticRootCase q = classify_quadratic(b, c);
  EXPECT_EQ(q.case_id, QuadraticCase::i1);
  expect_roots_valid(b, c, q.roots);
  // Complex pair with modulus sqrt(C*).
  EXPECT_NE(q.roots[0].imag(), 0.0);
  EXPECT_NEAR(std::abs(q.roots[0]), 0.85114302232024698, 1e-12);
  EXPECT_NEAR(std::abs(q.roots[1]), 0.85114302232024698, 1e-12);
  EXPECT_NEAR(q.roots[1].imag(), 0.044095855184409843, 1e-12);
}

TEST(ClassifyQuadratic, UnitCirclePair) {
  const QuadraticRootCase q = classify_quadratic(0.0, 1.0);
  EXPECT_EQ(q.case_id, QuadraticCase::i5);
  EXPECT_EQ(q.roots[0], Complex(0.0, -1.0));
  EXPECT_EQ(q.roots[1], Complex(0.0, 1.0));
}

TEST(ClassifyQuadratic, OneRootBeyondOneOtherInside) {
  const QuadraticRootCase q = classify_quadratic(-3.0, 1.0);
  EXPECT_EQ(q.case_id, QuadraticCase::iii2);
  EXPECT_EQ(q.signs.f_plus_one, -1.0);
  EXPECT_EQ(q.signs.f_minus_one, 5.0);
  EXPECT_NEAR(q.roots[0].real(), 0.38196601125010515, 1e-15);
  EXPECT_NEAR(q.roots[1].real(), 2.6180339887498949, 1e-15);
}

struct CaseExample {
  double b, c;
  QuadraticCase expected;
};

class EveryCase : public ::testing::TestWithParam<CaseExample> {};

TEST_P(EveryCase, Classifies) {
  const auto& e = GetParam();
  const QuadraticRootCase q = classify_quadratic(e.b, e.c);
  EXPECT_EQ(q.case_id, e.expected) << to_string(q.case_id);
  expect_roots_valid(e.b, e.c, q.roots);
}

INSTANTIATE_TEST_SUITE_P(
    AllCases, EveryCase,
    ::testing::Values(CaseExample{-1.7, 163.0 / 225.0, QuadraticCase::i1},
                      CaseExample{0.5, -0.5, QuadraticCase::i2},    // -1, 0.5
                      CaseExample{3.0, 1.0, QuadraticCase::i3},     // -2.62, -0.38
                      CaseExample{0.0, 4.0, QuadraticCase::i4},     // +-2i
                      CaseExample{0.0, 1.0, QuadraticCase::i5},     // +-i
                      CaseExample{2.0, 1.0, QuadraticCase::i6},     // -1, -1
                      CaseExample{-2.0, 1.0, QuadraticCase::ii_eq}, // 1, 1
                      CaseExample{-1.5, 0.5, QuadraticCase::ii_lt}, // 1, 0.5
                      CaseExample{-3.0, 2.0, QuadraticCase::ii_gt}, // 1, 2
                      CaseExample{0.0, -4.0, QuadraticCase::iii1_lt},  // 2, -2
                      CaseExample{-1.0, -2.0, QuadraticCase::iii1_eq}, // 2, -1
                      CaseExample{-3.0, 1.0, QuadraticCase::iii2}));

// Modulus claims of each case, re-derived from the returned roots.
bool claims_hold(const QuadraticRootCase& q, double tol) {
  double m0 = std::abs(q.roots[0]);
  double m1 = std::abs(q.roots[1]);
  if (m0 > m1) std::swap(m0, m1);
  const auto is = [&](const Complex& z, double v) { return std::abs(z - v) <= tol; };
  const auto has = [&](double v) { return is(q.roots[0], v) || is(q.roots[1], v); };
  const auto other = [&](double v) {
    return is(q.roots[0], v) ? q.roots[1] : q.roots[0];
  };
  switch (q.case_id) {
    case QuadraticCase::i1: return m1 < 1.0 + tol;
    case QuadraticCase::i2: return has(-1.0);
    case QuadraticCase::i3: return m0 < 1.0 + tol && m1 > 1.0 - tol;
    case QuadraticCase::i4: return m0 > 1.0 - tol;
    case QuadraticCase::i5:
      return std::abs(m0 - 1.0) <= tol && std::abs(m1 - 1.0) <= tol;
    case QuadraticCase::i6: return is(q.roots[0], -1.0) && is(q.roots[1], -1.0);
    case QuadraticCase::ii_eq: return has(1.0) && std::abs(std::abs(other(1.0)) - 1.0) <= tol;
    case QuadraticCase::ii_lt: return has(1.0) && std::abs(other(1.0)) < 1.0 + tol;
    case QuadraticCase::ii_gt: return has(1.0) && std::abs(other(1.0)) > 1.0 - tol;
    case QuadraticCase::iii1_lt:
      return q.roots[1].real() > 1.0 - tol && q.roots[0].real() < -1.0 + tol;
    case QuadraticCase::iii1_eq:
      return q.roots[1].real() > 1.0 - tol && is(q.roots[0], -1.0);
    case QuadraticCase::iii2:
      return q.roots[1].real() > 1.0 - tol && std::abs(q.roots[0].real()) < 1.0 + tol;
  }
  return false;
}

TEST(ClassifyQuadraticProperty, CaseLabelsMatchRootModuli) {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  for (int i = 0; i < 200000; ++i) {
    const double b = coef(rng), c = coef(rng);
    const QuadraticRootCase q = classify_quadratic(b, c);
    ASSERT_TRUE(claims_hold(q, 1e-10))
        << "b=" << b << " c=" << c << " case=" << to_string(q.case_id);
    // Sign triple agrees with the label.
    const double f1 = q.signs.f_plus_one;
    if (q.case_id <= QuadraticCase::i6) ASSERT_GT(f1, 0.0);
    else if (q.case_id <= QuadraticCase::ii_gt) ASSERT_LE(std::abs(f1), kQuadraticEqualityTol);
    else ASSERT_LT(f1, 0.0);
    if (q.case_id == QuadraticCase::i1) {
      ASSERT_GT(q.signs.f_minus_one, 0.0);
      ASSERT_LT(q.signs.c_minus_one, 0.0);
    }
  }
}

TEST(ClassifyQuadraticProperty, BoundaryFamiliesAreTotal) {
  // Exactly on F(1) = 0: c = -1 - b.
  for (double b = -4.0; b <= 2.0; b += 0.125) {
    const QuadraticRootCase q = classify_quadratic(b, -1.0 - b);
    ASSERT_TRUE(q.case_id == QuadraticCase::ii_eq || q.case_id == QuadraticCase::ii_lt ||
                q.case_id == QuadraticCase::ii_gt);
    ASSERT_TRUE(claims_hold(q, 1e-10)) << "b=" << b;
  }
}

}  // namespace
}  // namespace topp
