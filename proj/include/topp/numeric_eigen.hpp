#pragma once

// Generic 3x3 eigenvalue solver used to cross-check the closed forms.

#include <algorithm>
#include <array>
#include <complex>

#include <Eigen/Eigenvalues>

namespace topp {

using Complex = std::complex<double>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Orders by real part, then imaginary part.
inline void sort_eigenvalues(std::array<Complex, 3>& ev) {
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

/// Eigenvalues via Hessenberg reduction and shifted QR (real Schur form).
inline std::array<Complex, 3> eigenvalues_numeric(const Matrix3& m) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m[i][j];
  Eigen::EigenSolver<Eigen::Matrix3d> solver(a, /*computeEigenvectors=*/false);
  std::array<Complex, 3> ev;
  for (int i = 0; i < 3; ++i) ev[i] = solver.eigenvalues()(i);
  sort_eigenvalues(ev);
  return ev;
}

}  // namespace topp
