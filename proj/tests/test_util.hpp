#pragma once

#include "infospec/random.hpp"
#include "infospec/states.hpp"

namespace test_util {

using namespace infospec;

// rho = 1/2 |0><0| + 1/2 |+><+|, the running non-commuting qubit example
inline Matrix fig1_state() {
  Matrix m(2, 2);
  m << 0.75, 0.25, 0.25, 0.25;
  return m;
}

// independent oracle: eigenvalues of a 2x2 Hermitian matrix from the
// characteristic polynomial
inline std::pair<double, double> eig2_oracle(const Matrix& m) {
  const double tr = m.trace().real();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

inline Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline Vector ket(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline Vector plus_ket() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

// frozen high-precision oracle values (mpmath, 40 digits)
inline constexpr double kFig1Lam1 = 0.853553390593273762;
inline constexpr double kFig1S = 0.600876036692856101;
inline constexpr double kFig1V = 0.808423901393146249;
inline constexpr double kFig1SqrtV = 0.899123963307143899;
inline constexpr double kPhiInv005 = -1.64485362695147271;
inline constexpr double kPhiInv01 = -1.28155156554460047;
inline constexpr double kPhiInv025 = -0.674489750196081743;
inline constexpr double kFig1SourceB01 = 1.15227372279493617;   // -sqrt(V) PhiInv(0.1)
inline constexpr double kH2_03 = 0.881290899230692618;          // binary entropy of 0.3
inline constexpr double kV_73 = 0.313791078665564646;           // V for spectrum (0.7, 0.3)
inline constexpr double kSqrtV_73 = 0.560170579971462484;
inline constexpr double kDistillB_73_01 = -0.717887483734454561;
inline constexpr double kGapCoeff_73_005 = 1.84279722035514013;
inline constexpr double kRelEnt_34_12 = 0.188721875540867136;   // D(diag(3/4,1/4)||I/2)

}  // namespace test_util
