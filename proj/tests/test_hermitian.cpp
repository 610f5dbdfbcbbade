#include "doctest.h"

#include "infospec/hermitian.hpp"
#include "infospec/random.hpp"
#include "test_util.hpp"

using namespace infospec;
using namespace test_util;

TEST_CASE("eig_decompose on diagonal and identity inputs") {
  EigenSystem es = eig_decompose(diag2(0.75, 0.25));
  CHECK(es.values(0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(es.values(1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(max_abs(es.vectors.cwiseAbs() - Matrix::Identity(2, 2)) < 1e-12);

  const int d = 5;
  EigenSystem id = eig_decompose(Matrix(Matrix::Identity(d, d) / d));
  for (int i = 0; i < d; ++i) CHECK(id.values(i) == doctest::Approx(1.0 / d).epsilon(1e-14));
  CHECK(id.group_start.size() == 2);  // one degeneracy group
}

TEST_CASE("eig_decompose matches the 2x2 characteristic-polynomial oracle") {
  const Matrix rho = fig1_state();
  const auto [l1, l2] = eig2_oracle(rho);
  CHECK(l1 == doctest::Approx(kFig1Lam1).epsilon(1e-15));
  EigenSystem es = eig_decompose(rho);
  CHECK(es.values(0) == doctest::Approx(l1).epsilon(1e-13));
  CHECK(es.values(1) == doctest::Approx(l2).epsilon(1e-13));
  CHECK(max_abs(es.reconstruct() - rho) < 1e-10);
}

TEST_CASE("eig_decompose reconstruction on random instances") {
  for (int t = 0; t < 50; ++t) {
    Rng rng(sub_seed(11, "eig-recon", t));
    const int d = 2 + t % 5;
    Matrix g = random_ginibre(d, d, rng);
    Matrix h = g + g.adjoint();
    EigenSystem es = eig_decompose(h);
    CHECK(max_abs(es.reconstruct() - 0.5 * (h + h.adjoint())) <=
          1e-10 * std::max(1.0, max_abs(h)));
    for (int i = 1; i < d; ++i) CHECK(es.values(i) <= es.values(i - 1) + 1e-14);
  }
}

TEST_CASE("hermitian construction symmetrizes and rejects") {
  Matrix m(2, 2);
  m << 1.0, Complex(0.5, 1e-11), Complex(0.5, 0.0), 2.0;
  HermitianOperator h(m);
  CHECK(max_abs(h.matrix() - h.matrix().adjoint()) < 1e-15);

  Matrix bad(2, 2);
  bad << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;  // residue ~1
  CHECK_THROWS_AS(HermitianOperator{bad}, InputError);

  Matrix nan_m = Matrix::Zero(2, 2);
  nan_m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianOperator{nan_m}, InputError);
}

TEST_CASE("compare_projector diagonal examples") {
  const Matrix a = diag2(2.0, 0.0), b = diag2(1.0, 1.0);
  const Matrix p = compare_projector(a, b, Cmp::GreaterEqual);
  CHECK(max_abs(p - diag2(1.0, 0.0)) < 1e-12);

  // tie case: zero eigenvalues join the non-strict side
  const Matrix q = compare_projector(a, a, Cmp::GreaterEqual);
  CHECK(max_abs(q - Matrix::Identity(2, 2)) < 1e-12);
  const Matrix qs = compare_projector(a, a, Cmp::Greater);
  CHECK(max_abs(qs) < 1e-12);
}

TEST_CASE("compare_projector structural properties on random pairs") {
  for (int t = 0; t < 60; ++t) {
    Rng rng(sub_seed(12, "projector", t));
    const int d = 3;
    const Matrix a = random_positive(d, rng).matrix();
    const Matrix b = random_positive(d, rng).matrix();
    const Matrix p = compare_projector(a, b, Cmp::GreaterEqual);
    CHECK(max_abs(p * p - p) < 1e-10);
    CHECK(max_abs(p * (a - b) - (a - b) * p) < 1e-10);
    const Matrix pl = compare_projector(a, b, Cmp::Less);
    CHECK(max_abs(p + pl - Matrix::Identity(d, d)) < 1e-10);
    // brute-force oracle: positive-part trace from the eigendecomposition
    EigenSystem es = eig_decompose(Matrix(a - b));
    double pos = 0.0;
    for (int i = 0; i < d; ++i) pos += std::max(0.0, es.values(i));
    CHECK((p * (a - b)).trace().real() == doctest::Approx(pos).epsilon(1e-10));
  }
  CHECK_THROWS_AS(compare_projector(Matrix::Identity(2, 2), Matrix::Identity(3, 3), Cmp::Greater),
                  DimensionMismatch);
}

TEST_CASE("partial_trace examples") {
  const BipartitePureState phi2 = BipartitePureState::maximally_entangled(2);
  CHECK(max_abs(phi2.reduced(Subsystem::A) - Matrix::Identity(2, 2) / 2.0) < 1e-12);

  Rng rng(77);
  const Matrix ra = random_state(2, rng).matrix();
  const Matrix rb = random_state(3, rng).matrix();
  const Matrix prod = kron(ra, rb);
  CHECK(max_abs(partial_trace(prod, 2, 3, Subsystem::B) - rb) < 1e-12);
  CHECK(max_abs(partial_trace(prod, 2, 3, Subsystem::A) - ra) < 1e-12);
  CHECK_THROWS_AS(partial_trace(prod, 4, 2, Subsystem::A), DimensionMismatch);

  // Schmidt-symmetry oracle: both marginals of a pure state share a spectrum
  for (int t = 0; t < 20; ++t) {
    Rng r2(sub_seed(13, "pt-sym", t));
    const BipartitePureState psi = random_pure_bipartite(2, 2, r2);
    const RealVector ea = eig_decompose(psi.reduced(Subsystem::A)).values;
    const RealVector eb = eig_decompose(psi.reduced(Subsystem::B)).values;
    CHECK(max_abs(Matrix(ea.asDiagonal()) - Matrix(eb.asDiagonal())) < 1e-10);
  }
}

TEST_CASE("positive part and support helpers") {
  CHECK(positive_part_trace(diag2(0.25, -0.25)) == doctest::Approx(0.25).epsilon(1e-14));
  const Matrix s = support_projector(diag2(0.5, 0.0));
  CHECK(max_abs(s - diag2(1.0, 0.0)) < 1e-12);
  const Matrix r = sqrt_psd(diag2(4.0, 9.0));
  CHECK(max_abs(r - diag2(2.0, 3.0)) < 1e-12);
  const Matrix ir = inv_sqrt_psd(diag2(4.0, 0.0));
  CHECK(max_abs(ir - diag2(0.5, 0.0)) < 1e-12);
}
