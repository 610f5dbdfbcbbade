#include "doctest.h"

#include "infospec/random.hpp"

using namespace infospec;

TEST_CASE("instance generation is bitwise deterministic in the seed") {
  Rng a(42), b(42);
  const Matrix sa = random_state(2, a).matrix();
  const Matrix sb = random_state(2, b).matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(sa(i, j).real() == sb(i, j).real());
      CHECK(sa(i, j).imag() == sb(i, j).imag());
    }
  CHECK(sub_seed(7, "x", 3) == sub_seed(7, "x", 3));
  CHECK(sub_seed(7, "x", 3) != sub_seed(7, "x", 4));
  CHECK(sub_seed(7, "x", 3) != sub_seed(7, "y", 3));
}

TEST_CASE("cptp construction satisfies completeness") {
  for (int t = 0; t < 20; ++t) {
    Rng rng(sub_seed(31, "cptp", t));
    const int din = 2 + t % 3, dout = 2 + (t + 1) % 3;
    const QuantumChannel ch = random_cptp(din, dout, rng);
    Matrix comp = Matrix::Zero(din, din);
    for (const auto& k : ch.kraus()) comp += k.adjoint() * k;
    CHECK(max_abs(comp - Matrix::Identity(din, din)) <= 1e-10);
  }
}

TEST_CASE("lo-popescu maps are trace preserving") {
  const BipartitePureState phi2 = BipartitePureState::maximally_entangled(2);
  for (int t = 0; t < 20; ++t) {
    Rng rng(sub_seed(32, "lo-popescu", t));
    const LoPopescuMap map = random_lo_popescu(2, 2, 2 + t % 2, rng);
    Matrix comp = Matrix::Zero(2, 2);
    for (const auto& k : map.kraus_b) comp += k.adjoint() * k;
    CHECK(max_abs(comp - Matrix::Identity(2, 2)) <= 1e-10);
    const Matrix out = map.apply(phi2.density(), 2, 2);
    CHECK(out.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("unitaries, priors and commuting pairs are well formed") {
  for (int t = 0; t < 10; ++t) {
    Rng rng(sub_seed(33, "unitary", t));
    const Matrix u = random_unitary(3, rng);
    CHECK(max_abs(u * u.adjoint() - Matrix::Identity(3, 3)) < 1e-12);
    const RealVector p = random_prior(4, rng);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.minCoeff() >= 0.0);
    const CommutingPair pair = random_commuting_pair(2, rng);
    CHECK(max_abs(pair.rho.matrix() * pair.sigma.matrix() -
                  pair.sigma.matrix() * pair.rho.matrix()) < 1e-12);
    CHECK(pair.p.minCoeff() >= 0.1 - 1e-12);
    CHECK(pair.p.maxCoeff() <= 0.9 + 1e-12);
  }
}
