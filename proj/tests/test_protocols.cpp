#include "doctest.h"

#include "infospec/protocols.hpp"
#include "test_util.hpp"

using namespace infospec;
using namespace test_util;

TEST_CASE("majorization certificates") {
  RealVector flat(2), pure(2);
  flat << 0.5, 0.5;
  pure << 1.0, 0.0;
  CHECK(majorization_check(flat, pure).valid);
  const MajorizationCertificate bad = majorization_check(pure, flat);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.partial_sums_ok[0]);

  RealVector unsorted(2);
  unsorted << 0.3, 0.7;
  CHECK_THROWS_AS(majorization_check(unsorted, pure), InputError);
}

TEST_CASE("visible code on simple sources") {
  // rank-one source compresses to one dimension at perfect fidelity
  RealVector one(1);
  one << 1.0;
  const PureStateEnsemble single(one, {ket(2, 0)});
  const CodeRecord rec = visible_code(single, 0.25);
  CHECK(rec.m == 1);
  CHECK(rec.value == doctest::Approx(1.0).epsilon(1e-12));

  // the running two-state ensemble
  RealVector p(2);
  p << 0.5, 0.5;
  const PureStateEnsemble ens(p, {ket(2, 0), plus_ket()});
  const CodeRecord fig = visible_code(ens, 0.2);
  CHECK(fig.m >= 1);
  CHECK(fig.m <= 2);
  CHECK(fig.value >= 0.8 - 1e-9);
  // Ky-Fan: at most the sum of the M largest eigenvalues of the average state
  EigenSystem es = eig_decompose(ens.average());
  double top = 0.0;
  for (long i = 0; i < fig.m; ++i) top += es.values(i);
  CHECK(fig.value <= top + 1e-10);
}

TEST_CASE("visible code flags signals orthogonal to the code space") {
  RealVector p(2);
  p << 0.999, 0.001;
  const PureStateEnsemble ens(p, {ket(2, 0), ket(2, 1)});
  const CodeRecord rec = visible_code(ens, 0.5);
  CHECK(rec.m == 1);
  REQUIRE(rec.junk_signals.size() == 1);
  CHECK(rec.junk_signals[0] == 1);
  CHECK(rec.value >= 0.5 - 1e-9);
}

TEST_CASE("blind code achievability") {
  const CodeRecord pure = blind_code(DensityOperator::pure(ket(2, 0)), 0.25);
  CHECK(pure.m == 1);
  CHECK(pure.value == doctest::Approx(1.0).epsilon(1e-12));

  const DensityOperator mixed(Matrix(Matrix::Identity(2, 2) / 2), TraceClass::Normalized);
  const CodeRecord rec = blind_code(mixed, 0.5);
  CHECK(rec.value >= 0.5 - 1e-9);
  // entanglement fidelity never beats the Ky-Fan cap either
  EigenSystem es = eig_decompose(mixed.matrix());
  double top = 0.0;
  for (long i = 0; i < rec.m && i < 2; ++i) top += es.values(i);
  CHECK(rec.value <= top + 1e-10);
}

TEST_CASE("concentration on flat input with enough copies") {
  // sixteen-dimensional maximally entangled input leaves room for the slack
  const BipartitePureState mes = BipartitePureState::maximally_entangled(16);
  const ConcentrationOutcome outc = concentrate(mes, 0.3, 0.1);
  CHECK(outc.record.p_fail == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(outc.record.m >= 1);
  CHECK(outc.certificate.valid);
  // all partial sums of the flat post-measurement spectrum sit inside k/M
  for (bool ok : outc.certificate.partial_sums_ok) CHECK(ok);
}

TEST_CASE("concentration failure paths") {
  // a single copy of a weak state cannot emit one ebit at these thresholds
  RealVector lam(2);
  lam << 0.7, 0.3;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  CHECK_THROWS_AS(concentrate(psi, 0.3, 0.1), ProtocolFailure);
  CHECK_THROWS_AS(concentrate(BipartitePureState::maximally_entangled(2), 0.3, 0.1),
                  ProtocolFailure);
  CHECK_THROWS_AS(concentrate(psi, 0.3, 0.5), InputError);  // eta must stay below eps
}

TEST_CASE("concentration on tensor copies meets the bound") {
  RealVector lam(2);
  lam << 0.7, 0.3;
  // five copies: Schmidt spectrum is the 5-fold product distribution
  RealVector lam5(32);
  for (int k = 0; k < 32; ++k) {
    double v = 1.0;
    for (int b = 0; b < 5; ++b) v *= (k >> b) & 1 ? 0.3 : 0.7;
    lam5(k) = v;
  }
  std::sort(lam5.data(), lam5.data() + 32, std::greater<double>());
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam5);
  const ConcentrationOutcome outc = concentrate(psi, 0.3, 0.1);
  CHECK(outc.record.p_fail <= 0.3 + 1e-12);
  CHECK(outc.record.m >= 1);
  CHECK(outc.certificate.valid);
  CHECK(outc.record.delta_rounding >= -1e-12);
  // theorem lower bound with the protocol's own rounding correction
  const Matrix rho_a = psi.reduced(Subsystem::A);
  const double lower =
      -info_spectrum_divergence(rho_a, Matrix::Identity(32, 32), 0.2, Direction::Overline).gamma +
      std::log2(0.1) + std::log2(0.7) - outc.record.delta_rounding;
  CHECK(std::log2(static_cast<double>(outc.record.m)) >= lower - 1e-9);
}

TEST_CASE("dilution fidelity is the top Schmidt mass") {
  RealVector lam(3);
  lam << 0.7, 0.2, 0.1;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  CHECK(dilute(psi, 2).fidelity_sq == doctest::Approx(0.9).epsilon(1e-13));
  CHECK(dilute(psi, 3).fidelity_sq == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dilute(psi, 5).fidelity_sq == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dilute(psi, 1).fidelity_sq == doctest::Approx(0.7).epsilon(1e-13));

  for (double eps : {0.1, 0.25, 0.5}) {
    const CodeRecord rec = dilute_at_epsilon(psi, eps);
    CHECK(rec.fidelity_sq >= 1.0 - eps - 1e-9);
  }
}

TEST_CASE("weyl operators") {
  const std::vector<Matrix> qubit = weyl_set(2);
  REQUIRE(qubit.size() == 4);
  // {1, X, Z, XZ} up to phases
  CHECK(max_abs(qubit[0] - Matrix::Identity(2, 2)) < 1e-14);
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs(qubit[1] - x) < 1e-12);
  CHECK(max_abs(qubit[2] - z) < 1e-12);

  // forced twirl value on |0><0|
  Matrix twirl = Matrix::Zero(2, 2);
  for (const Matrix& u : qubit) twirl += u * (ket(2, 0) * ket(2, 0).adjoint()) * u.adjoint();
  CHECK(max_abs(twirl - 2.0 * Matrix::Identity(2, 2)) <= 1e-12);

  Rng rng(3);
  const Matrix omega = random_state(3, rng).matrix();
  Matrix t3 = Matrix::Zero(3, 3);
  for (const Matrix& u : weyl_set(3)) t3 += u * omega * u.adjoint();
  CHECK(max_abs(t3 - 3.0 * Matrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("one-shot bounds per task") {
  // dilution on a maximally entangled state: protocol achieves F = 1 inside
  // the bracket
  const BipartitePureState mes = BipartitePureState::maximally_entangled(4);
  OneShotInputs in_mes;
  in_mes.psi = &mes;
  const OneShotBracket dil = one_shot_bounds(Task::Dilute, in_mes, EpsilonSpec(0.25, 0.1, 1e-6, {}));
  const CodeRecord rec = dilute_at_epsilon(mes, 0.25);
  CHECK(rec.fidelity_sq == doctest::Approx(1.0).epsilon(1e-12));
  const double log_m = std::log2(static_cast<double>(rec.m));
  CHECK(dil.lower <= log_m + 1e-9);
  CHECK(log_m <= dil.upper + 1e-9);

  // visible source coding on the running ensemble
  RealVector p(2);
  p << 0.5, 0.5;
  const PureStateEnsemble ens(p, {ket(2, 0), plus_ket()});
  OneShotInputs in_src;
  in_src.ensemble = &ens;
  const OneShotBracket src =
      one_shot_bounds(Task::SourceVisible, in_src, EpsilonSpec(0.1, 0.05, {}, {}));
  const CodeRecord code = visible_code(ens, 0.1);
  const double lm = std::log2(static_cast<double>(code.m));
  CHECK(src.lower <= lm + 1e-9);
  CHECK(lm <= src.upper + 1e-9);

  // blind upper bound uses the halved error parameter
  const OneShotBracket blind =
      one_shot_bounds(Task::SourceBlind, in_src, EpsilonSpec(0.1, 0.05, {}, {}));
  CHECK(blind.upper >= src.upper - 1e-12);

  // cq channel: noiseless bit anchored at capacity one
  CqChannel bit;
  bit.outputs = {ket(2, 0) * ket(2, 0).adjoint(), ket(2, 1) * ket(2, 1).adjoint()};
  OneShotInputs in_cq;
  in_cq.cq = &bit;
  in_cq.search.starts = 4;
  const OneShotBracket cq = one_shot_bounds(Task::CqChannel, in_cq, EpsilonSpec(0.1, 0.06, 1e-6, 1.0));
  CHECK(cq.lower <= 1.0 + 1e-9);
  CHECK(1.0 <= cq.upper + 1e-9);

  // slack constraint violations are rejected
  CHECK_THROWS_AS(one_shot_bounds(Task::CqChannel, in_cq, EpsilonSpec(0.1, 0.04, 1e-6, 1.0)),
                  InputError);
  RealVector lam(2);
  lam << 0.7, 0.3;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  OneShotInputs in_ec;
  in_ec.psi = &psi;
  CHECK_THROWS_AS(one_shot_bounds(Task::Distill, in_ec, EpsilonSpec(0.1, 0.2, 1e-6, {})),
                  InputError);
}

TEST_CASE("dense coding bracket evaluates") {
  Rng rng(6);
  const Matrix rho_ab = random_state(4, rng).matrix();
  OneShotInputs in;
  in.rho_ab = &rho_ab;
  in.dim_a = 2;
  in.dim_b = 2;
  const OneShotBracket br = one_shot_bounds(Task::DenseCoding, in, EpsilonSpec(0.2, 0.15, 1e-6, 1.0));
  CHECK(std::isfinite(br.lower));
  CHECK(std::isfinite(br.upper));
  CHECK(br.lower <= br.upper + 1e-9);  // generous slack keeps the bracket ordered
}

TEST_CASE("pgm simulation is sane and reports the existence bound") {
  const BipartitePureState phi2 = BipartitePureState::maximally_entangled(2);
  const PgmSimulation sim = pgm_dense_coding_simulation(phi2.density(), 2, 2, 4, 2.0, 1.0, 11);
  CHECK(sim.code_size == 4);
  CHECK(sim.p_error >= -1e-12);
  CHECK(sim.p_error <= 1.0 + 1e-12);
  CHECK(std::isfinite(sim.hn_bound));
}
