#include "doctest.h"

#include "infospec/expansion.hpp"
#include "infospec/optim.hpp"
#include "test_util.hpp"

using namespace infospec;
using namespace test_util;

TEST_CASE("divergence expansion coefficients") {
  const Matrix rho = fig1_state();
  const ExpansionCoefficients same = divergence_expansion(rho, rho, 0.3, Direction::Underline);
  CHECK(same.a == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.b == doctest::Approx(0.0).epsilon(1e-12));

  // commuting case with scalar + quantile oracles
  const ExpansionCoefficients c =
      divergence_expansion(diag2(0.75, 0.25), diag2(0.5, 0.5), 0.25, Direction::Underline);
  CHECK(c.a == doctest::Approx(kRelEnt_34_12).epsilon(1e-12));
  CHECK(c.b == doctest::Approx(c.dispersion * kPhiInv025).epsilon(1e-12));

  const ExpansionCoefficients o =
      divergence_expansion(diag2(0.75, 0.25), diag2(0.5, 0.5), 0.25, Direction::Overline);
  CHECK(o.a == doctest::Approx(c.a).epsilon(1e-13));
  CHECK(o.b == doctest::Approx(-c.b).epsilon(1e-13));
}

TEST_CASE("source coding expansion") {
  const ExpansionCoefficients mixed =
      source_coding_expansion(Matrix(Matrix::Identity(2, 2) / 2), 0.25);
  CHECK(mixed.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mixed.b) <= 1e-12);  // flat spectrum kills the variance

  const ExpansionCoefficients fig = source_coding_expansion(fig1_state(), 0.1);
  CHECK(fig.a == doctest::Approx(kFig1S).epsilon(1e-11));
  CHECK(fig.dispersion == doctest::Approx(kFig1SqrtV).epsilon(1e-11));
  CHECK(fig.b == doctest::Approx(kFig1SourceB01).epsilon(1e-10));

  // eps above 1/2: the rate dips below the entropy for every n
  const ExpansionCoefficients high = source_coding_expansion(fig1_state(), 0.9);
  CHECK(high.b < 0.0);
  for (double n : {1.0, 4.0, 64.0, 4096.0}) CHECK(high.rate(n) < high.a);

  const BlindBracket blind = source_coding_expansion_blind(fig1_state(), 0.2);
  CHECK(blind.upper.b >= blind.lower.b);
  CHECK(blind.lower.a == doctest::Approx(blind.upper.a).epsilon(1e-13));
}

TEST_CASE("coefficient b is recomputable from the stored dispersion and eps") {
  const ExpansionCoefficients vis = source_coding_expansion(fig1_state(), 0.15);
  CHECK(vis.b == doctest::Approx(-vis.dispersion * normal_quantile(vis.eps)).epsilon(1e-12));

  RealVector lam(2);
  lam << 0.7, 0.3;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  const ExpansionCoefficients dist = entanglement_expansion(psi, 0.15, Task::Distill);
  CHECK(dist.b == doctest::Approx(dist.dispersion * normal_quantile(dist.eps)).epsilon(1e-12));
  const ExpansionCoefficients dil = entanglement_expansion(psi, 0.15, Task::Dilute);
  CHECK(dil.b == doctest::Approx(-dil.dispersion * normal_quantile(dil.eps)).epsilon(1e-12));

  const BlindBracket blind = source_coding_expansion_blind(fig1_state(), 0.2);
  CHECK(blind.upper.b ==
        doctest::Approx(-blind.upper.dispersion * normal_quantile(blind.upper.eps)).epsilon(1e-12));
  CHECK(blind.upper.eps == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("dense coding expansion anchors") {
  const BipartitePureState phi2 = BipartitePureState::maximally_entangled(2);
  const DenseCodingExpansion mes = dense_coding_expansion(phi2.density(), 2, 2, 0.25,
                                                          ChannelMode::Identity);
  CHECK(mes.coeffs.a == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(std::abs(mes.coeffs.b) <= 1e-12);

  // product state: additivity reduces a to log d_A - S(rho_A)
  Rng rng(4);
  const Matrix ra = random_state(2, rng).matrix();
  const Matrix rb = random_state(2, rng).matrix();
  const DenseCodingExpansion prod =
      dense_coding_expansion(kron(ra, rb), 2, 2, 0.25, ChannelMode::Identity);
  CHECK(prod.coeffs.a == doctest::Approx(1.0 - von_neumann_entropy(ra)).epsilon(1e-10));

  // the optimizer can only improve on the identity anchor
  ChannelSearchOptions opts;
  opts.starts = 4;
  opts.max_iters = 120;
  opts.seed = 17;
  const Matrix rho_ab = random_state(4, rng).matrix();
  const DenseCodingExpansion id = dense_coding_expansion(rho_ab, 2, 2, 0.25, ChannelMode::Identity);
  const DenseCodingExpansion opt =
      dense_coding_expansion(rho_ab, 2, 2, 0.25, ChannelMode::Optimize, opts);
  CHECK(opt.coeffs.a >= id.coeffs.a - 1e-9);
  CHECK(opt.product_encoding);
}

TEST_CASE("entanglement conversion expansions") {
  for (int m : {2, 4}) {
    const BipartitePureState mes = BipartitePureState::maximally_entangled(m);
    for (Task task : {Task::Distill, Task::Dilute}) {
      const ExpansionCoefficients c = entanglement_expansion(mes, 0.1, task);
      CHECK(c.a == doctest::Approx(std::log2(static_cast<double>(m))).epsilon(1e-12));
      CHECK(std::abs(c.b) <= 1e-12);
      CHECK(c.degenerate);
    }
  }

  RealVector lam(2);
  lam << 0.7, 0.3;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  const ExpansionCoefficients distill = entanglement_expansion(psi, 0.1, Task::Distill);
  CHECK(distill.a == doctest::Approx(kH2_03).epsilon(1e-11));
  CHECK(distill.dispersion == doctest::Approx(kSqrtV_73).epsilon(1e-11));
  CHECK(distill.b == doctest::Approx(kDistillB_73_01).epsilon(1e-10));

  const ExpansionCoefficients dilute = entanglement_expansion(psi, 0.1, Task::Dilute);
  CHECK(dilute.b == doctest::Approx(-distill.b).epsilon(1e-12));
  // dilute.b - distill.b = -2 sqrt(V) PhiInv(eps) > 0 below eps = 1/2
  CHECK(dilute.b - distill.b > 0.0);

  CHECK_THROWS_AS(entanglement_expansion(psi, 0.1, Task::CqChannel), InputError);
}

TEST_CASE("irreversibility gap") {
  const BipartitePureState mes = BipartitePureState::maximally_entangled(2);
  const IrreversibilityGap flat = irreversibility_gap(mes, 0.1, 0.1, 16);
  CHECK(flat.degenerate);
  CHECK(flat.gap_bits == 0.0);

  RealVector lam(2);
  lam << 0.7, 0.3;
  const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
  const IrreversibilityGap gap = irreversibility_gap(psi, 0.05, 0.05, 1);
  CHECK(gap.coefficient == doctest::Approx(kGapCoeff_73_005).epsilon(1e-10));
  CHECK(gap.gap_bits == doctest::Approx(kGapCoeff_73_005).epsilon(1e-10));
  CHECK(gap.crossover_n == 1);  // the coefficient already exceeds one bit
  const IrreversibilityGap gap9 = irreversibility_gap(psi, 0.05, 0.05, 9);
  CHECK(gap9.gap_bits == doctest::Approx(3.0 * kGapCoeff_73_005).epsilon(1e-10));

  CHECK_THROWS_AS(irreversibility_gap(psi, 0.6, 0.05, 1), InputError);
}

TEST_CASE("cq capacity anchors") {
  CapacityOptions opts;
  opts.seed = 7;

  CqChannel useless;
  useless.outputs = {fig1_state(), fig1_state()};
  const DispersionSet ds0 = cq_capacity(useless, opts);
  CHECK(ds0.capacity == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ds0.v_min == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ds0.v_max == doctest::Approx(0.0).epsilon(1e-9));

  CqChannel bit;
  bit.outputs = {ket(2, 0) * ket(2, 0).adjoint(), ket(2, 1) * ket(2, 1).adjoint()};
  const DispersionSet ds1 = cq_capacity(bit, opts);
  CHECK(ds1.capacity == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(!ds1.maximizer_set.empty());
  CHECK(ds1.maximizer_set[0](0) == doctest::Approx(0.5).epsilon(1e-6));

  // two pure states |0>, |+>: 1-D golden-section oracle
  CqChannel pure;
  const Vector plus = plus_ket();
  pure.outputs = {ket(2, 0) * ket(2, 0).adjoint(), plus * plus.adjoint()};
  const DispersionSet ds2 = cq_capacity(pure, opts);
  auto f = [&](double p) {
    RealVector prior(2);
    prior << p, 1.0 - p;
    return holevo_information(pure, prior);
  };
  const double p_star = golden_section_max(f, 0.0, 1.0, 1e-12);
  CHECK(ds2.capacity == doctest::Approx(f(p_star)).epsilon(1e-8));
  // the optimal mixture reproduces the running example's entropy
  CHECK(ds2.capacity == doctest::Approx(kFig1S).epsilon(1e-8));
}

TEST_CASE("cq expansion case split") {
  CqChannel bit;
  bit.outputs = {ket(2, 0) * ket(2, 0).adjoint(), ket(2, 1) * ket(2, 1).adjoint()};
  CapacityOptions opts;
  opts.seed = 7;
  const ExpansionCoefficients at_half = cq_expansion(bit, 0.5, opts);
  CHECK(at_half.a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(at_half.b == 0.0);  // quantile vanishes at 1/2 regardless of V_eps

  const ExpansionCoefficients low = cq_expansion(bit, 0.49, opts);
  const ExpansionCoefficients high = cq_expansion(bit, 0.51, opts);
  // continuity across the case split: both sides sit near zero
  CHECK(std::abs(low.b) <= std::abs(low.dispersion) * 0.05);
  CHECK(std::abs(high.b) <= std::abs(high.dispersion) * 0.05);
  CHECK(low.remainder == RemainderTag::SqrtN);
}

TEST_CASE("nelder-mead and golden-section basics") {
  auto quad = [](const RealVector& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += (x(i) - i) * (x(i) - i);
    return s;
  };
  SimplexResult r = nelder_mead(quad, RealVector::Zero(3), {600, 1e-12, 0.5});
  CHECK(r.value <= 1e-8);
  const double peak = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(peak == doctest::Approx(0.3).epsilon(1e-8));
}
