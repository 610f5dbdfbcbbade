#include "doctest.h"

#include "infospec/classical.hpp"
#include "test_util.hpp"

using namespace infospec;
using namespace test_util;

TEST_CASE("nussbaum-szkola reductions") {
  // identical diagonal inputs: P = Q
  const ClassicalPair same = nussbaum_szkola(diag2(0.6, 0.4), diag2(0.6, 0.4));
  for (std::size_t i = 0; i < same.p.size(); ++i)
    CHECK(same.p[i] == doctest::Approx(same.q[i]).epsilon(1e-13));

  // commuting pair: D(P||Q) equals the classical KL of the spectra
  const ClassicalPair com = nussbaum_szkola(diag2(0.75, 0.25), diag2(0.5, 0.5));
  const double kl = 0.75 * std::log2(0.75 / 0.5) + 0.25 * std::log2(0.25 / 0.5);
  CHECK(com.moments().D == doctest::Approx(kl).epsilon(1e-12));

  // |+><+| vs maximally mixed: hand-constructed overlaps, moment oracle
  const Vector plus = plus_ket();
  const ClassicalPair ns = nussbaum_szkola(plus * plus.adjoint(), diag2(0.5, 0.5));
  const RelEntStats cl = ns.moments();
  const RelEntStats qm = relative_entropy_stats(plus * plus.adjoint(), diag2(0.5, 0.5));
  CHECK(cl.D == doctest::Approx(qm.D).epsilon(1e-10));
  CHECK(cl.V == doctest::Approx(qm.V).epsilon(1e-10));
  CHECK(cl.D == doctest::Approx(1.0).epsilon(1e-10));  // D(|+><+| || I/2) = 1 bit
}

TEST_CASE("classical info spectrum quantiles") {
  // P = Q: single atom at zero, sup approached from the left
  ClassicalPair same{{1.0}, {1.0}};
  const ClassicalQuantile q0 = classical_info_spectrum(same, 0.3, Direction::Underline);
  CHECK(q0.value == doctest::Approx(0.0));
  CHECK(q0.left_limit);

  ClassicalPair point{{1.0, 0.0}, {0.5, 0.5}};
  const ClassicalQuantile q1 = classical_info_spectrum(point, 0.7, Direction::Underline);
  CHECK(q1.value == doctest::Approx(1.0));
  CHECK(q1.left_limit);

  ClassicalPair two{{0.75, 0.25}, {0.5, 0.5}};
  const ClassicalQuantile q2 = classical_info_spectrum(two, 0.3, Direction::Underline);
  CHECK(q2.value == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(q2.left_limit);

  // overline: attained upper-tail quantile
  const ClassicalQuantile q3 = classical_info_spectrum(two, 0.3, Direction::Overline);
  CHECK(q3.value == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK_FALSE(q3.infinite);
}

TEST_CASE("llr distribution handles Q-support violations symbolically") {
  ClassicalPair viol{{0.6, 0.4}, {1.0, 0.0}};
  const ClassicalLLR llr = llr_distribution(viol);
  CHECK(llr.inf_mass == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(llr.support.size() == 1);
  CHECK(llr.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  // the dominating mass forces the underline sup to +inf beyond 0.6
  const ClassicalQuantile q = classical_info_spectrum(llr, 0.7, Direction::Underline);
  CHECK(q.infinite);
  const ClassicalQuantile o = classical_info_spectrum(llr, 0.3, Direction::Overline);
  CHECK(o.infinite);
}

TEST_CASE("iid llr distributions are exact") {
  ClassicalPair pair{{0.5, 0.5}, {0.25, 0.75}};
  const ClassicalLLR single = llr_distribution(pair);
  const ClassicalLLR one = iid_llr_distribution(single, 1);
  CHECK(one.support.size() == single.support.size());

  // two-letter convolution by hand: binomial masses (1/4, 1/2, 1/4)
  const ClassicalLLR twofold = iid_llr_distribution(single, 2);
  REQUIRE(twofold.support.size() == 3);
  CHECK(twofold.probs[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(twofold.probs[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(twofold.probs[2] == doctest::Approx(0.25).epsilon(1e-13));

  // moment oracle at n = 64
  const ClassicalLLR big = iid_llr_distribution(single, 64);
  double mass = 0.0;
  for (double p : big.probs) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(big.mu == doctest::Approx(64.0 * single.mu).epsilon(1e-8));
  CHECK(big.s * big.s == doctest::Approx(64.0 * single.s * single.s).epsilon(1e-8));
}

TEST_CASE("type enumeration matches a test-local convolution oracle") {
  ClassicalPair pair{{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}};
  const ClassicalLLR single = llr_distribution(pair);

  // oracle: fold the single-letter atoms one copy at a time
  std::vector<std::pair<double, double>> acc{{0.0, 1.0}};
  const int n = 6;
  for (int copy = 0; copy < n; ++copy) {
    std::vector<std::pair<double, double>> next;
    for (const auto& [z, p] : acc)
      for (std::size_t i = 0; i < single.support.size(); ++i)
        next.push_back({z + single.support[i], p * single.probs[i]});
    std::sort(next.begin(), next.end());
    acc.clear();
    for (const auto& atom : next) {
      if (!acc.empty() && atom.first - acc.back().first <= 1e-11)
        acc.back().second += atom.second;
      else
        acc.push_back(atom);
    }
  }

  const ClassicalLLR types = iid_llr_distribution(single, n);
  REQUIRE(types.support.size() == acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    CHECK(types.support[i] == doctest::Approx(acc[i].first).epsilon(1e-10));
    CHECK(types.probs[i] == doctest::Approx(acc[i].second).epsilon(1e-10));
  }
}

TEST_CASE("atom cap raises an instructive error") {
  // 40 distinct irrational-ish atoms blow past a small cap under convolution
  ClassicalPair pair;
  double mass = 0.0;
  for (int i = 0; i < 40; ++i) {
    pair.p.push_back(1.0 / 40.0);
    pair.q.push_back((i + 1) / (40.0 * 20.5));
    mass += pair.q.back();
  }
  LlrOptions opts;
  opts.atom_cap = 1000;
  CHECK_THROWS_AS(iid_llr_distribution(pair, 64, opts), InputError);
}

TEST_CASE("normal quantile and cdf") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_quantile(0.05) == doctest::Approx(kPhiInv005).epsilon(1e-10));
  CHECK(normal_quantile(0.25) == doctest::Approx(kPhiInv025).epsilon(1e-10));
  for (double eps : {0.001, 0.01, 0.1, 0.3, 0.7, 0.99, 0.999}) {
    CHECK(std::abs(normal_cdf(normal_quantile(eps)) - eps) <= 1e-12);
    CHECK(std::abs(normal_quantile(1.0 - eps) + normal_quantile(eps)) <= 1e-12);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), InputError);
}

TEST_CASE("classical trace-gap form") {
  // rho = sigma: T(gamma) = max(0, 1 - 2^gamma)
  ClassicalPair same{{0.6, 0.4}, {0.6, 0.4}};
  const ClassicalLLR llr = llr_distribution(same);
  CHECK(classical_trace_gap(llr, -1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(classical_trace_gap(llr, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  const DivergenceResult r = classical_spectrum_divergence(llr, 0.25, Direction::Underline);
  CHECK(r.gamma == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("tensor power evaluation matches the classical engine") {
  Rng rng(99);
  const CommutingPair pair = random_commuting_pair(2, rng);
  const ClassicalLLR single =
      llr_distribution(nussbaum_szkola(pair.rho.matrix(), pair.sigma.matrix()));

  // n = 1 reduces to the plain divergence
  const DivergenceResult direct =
      info_spectrum_divergence(pair.rho.matrix(), pair.sigma.matrix(), 0.3, Direction::Underline);
  const DivergenceResult t1 =
      tensor_power_divergence(pair.rho.matrix(), pair.sigma.matrix(), 1, 0.3, Direction::Underline);
  CHECK(t1.gamma == doctest::Approx(direct.gamma).epsilon(1e-10));

  for (int n : {3, 6}) {
    const ClassicalLLR lln = iid_llr_distribution(single, n);
    const double classical = classical_spectrum_divergence(lln, 0.3, Direction::Underline).gamma;
    const double quantum =
        tensor_power_divergence(pair.rho.matrix(), pair.sigma.matrix(), n, 0.3,
                                Direction::Underline)
            .gamma;
    CHECK(quantum == doctest::Approx(classical).epsilon(1e-9));
  }

  // rho = sigma survives tensoring: underline value log2(eps) for every n
  const Matrix rho = fig1_state();
  for (int n : {1, 2, 4}) {
    const DivergenceResult r =
        tensor_power_divergence(rho, rho, n, 0.25, Direction::Underline);
    CHECK(r.gamma == doctest::Approx(-2.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(tensor_power_divergence(rho, rho, 13, 0.25, Direction::Underline), InputError);
}

TEST_CASE("spectral rate probe shape") {
  Rng rng(123);
  const CommutingPair pair = random_commuting_pair(2, rng);
  const ClassicalPair ns = nussbaum_szkola(pair.rho.matrix(), pair.sigma.matrix());
  const RateSequenceProbe probe =
      spectral_rate_probe(ns, {16, 64}, {0.25, 0.5}, Direction::Underline);
  REQUIRE(probe.rates.size() == 2);
  REQUIRE(probe.rates[0].size() == 2);
  for (const auto& row : probe.rates)
    for (double v : row) CHECK(std::isfinite(v));
}
