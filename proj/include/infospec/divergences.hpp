#pragma once

#include <optional>
#include <utility>

#include "infospec/random.hpp"
#include "infospec/states.hpp"

namespace infospec {

struct EpsilonSpec {
  double epsilon;
  std::optional<double> eta;
  std::optional<double> delta;
  std::optional<double> c;

  explicit EpsilonSpec(double eps) : epsilon(eps) { validate(); }
  EpsilonSpec(double eps, std::optional<double> eta_, std::optional<double> delta_,
              std::optional<double> c_)
      : epsilon(eps), eta(eta_), delta(delta_), c(c_) {
    validate();
  }
  void validate() const;
};

enum class Direction { Underline, Overline };

struct DivergenceResult {
  double gamma = 0.0;
  double achieved_gap = 0.0;  // tr(rho - 2^gamma sigma)_+ at gamma
  std::pair<double, double> bracket{0.0, 0.0};
  double tol = kGammaBracketTol;
  bool infinite = false;      // target unreachable (singular sigma)
};

// T(gamma) = tr(rho - 2^gamma sigma)_+ ; continuous and strictly decreasing
// wherever 0 < T < tr(rho).
double trace_gap(const Matrix& rho, const Matrix& sigma, double gamma);

// Underline: sup{gamma : T(gamma) >= 1-eps}; overline: inf{gamma : T(gamma) <= eps}.
DivergenceResult info_spectrum_divergence(const Matrix& rho, const Matrix& sigma,
                                          double epsilon, Direction dir);

struct ThDivergence {
  double value = 0.0;
  bool left_limit = false;  // sup approached from the left of a breakpoint
  bool infinite = false;
};
// Tomamichel-Hayashi variant: sup{gamma : tr[rho {rho <= 2^gamma sigma}] <= eps}.
ThDivergence ds_tomamichel_hayashi(const Matrix& rho, const Matrix& sigma, double epsilon);

struct HypothesisTest {
  double value = 0.0;        // -log2 tr(Q* sigma)
  Matrix optimal_test;       // Q* = {rho > mu sigma} + t * Pi_crit
  double type1_pass = 0.0;   // tr(Q* rho), equals 1-eps within kGapTol
  double beta = 0.0;         // tr(Q* sigma)
  bool infinite = false;
};
HypothesisTest hypothesis_testing_divergence(const Matrix& rho, const Matrix& sigma,
                                             double epsilon);

struct MaxDivergence {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<Matrix> witness;  // smoothed state certifying the upper bound
  bool exact = false;             // eps == 0
  bool infinite = false;
};
// eps = 0: exact log2 lambda_max(sigma^{-1/2} rho sigma^{-1/2}).
// eps > 0: certified two-sided bounds; certificate failure throws.
MaxDivergence max_divergence(const Matrix& rho, const Matrix& sigma, double epsilon);

struct DmaxWitness {
  Matrix state;           // rho_bar = G rho G'
  double purified;        // P(rho, rho_bar)
  double dominance_gap;   // lambda_max(rho_bar - 2^gamma sigma), <= 0 up to tol
};
// Smoothing construction G = (2^g s)^{1/2} ((2^g s) + (rho - 2^g s)_+)^{-1/2}.
DmaxWitness dmax_witness_at(const Matrix& rho, const Matrix& sigma, double gamma);

struct RelEntStats {
  double D = 0.0;  // bits
  double V = 0.0;  // bits^2, clamped at 0
  double s = 0.0;  // sqrt(V)
  bool infinite = false;
};
RelEntStats relative_entropy_stats(const Matrix& rho, const Matrix& sigma);

enum class EntropyKind { Entropy, Conditional, Mutual };

struct DerivedEntropyResult {
  double value = 0.0;
  bool infinite = false;
  bool upper_envelope = false;        // mutual information: multi-start min
  std::optional<Matrix> sigma_b;      // achieving marginal for mutual information
};

struct MutualSearchOptions {
  int starts = 20;
  std::uint64_t seed = 1;
  int max_iters = 400;
  double tol = 1e-8;
};

DerivedEntropyResult derived_entropy(EntropyKind kind, Direction dir, const Matrix& state,
                                     double epsilon, int dim_a = 0, int dim_b = 0,
                                     const MutualSearchOptions& opts = {});

// min over sigma_B of D_s(rho_AB || rho_A (x) sigma_B) for the given direction.
DerivedEntropyResult info_spectrum_mutual(const Matrix& rho_ab, int dim_a, int dim_b,
                                          double epsilon, Direction dir,
                                          const MutualSearchOptions& opts = {});

}  // namespace infospec
