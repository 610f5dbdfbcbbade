#pragma once

#include <vector>

#include "infospec/divergences.hpp"

namespace infospec {

// Joint classical pair on the product of the two eigenbases:
// P(x,y) = r_x |<v_x|u_y>|^2,  Q(x,y) = s_y |<v_x|u_y>|^2.
struct ClassicalPair {
  std::vector<double> p;
  std::vector<double> q;

  RelEntStats moments() const;  // D(P||Q), V(P||Q) in bits
};

ClassicalPair nussbaum_szkola(const Matrix& rho, const Matrix& sigma);
ClassicalPair product_pair(const ClassicalPair& a, const ClassicalPair& b);

// Distribution of Z = log2 P - log2 Q under P, with exact atom bookkeeping.
// Q-support violations (P > 0, Q = 0) are carried as a symbolic +inf atom.
struct ClassicalLLR {
  std::vector<double> support;  // strictly increasing, finite atoms
  std::vector<double> probs;    // P-masses of the finite atoms
  double inf_mass = 0.0;        // P-mass at Z = +inf
  double mu = 0.0;              // mean of the finite part
  double s = 0.0;               // standard deviation of the finite part

  double total_mass() const;
};

struct LlrOptions {
  double merge_tol = 1e-12;     // support values merged within this distance
  double prune_mass = 1e-14;    // atoms below this P-mass are dropped
  std::size_t atom_cap = 2'000'000;
};

ClassicalLLR llr_distribution(const ClassicalPair& pair, const LlrOptions& opts = {});

// Exact distribution of the n-fold i.i.d. sum. Chooses type enumeration when
// the composition count is below the cap, else binary-powered convolution.
ClassicalLLR iid_llr_distribution(const ClassicalPair& pair, long n, const LlrOptions& opts = {});
ClassicalLLR iid_llr_distribution(const ClassicalLLR& single, long n, const LlrOptions& opts = {});

struct ClassicalQuantile {
  double value = 0.0;
  bool left_limit = false;
  bool infinite = false;
};

// Cumulative-distribution quantile form:
//   underline: sup{R : P(Z <= R) <= eps}
//   overline : inf{R : P(Z >  R) <= eps}
ClassicalQuantile classical_info_spectrum(const ClassicalLLR& llr, double epsilon, Direction dir);
ClassicalQuantile classical_info_spectrum(const ClassicalPair& pair, double epsilon, Direction dir);

// Positive-part (trace-gap) form on the LLR atoms; equals the quantum
// information spectrum relative entropy for commuting pairs:
//   T(gamma) = sum_z P(z) (1 - 2^{gamma-z})_+  and the usual sup/inf.
double classical_trace_gap(const ClassicalLLR& llr, double gamma);
DivergenceResult classical_spectrum_divergence(const ClassicalLLR& llr, double epsilon,
                                               Direction dir);

// Standard normal CDF and its generalized inverse
// Phi^{-1}(eps) = sup{z : Phi(z) <= eps}, antisymmetric by construction.
double normal_cdf(double z);
double normal_quantile(double epsilon);

// Dense tensor-power evaluation through the divergences module; d^n <= cap.
DivergenceResult tensor_power_divergence(const Matrix& rho, const Matrix& sigma, int n,
                                         double epsilon, Direction dir, long dim_cap = 4096);

struct RateSequenceProbe {
  std::vector<long> n_grid;
  std::vector<double> eps_grid;
  // rates[i][j] = (1/n_i) * D_s^{eps_j}(rho^n || sigma^n) for the direction.
  std::vector<std::vector<double>> rates;
};
RateSequenceProbe spectral_rate_probe(const ClassicalPair& pair, const std::vector<long>& n_grid,
                                      const std::vector<double>& eps_grid, Direction dir);

}  // namespace infospec
