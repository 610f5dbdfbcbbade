#pragma once

#include <string>
#include <vector>

#include "infospec/classical.hpp"

namespace infospec {

enum class RemainderTag { LogN, SqrtN };  // O(log n) vs o(sqrt n)

enum class Task {
  Divergence,
  SourceVisible,
  SourceBlind,
  DenseCoding,
  Distill,
  Dilute,
  CqChannel,
};

struct ExpansionCoefficients {
  double a = 0.0;            // bits per copy
  double b = 0.0;            // bits per sqrt(copy), quantile folded in
  RemainderTag remainder = RemainderTag::LogN;
  Task task = Task::Divergence;
  double eps = 0.0;
  double dispersion = 0.0;   // sqrt(V) used to form b
  bool degenerate = false;   // zero-dispersion input

  double rate(double n) const { return (a * n + b * std::sqrt(n)) / n; }
};

ExpansionCoefficients divergence_expansion(const Matrix& rho, const Matrix& sigma, double epsilon,
                                           Direction dir);

struct BlindBracket {
  ExpansionCoefficients lower;  // quantile at eps
  ExpansionCoefficients upper;  // quantile at eps/2
};

ExpansionCoefficients source_coding_expansion(const Matrix& rho, double epsilon);  // visible
BlindBracket source_coding_expansion_blind(const Matrix& rho, double epsilon);

struct ChannelSearchOptions {
  int starts = 20;
  std::uint64_t seed = 1;
  int max_iters = 300;
  double tol = 1e-8;
};

enum class ChannelMode { Identity, Optimize };

struct DenseCodingExpansion {
  ExpansionCoefficients coeffs;
  QuantumChannel channel;      // achieving encoder-side channel
  bool product_encoding = true;  // analysis restricted to product encodings
};
DenseCodingExpansion dense_coding_expansion(const Matrix& rho_ab, int dim_a, int dim_b,
                                            double epsilon, ChannelMode mode,
                                            const ChannelSearchOptions& opts = {});

ExpansionCoefficients entanglement_expansion(const BipartitePureState& psi, double epsilon,
                                             Task task /* Distill or Dilute */);

struct IrreversibilityGap {
  double gap_bits = 0.0;       // at the requested n
  long crossover_n = 0;        // smallest n with gap >= 1 bit; 0 when degenerate
  bool degenerate = false;     // flat Schmidt spectrum
  double coefficient = 0.0;    // gap(n) = coefficient * sqrt(n)
};
IrreversibilityGap irreversibility_gap(const BipartitePureState& psi, double epsilon, double delta,
                                       long n);

struct CqChannel {
  std::vector<Matrix> outputs;            // W(x), normalized states on H_B
  std::optional<RealVector> prior;

  int alphabet() const { return static_cast<int>(outputs.size()); }
  int dim_b() const { return static_cast<int>(outputs[0].rows()); }
  Matrix average(const RealVector& p) const;
  Matrix cq_state(const RealVector& p) const;  // sum_x p(x)|x><x| (x) W(x)
};

struct DispersionSet {
  double capacity = 0.0;
  std::vector<RealVector> maximizer_set;
  double v_min = 0.0;
  double v_max = 0.0;
  double v_eps(double epsilon) const { return epsilon < 0.5 ? v_min : v_max; }
  double maximizer_tol = 1e-6;  // acceptance window used to collect the set
};

struct CapacityOptions {
  double tol = 1e-10;
  long max_iters = 2'000'000;
  int restarts = 50;
  std::uint64_t seed = 1;
};

double holevo_information(const CqChannel& w, const RealVector& p);
DispersionSet cq_capacity(const CqChannel& w, const CapacityOptions& opts = {});

ExpansionCoefficients cq_expansion(const CqChannel& w, double epsilon,
                                   const CapacityOptions& opts = {});

}  // namespace infospec
