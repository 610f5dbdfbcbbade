#pragma once

#include "infospec/expansion.hpp"

namespace infospec {

enum class FigureOfMerit { EnsembleAverage, Entanglement, ProtocolFidelitySquared, AverageError };

struct CodeRecord {
  long m = 0;                    // code size / compressed dimension / Schmidt rank
  double gamma = 0.0;            // threshold exponent used by the construction
  FigureOfMerit merit = FigureOfMerit::EnsembleAverage;
  double value = 0.0;            // the declared figure of merit, in [0,1]
  double fidelity_sq = 0.0;      // squared-fidelity convention where applicable
  double p_fail = 0.0;           // concentration abort probability
  double delta_rounding = 0.0;   // flooring loss gamma + log2 tr(Q rho) - log2 M
  std::vector<int> junk_signals; // visible encoding: signals orthogonal to P

  // entanglement conversions quote the squared convention; this is the other one
  double fidelity() const { return std::sqrt(std::max(0.0, fidelity_sq)); }
};

struct MajorizationCertificate {
  RealVector source_spectrum;   // non-increasing
  RealVector target_spectrum;
  std::vector<bool> partial_sums_ok;
  bool valid = false;
  double worst_violation = 0.0;
};

MajorizationCertificate majorization_check(const RealVector& source, const RealVector& target);

// Visible source code at gamma = \bar H_s^eps(rho): P = {rho >= 2^{-gamma} 1}.
CodeRecord visible_code(const PureStateEnsemble& ensemble, double epsilon);

// Blind compression channel at gamma = \bar H_s^{eps/2}(rho).
CodeRecord blind_code(const DensityOperator& rho, double epsilon);

struct ConcentrationOutcome {
  CodeRecord record;
  MajorizationCertificate certificate;
  RealVector post_spectrum;   // renormalized kept Schmidt coefficients
};
// Entanglement concentration at gamma = \underline H_s^{eps-eta}(rho_A) + log2(eta).
// Throws ProtocolFailure when the flooring yields M = 0.
ConcentrationOutcome concentrate(const BipartitePureState& psi, double epsilon, double eta);

// Truncation protocol: F^2 = sum of the top-M Schmidt coefficients.
CodeRecord dilute(const BipartitePureState& psi, long m);
// M picked as floor(2^{\bar H_s^eps(rho_A)}).
CodeRecord dilute_at_epsilon(const BipartitePureState& psi, double epsilon);

// Weyl shift/phase unitaries U_{p,q} = X^q Z^p, d^2 of them.
std::vector<Matrix> weyl_set(int d);

struct OneShotBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool bracket_guaranteed = true;  // theorem guarantees lower <= upper for the slacks
};

struct OneShotInputs {
  // Task-dependent payload; unused members ignored.
  const PureStateEnsemble* ensemble = nullptr;
  const DensityOperator* rho = nullptr;
  const BipartitePureState* psi = nullptr;
  const Matrix* rho_ab = nullptr;
  int dim_a = 0, dim_b = 0;
  const CqChannel* cq = nullptr;
  ChannelMode channel_mode = ChannelMode::Identity;
  ChannelSearchOptions search;
};

OneShotBracket one_shot_bounds(Task task, const OneShotInputs& inputs, const EpsilonSpec& slacks);

struct PgmSimulation {
  long code_size = 0;
  double p_error = 0.0;       // exact average error of the sampled code under PGM
  double hn_bound = 0.0;      // Hayashi-Nagaoka right-hand side for the same gamma
  bool within_bound = false;  // informational only
};
// Heuristic pretty-good-measurement decoder for a random Weyl-codeword dense
// coding code; the existence lemma it probes is non-constructive.
PgmSimulation pgm_dense_coding_simulation(const Matrix& rho_ab, int dim_a, int dim_b, long m,
                                          double gamma, double c, std::uint64_t seed);

}  // namespace infospec
