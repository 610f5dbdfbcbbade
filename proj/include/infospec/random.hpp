#pragma once

#include <cstdint>
#include <random>

#include "infospec/states.hpp"

namespace infospec {

// Named generator: mt19937_64 with Box-Muller Gaussians. std::mt19937_64 is
// pinned by the standard and Box-Muller avoids the implementation-defined
// std::normal_distribution, so outputs are bit-reproducible given the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double gaussian();
  Complex complex_gaussian() { double re = gaussian(); double im = gaussian(); return {re, im}; }
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
// Deterministic per-(tag, index) seed derivation from a master seed.
std::uint64_t sub_seed(std::uint64_t master, std::string_view tag, std::uint64_t index);

// Ginibre-style instance generation; every output is a pure function of the
// arguments.
Matrix random_ginibre(int rows, int cols, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);
DensityOperator random_state(int dim, Rng& rng);
// Full-rank positive operator with trace drawn in [trace_lo, trace_hi].
DensityOperator random_positive(int dim, Rng& rng, double trace_lo = 0.5, double trace_hi = 2.0);
Vector random_pure(int dim, Rng& rng);
BipartitePureState random_pure_bipartite(int dim_a, int dim_b, Rng& rng);
QuantumChannel random_cptp(int in_dim, int out_dim, Rng& rng, int kraus_rank = 0);

struct LoPopescuMap {
  std::vector<Matrix> unitaries;  // U_j on A
  std::vector<Matrix> kraus_b;    // K_j on B, sum K'K = 1_B
  Matrix apply(const Matrix& rho_ab, int dim_a, int dim_b) const;
};
LoPopescuMap random_lo_popescu(int dim_a, int dim_b, int terms, Rng& rng);

PureStateEnsemble random_ensemble(int dim, int members, Rng& rng);
RealVector random_prior(int size, Rng& rng);

// Pair of commuting states (shared eigenbasis) with spectra bounded away from
// the boundary; used for classical cross-check instances.
struct CommutingPair {
  DensityOperator rho;
  DensityOperator sigma;
  RealVector p;  // spectra in the shared basis
  RealVector q;
};
CommutingPair random_commuting_pair(int dim, Rng& rng, double lo = 0.1, double hi = 0.9);

}  // namespace infospec
