#pragma once

#include <optional>
#include <vector>

#include "infospec/hermitian.hpp"

namespace infospec {

enum class TraceClass { Normalized, Subnormalized, PositiveSemidefinite };

// Positive (semi-)definite matrix with a declared trace class. Eigenvalues in
// [-kPsdTol, 0) are clamped to zero at construction.
class DensityOperator {
 public:
  DensityOperator(Matrix m, TraceClass tc);
  explicit DensityOperator(Matrix m) : DensityOperator(std::move(m), TraceClass::Normalized) {}

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  TraceClass trace_class() const { return tc_; }
  double trace() const { return tr_; }

  static DensityOperator pure(const Vector& amplitudes, TraceClass tc = TraceClass::Normalized);

 private:
  Matrix mat_;
  TraceClass tc_;
  double tr_;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // non-increasing, sum 1
  Matrix basis_a;           // columns
  Matrix basis_b;
};

class BipartitePureState {
 public:
  BipartitePureState(int dim_a, int dim_b, Vector amplitudes);

  // |psi> = sum_k sqrt(lambda_k) |e_k> (x) |f_k> from a Schmidt spectrum.
  static BipartitePureState from_schmidt(const RealVector& lambda);
  static BipartitePureState maximally_entangled(int m);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const Vector& amplitudes() const { return amp_; }
  const SchmidtDecomposition& schmidt() const { return schmidt_; }

  Matrix density() const;                 // |psi><psi|
  Matrix reduced(Subsystem keep) const;

 private:
  int dim_a_, dim_b_;
  Vector amp_;
  SchmidtDecomposition schmidt_;
};

class QuantumChannel {
 public:
  QuantumChannel(int in_dim, int out_dim, std::vector<Matrix> kraus,
                 bool allow_trace_non_increasing = false);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool trace_non_increasing() const { return tni_; }

  Matrix apply(const Matrix& rho) const;
  // (Lambda (x) id_B) rho_AB with this channel acting on the A factor.
  Matrix apply_to_a(const Matrix& rho_ab, int dim_b) const;

  static QuantumChannel identity(int dim);
  static QuantumChannel dephasing(int dim);

 private:
  int in_dim_, out_dim_;
  std::vector<Matrix> kraus_;
  bool tni_;
};

class PureStateEnsemble {
 public:
  PureStateEnsemble(RealVector probs, std::vector<Vector> states);

  int size() const { return static_cast<int>(probs_.size()); }
  int dim() const { return static_cast<int>(states_[0].size()); }
  const RealVector& probs() const { return probs_; }
  const std::vector<Vector>& states() const { return states_; }
  const Matrix& average() const { return average_; }

 private:
  RealVector probs_;
  std::vector<Vector> states_;
  Matrix average_;
};

struct DistanceSet {
  double fidelity;            // generalized fidelity F
  double purified;            // P = sqrt(1 - F^2)
  double trace_distance;      // (1/2)||rho-sigma||_1 + (1/2)|tr rho - tr sigma|
  double positive_part;       // tr(rho - sigma)_+
};

DistanceSet distances(const DensityOperator& rho, const DensityOperator& sigma);
DistanceSet distances(const Matrix& rho, const Matrix& sigma);

double fidelity(const Matrix& rho, const Matrix& sigma);  // generalized
double purified_distance(const Matrix& rho, const Matrix& sigma);

double von_neumann_entropy(const Matrix& rho);  // base 2

}  // namespace infospec
