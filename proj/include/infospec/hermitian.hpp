#pragma once

#include <vector>

#include "infospec/common.hpp"

namespace infospec {

// Validated Hermitian matrix. The constructor symmetrizes (A + A')/2 and
// rejects inputs whose anti-Hermitian residue exceeds kHermRejectTol.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

struct EigenSystem {
  RealVector values;   // non-increasing
  Matrix vectors;      // columns match values
  // Indices [group_start[k], group_start[k+1]) share an eigenvalue within the
  // tie tolerance relative to the spectral radius.
  std::vector<int> group_start;

  Matrix reconstruct() const;
};

EigenSystem eig_decompose(const HermitianOperator& a);
EigenSystem eig_decompose(const Matrix& hermitian);

// Sum of positive eigenvalues, tr(A)_+ .
double positive_part_trace(const Matrix& hermitian);

enum class Cmp { GreaterEqual, Greater, LessEqual, Less };

// Spectral projector of A - B for the selected eigenvalue range. Eigenvalues
// with |lambda| <= tie tolerance count as zero and join the non-strict side.
Matrix compare_projector(const Matrix& a, const Matrix& b, Cmp mode);

// Partial trace over the discarded factor of H_A (x) H_B.
enum class Subsystem { A, B };
Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, Subsystem keep);

// Projector onto the support (eigenvalues > tol * spectral radius).
Matrix support_projector(const Matrix& psd, double tol = kEigTieTol);

// f-calculus on the support of a PSD matrix: U f(lambda) U' over lambda > cut.
Matrix matrix_function_on_support(const Matrix& psd, double (*f)(double), double cut = 0.0);

Matrix sqrt_psd(const Matrix& psd);
Matrix inv_sqrt_psd(const Matrix& psd);  // pseudo-inverse square root on the support

}  // namespace infospec
