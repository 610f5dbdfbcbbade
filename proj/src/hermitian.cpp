#include "infospec/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace infospec {

Matrix kron(const Matrix& a, const Matrix& b) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix kron_power(const Matrix& a, int n) {
  if (n < 1) throw InputError("kron_power: n must be >= 1");
  Matrix out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

HermitianOperator::HermitianOperator(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InputError("HermitianOperator: square matrix required");
  if (!m.allFinite()) throw InputError("HermitianOperator: non-finite entries");
  Matrix sym = 0.5 * (m + m.adjoint());
  double residue = max_abs(m - sym);
  if (residue > kHermRejectTol)
    throw InputError("HermitianOperator: anti-Hermitian residue " + std::to_string(residue) +
                     " exceeds rejection tolerance");
  mat_ = std::move(sym);
}

Matrix EigenSystem::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.adjoint();
}

EigenSystem eig_decompose(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) throw InputError("eig_decompose: square matrix required");
  if (!hermitian.allFinite()) throw InputError("eig_decompose: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (hermitian + hermitian.adjoint()));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_decompose: solver failed");

  const int d = static_cast<int>(hermitian.rows());
  EigenSystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, std::abs(out.values(0)));
  const double tie = kEigTieTol * scale;
  out.group_start.push_back(0);
  for (int i = 1; i < d; ++i)
    if (out.values(i - 1) - out.values(i) > tie) out.group_start.push_back(i);
  out.group_start.push_back(d);
  return out;
}

EigenSystem eig_decompose(const HermitianOperator& a) { return eig_decompose(a.matrix()); }

double positive_part_trace(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (hermitian + hermitian.adjoint()),
                                               Eigen::EigenvaluesOnly);
  double sum = 0.0;
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) sum += ev(i);
  return sum;
}

Matrix compare_projector(const Matrix& a, const Matrix& b, Cmp mode) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("compare_projector: dimension mismatch");
  const Matrix diff = a - b;
  EigenSystem es = eig_decompose(diff);
  const int d = static_cast<int>(diff.rows());
  const double scale = std::max({1.0, std::abs(es.values(0)), std::abs(es.values(d - 1))});
  const double tie = kEigTieTol * scale;

  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = es.values(i);
    const bool is_zero = std::abs(lam) <= tie;
    bool pick = false;
    switch (mode) {
      case Cmp::GreaterEqual: pick = lam > tie || is_zero; break;
      case Cmp::Greater:      pick = lam > tie; break;
      case Cmp::LessEqual:    pick = lam < -tie || is_zero; break;
      case Cmp::Less:         pick = lam < -tie; break;
    }
    if (pick) p += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  return p;
}

Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, Subsystem keep) {
  if (rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || rho.rows() != rho.cols())
    throw DimensionMismatch("partial_trace: dims do not factorize the matrix");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k) out(i, j) += rho(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k) out(i, j) += rho(k * dim_b + i, k * dim_b + j);
  return out;
}

Matrix support_projector(const Matrix& psd, double tol) {
  EigenSystem es = eig_decompose(psd);
  const int d = static_cast<int>(psd.rows());
  const double cut = tol * std::max(1.0, std::abs(es.values(0)));
  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (es.values(i) > cut) p += es.vectors.col(i) * es.vectors.col(i).adjoint();
  return p;
}

Matrix matrix_function_on_support(const Matrix& psd, double (*f)(double), double cut) {
  EigenSystem es = eig_decompose(psd);
  const int d = static_cast<int>(psd.rows());
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (es.values(i) > cut) out += f(es.values(i)) * (es.vectors.col(i) * es.vectors.col(i).adjoint());
  return out;
}

Matrix sqrt_psd(const Matrix& psd) {
  EigenSystem es = eig_decompose(psd);
  const int d = static_cast<int>(psd.rows());
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = std::max(0.0, es.values(i));
    out += std::sqrt(lam) * (es.vectors.col(i) * es.vectors.col(i).adjoint());
  }
  return out;
}

Matrix inv_sqrt_psd(const Matrix& psd) {
  EigenSystem es = eig_decompose(psd);
  const int d = static_cast<int>(psd.rows());
  const double cut = kEigTieTol * std::max(1.0, std::abs(es.values(0)));
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (es.values(i) > cut)
      out += (1.0 / std::sqrt(es.values(i))) * (es.vectors.col(i) * es.vectors.col(i).adjoint());
  return out;
}

}  // namespace infospec
