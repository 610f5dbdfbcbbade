#include "infospec/states.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace infospec {

DensityOperator::DensityOperator(Matrix m, TraceClass tc) : tc_(tc) {
  HermitianOperator h(std::move(m));
  EigenSystem es = eig_decompose(h);
  const int d = h.dim();
  const double scale = std::max(1.0, std::abs(es.values(0)));
  double min_ev = es.values(d - 1);
  if (min_ev < -kPsdTol * scale)
    throw InputError("DensityOperator: negative eigenvalue " + std::to_string(min_ev));
  if (min_ev < 0.0) {
    // clamp the numerically negative tail to zero
    RealVector clamped = es.values.cwiseMax(0.0);
    mat_ = es.vectors * clamped.asDiagonal() * es.vectors.adjoint();
    mat_ = 0.5 * (mat_ + mat_.adjoint());
  } else {
    mat_ = h.matrix();
  }
  tr_ = mat_.trace().real();
  if (tc_ == TraceClass::Normalized && std::abs(tr_ - 1.0) > kTraceTol)
    throw InputError("DensityOperator: trace " + std::to_string(tr_) + " is not 1");
  if (tc_ == TraceClass::Subnormalized && tr_ > 1.0 + kTraceTol)
    throw InputError("DensityOperator: trace " + std::to_string(tr_) + " exceeds 1");
}

DensityOperator DensityOperator::pure(const Vector& amplitudes, TraceClass tc) {
  return DensityOperator(amplitudes * amplitudes.adjoint(), tc);
}

BipartitePureState::BipartitePureState(int dim_a, int dim_b, Vector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amp_(std::move(amplitudes)) {
  if (dim_a < 1 || dim_b < 1 || amp_.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw InputError("BipartitePureState: dims do not match amplitude vector");
  const double norm = amp_.norm();
  if (norm == 0.0) throw InputError("BipartitePureState: zero vector");
  if (std::abs(norm - 1.0) > kTraceTol)
    throw InputError("BipartitePureState: norm deviates from 1 by " + std::to_string(norm - 1.0));

  Matrix coeff(dim_a_, dim_b_);
  for (int i = 0; i < dim_a_; ++i)
    for (int j = 0; j < dim_b_; ++j) coeff(i, j) = amp_(i * dim_b_ + j);
  Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  schmidt_.coefficients = RealVector(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) schmidt_.coefficients(k) = sv(k) * sv(k);
  schmidt_.basis_a = svd.matrixU();
  schmidt_.basis_b = svd.matrixV().conjugate();
}

BipartitePureState BipartitePureState::from_schmidt(const RealVector& lambda) {
  const int d = static_cast<int>(lambda.size());
  double sum = lambda.sum();
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("from_schmidt: coefficients must sum to 1");
  for (int k = 1; k < d; ++k)
    if (lambda(k) > lambda(k - 1) + 1e-15) throw InputError("from_schmidt: not non-increasing");
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) amp(k * d + k) = std::sqrt(std::max(0.0, lambda(k)));
  amp /= amp.norm();
  return BipartitePureState(d, d, amp);
}

BipartitePureState BipartitePureState::maximally_entangled(int m) {
  return from_schmidt(RealVector::Constant(m, 1.0 / m));
}

Matrix BipartitePureState::density() const { return amp_ * amp_.adjoint(); }

Matrix BipartitePureState::reduced(Subsystem keep) const {
  return partial_trace(density(), dim_a_, dim_b_, keep);
}

QuantumChannel::QuantumChannel(int in_dim, int out_dim, std::vector<Matrix> kraus,
                               bool allow_trace_non_increasing)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)), tni_(allow_trace_non_increasing) {
  if (kraus_.empty()) throw InputError("QuantumChannel: no Kraus operators");
  Matrix comp = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw DimensionMismatch("QuantumChannel: Kraus operator shape mismatch");
    comp += k.adjoint() * k;
  }
  const Matrix gap = Matrix::Identity(in_dim_, in_dim_) - comp;
  if (tni_) {
    EigenSystem es = eig_decompose(gap);
    if (es.values(in_dim_ - 1) < -kCompletenessTol)
      throw InputError("QuantumChannel: sum K'K exceeds identity");
  } else if (max_abs(gap) > kCompletenessTol) {
    throw InputError("QuantumChannel: completeness residual " + std::to_string(max_abs(gap)));
  }
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != in_dim_) throw DimensionMismatch("QuantumChannel::apply: dimension mismatch");
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Matrix QuantumChannel::apply_to_a(const Matrix& rho_ab, int dim_b) const {
  if (rho_ab.rows() != static_cast<Eigen::Index>(in_dim_) * dim_b)
    throw DimensionMismatch("QuantumChannel::apply_to_a: dimension mismatch");
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim_) * dim_b, out_dim_ * dim_b);
  for (const auto& k : kraus_) {
    const Matrix kb = kron(k, eye_b);
    out += kb * rho_ab * kb.adjoint();
  }
  return out;
}

QuantumChannel QuantumChannel::identity(int dim) {
  return QuantumChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

QuantumChannel QuantumChannel::dephasing(int dim) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < dim; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    k(i, i) = 1.0;
    kraus.push_back(k);
  }
  return QuantumChannel(dim, dim, std::move(kraus));
}

PureStateEnsemble::PureStateEnsemble(RealVector probs, std::vector<Vector> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.size() == 0 || static_cast<std::size_t>(probs_.size()) != states_.size())
    throw InputError("PureStateEnsemble: probs/states size mismatch");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (probs_(i) < 0.0) throw InputError("PureStateEnsemble: negative probability");
    sum += probs_(i);
  }
  if (std::abs(sum - 1.0) > kTraceTol) throw InputError("PureStateEnsemble: probabilities sum to " + std::to_string(sum));
  const Eigen::Index d = states_[0].size();
  average_ = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].size() != d) throw DimensionMismatch("PureStateEnsemble: member dimension mismatch");
    if (std::abs(states_[i].norm() - 1.0) > 1e-9) throw InputError("PureStateEnsemble: member not normalized");
    average_ += probs_(static_cast<Eigen::Index>(i)) * (states_[i] * states_[i].adjoint());
  }
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  // ||sqrt(rho) sqrt(sigma)||_1 + sqrt((1 - tr rho)(1 - tr sigma))
  const Matrix a = sqrt_psd(rho) * sqrt_psd(sigma);
  Eigen::JacobiSVD<Matrix> svd(a);
  double f = svd.singularValues().sum();
  const double ta = std::max(0.0, 1.0 - rho.trace().real());
  const double tb = std::max(0.0, 1.0 - sigma.trace().real());
  f += std::sqrt(ta * tb);
  return std::min(f, 1.0);
}

double purified_distance(const Matrix& rho, const Matrix& sigma) {
  const double f = fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

DistanceSet distances(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("distances: dimension mismatch");
  DistanceSet out{};
  out.fidelity = fidelity(rho, sigma);
  out.purified = std::sqrt(std::max(0.0, 1.0 - out.fidelity * out.fidelity));
  Eigen::JacobiSVD<Matrix> svd(rho - sigma);
  out.trace_distance = 0.5 * svd.singularValues().sum() +
                       0.5 * std::abs(rho.trace().real() - sigma.trace().real());
  out.positive_part = positive_part_trace(rho - sigma);
  return out;
}

DistanceSet distances(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.trace_class() == TraceClass::PositiveSemidefinite ||
      sigma.trace_class() == TraceClass::PositiveSemidefinite)
    throw InputError("distances: defined for (sub)normalized states");
  return distances(rho.matrix(), sigma.matrix());
}

double von_neumann_entropy(const Matrix& rho) {
  EigenSystem es = eig_decompose(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double lam = es.values(i);
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return s;
}

}  // namespace infospec
