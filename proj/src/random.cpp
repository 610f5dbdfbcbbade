#include "infospec/random.hpp"

#include <Eigen/QR>
#include <cmath>

namespace infospec {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return splitmix64(master ^ splitmix64(h) ^ splitmix64(index + 0x51ED2700A35C4E1BULL));
}

Matrix random_ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

Matrix random_unitary(int dim, Rng& rng) {
  const Matrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the factorization is unique
  for (int i = 0; i < dim; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    if (mag > 0) q.col(i) *= rii / mag;
  }
  return q;
}

DensityOperator random_state(int dim, Rng& rng) {
  if (dim < 1) throw InputError("random_state: dim must be >= 1");
  const Matrix g = random_ginibre(dim, dim, rng);
  Matrix r = g * g.adjoint();
  r /= r.trace().real();
  return DensityOperator(std::move(r), TraceClass::Normalized);
}

DensityOperator random_positive(int dim, Rng& rng, double trace_lo, double trace_hi) {
  const Matrix g = random_ginibre(dim, dim, rng);
  Matrix r = g * g.adjoint();
  const double target = trace_lo + (trace_hi - trace_lo) * rng.uniform();
  r *= target / r.trace().real();
  return DensityOperator(std::move(r), TraceClass::PositiveSemidefinite);
}

Vector random_pure(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  v /= v.norm();
  return v;
}

BipartitePureState random_pure_bipartite(int dim_a, int dim_b, Rng& rng) {
  return BipartitePureState(dim_a, dim_b, random_pure(dim_a * dim_b, rng));
}

QuantumChannel random_cptp(int in_dim, int out_dim, Rng& rng, int kraus_rank) {
  if (kraus_rank <= 0) kraus_rank = out_dim;
  // random isometry V: C^in -> C^out (x) C^rank via orthonormalized Gaussian columns
  const int rows = out_dim * kraus_rank;
  if (rows < in_dim) throw InputError("random_cptp: rank too small for an isometry");
  Matrix g = random_ginibre(rows, in_dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(in_dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < in_dim; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    if (mag > 0) q.col(i) *= rii / mag;
  }
  std::vector<Matrix> kraus;
  for (int k = 0; k < kraus_rank; ++k) {
    Matrix a(out_dim, in_dim);
    for (int o = 0; o < out_dim; ++o) a.row(o) = q.row(o * kraus_rank + k);
    kraus.push_back(std::move(a));
  }
  return QuantumChannel(in_dim, out_dim, std::move(kraus));
}

Matrix LoPopescuMap::apply(const Matrix& rho_ab, int dim_a, int dim_b) const {
  if (rho_ab.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionMismatch("LoPopescuMap::apply: dims do not factorize the input");
  Matrix out = Matrix::Zero(rho_ab.rows(), rho_ab.cols());
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    const Matrix op = kron(unitaries[j], kraus_b[j]);
    out += op * rho_ab * op.adjoint();
  }
  return out;
}

LoPopescuMap random_lo_popescu(int dim_a, int dim_b, int terms, Rng& rng) {
  if (terms < 1) throw InputError("random_lo_popescu: terms must be >= 1");
  LoPopescuMap map;
  // stack of Gaussian blocks orthonormalized so that sum K'K = 1_B
  Matrix g = random_ginibre(dim_b * terms, dim_b, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(dim_b);
  for (int j = 0; j < terms; ++j) {
    map.unitaries.push_back(random_unitary(dim_a, rng));
    map.kraus_b.push_back(q.middleRows(static_cast<Eigen::Index>(j) * dim_b, dim_b));
  }
  return map;
}

PureStateEnsemble random_ensemble(int dim, int members, Rng& rng) {
  RealVector probs = random_prior(members, rng);
  std::vector<Vector> states;
  states.reserve(members);
  for (int i = 0; i < members; ++i) states.push_back(random_pure(dim, rng));
  return PureStateEnsemble(std::move(probs), std::move(states));
}

RealVector random_prior(int size, Rng& rng) {
  RealVector p(size);
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    p(i) = -std::log(u);  // exponential sampling gives a flat Dirichlet
    sum += p(i);
  }
  p /= sum;
  return p;
}

CommutingPair random_commuting_pair(int dim, Rng& rng, double lo, double hi) {
  RealVector p(dim), q(dim);
  auto draw = [&](RealVector& v) {
    if (dim == 2) {
      const double u = lo + (hi - lo) * rng.uniform();
      v(0) = u;
      v(1) = 1.0 - u;
      return;
    }
    for (;;) {
      double sum = 0.0;
      for (int i = 0; i < dim; ++i) {
        v(i) = lo + (hi - lo) * rng.uniform();
        sum += v(i);
      }
      v /= sum;
      if (v.minCoeff() >= lo / dim) return;
    }
  };
  draw(p);
  draw(q);
  const Matrix u = random_unitary(dim, rng);
  Matrix rho = u * p.asDiagonal() * u.adjoint();
  Matrix sig = u * q.asDiagonal() * u.adjoint();
  return CommutingPair{DensityOperator(0.5 * (rho + rho.adjoint()), TraceClass::Normalized),
                       DensityOperator(0.5 * (sig + sig.adjoint()), TraceClass::Normalized), p, q};
}

}  // namespace infospec
