#include "infospec/divergences.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "infospec/optim.hpp"

namespace infospec {

namespace {

constexpr double kOffSupportTol = 1e-12;

void check_pair(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("divergences: dimension mismatch");
}

// rho-mass that sigma never dominates: tr(Pbar rho Pbar) on ker(sigma).
double off_support_mass(const Matrix& rho, const Matrix& sigma) {
  const int d = static_cast<int>(rho.rows());
  const Matrix pbar = Matrix::Identity(d, d) - support_projector(sigma);
  return (pbar * rho * pbar).trace().real();
}

// Generalized eigenvalues of the (rho, sigma) pencil on supp(sigma).
RealVector pencil_eigenvalues(const Matrix& rho, const Matrix& sigma) {
  const Matrix is = inv_sqrt_psd(sigma);
  return eig_decompose(is * rho * is).values;
}

struct GammaBracket {
  double lo, hi;
};

GammaBracket initial_bracket(const Matrix& rho, const Matrix& sigma) {
  const RealVector w = pencil_eigenvalues(rho, sigma);
  double wmax = 0.0, wmin_pos = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > wmax) wmax = w(i);
    if (w(i) > kOffSupportTol && (wmin_pos == 0.0 || w(i) < wmin_pos)) wmin_pos = w(i);
  }
  if (wmax <= 0.0) return {-60.0, 2.0};
  if (wmin_pos == 0.0) wmin_pos = wmax;
  return {std::log2(wmin_pos) - 2.0, std::log2(wmax) + 2.0};
}

}  // namespace

void EpsilonSpec::validate() const {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("EpsilonSpec: epsilon must lie in (0,1)");
  if (eta && !(*eta > 0.0)) throw InputError("EpsilonSpec: eta must be positive");
  if (delta && !(*delta > 0.0)) throw InputError("EpsilonSpec: delta must be positive");
  if (c && !(*c > 0.0)) throw InputError("EpsilonSpec: c must be positive");
}

double trace_gap(const Matrix& rho, const Matrix& sigma, double gamma) {
  check_pair(rho, sigma);
  return positive_part_trace(rho - std::exp2(gamma) * sigma);
}

DivergenceResult info_spectrum_divergence(const Matrix& rho, const Matrix& sigma, double epsilon,
                                          Direction dir) {
  check_pair(rho, sigma);
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("info_spectrum_divergence: epsilon out of (0,1)");
  const double tr_rho = rho.trace().real();
  if (std::abs(tr_rho - 1.0) > 1e-9)
    throw InputError("info_spectrum_divergence: rho must be normalized");
  if (support_projector(sigma).trace().real() < 0.5)
    throw InputError("info_spectrum_divergence: sigma has empty support");

  const double target = dir == Direction::Underline ? 1.0 - epsilon : epsilon;
  const double floor_mass = off_support_mass(rho, sigma);
  DivergenceResult res;
  res.tol = kGammaBracketTol;
  if (target <= floor_mass + kOffSupportTol && floor_mass > kOffSupportTol) {
    // the never-dominated mass keeps T(gamma) above the target for every gamma
    res.infinite = true;
    res.gamma = std::numeric_limits<double>::infinity();
    res.achieved_gap = floor_mass;
    return res;
  }

  GammaBracket br = initial_bracket(rho, sigma);
  // expand until the bracket is valid: T(lo) >= target >= T(hi)
  for (int i = 0; i < 200 && trace_gap(rho, sigma, br.lo) < target; ++i) br.lo -= 4.0;
  for (int i = 0; i < 200 && trace_gap(rho, sigma, br.hi) > target; ++i) br.hi += 4.0;

  double lo = br.lo, hi = br.hi;
  while (hi - lo > kGammaBracketTol) {
    const double mid = 0.5 * (lo + hi);
    if (trace_gap(rho, sigma, mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  res.gamma = 0.5 * (lo + hi);
  res.achieved_gap = trace_gap(rho, sigma, res.gamma);
  res.bracket = {lo, hi};
  return res;
}

ThDivergence ds_tomamichel_hayashi(const Matrix& rho, const Matrix& sigma, double epsilon) {
  check_pair(rho, sigma);
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("ds_tomamichel_hayashi: epsilon out of (0,1)");

  // g(gamma) = tr[rho {rho <= 2^gamma sigma}] is nondecreasing in gamma.
  auto g = [&](double gamma) {
    const Matrix q = compare_projector(rho, std::exp2(gamma) * sigma, Cmp::LessEqual);
    return (q * rho).trace().real();
  };

  ThDivergence out;
  const double mass_cap = 1.0 - off_support_mass(rho, sigma);
  if (mass_cap <= epsilon + kOffSupportTol) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  GammaBracket br = initial_bracket(rho, sigma);
  for (int i = 0; i < 200 && g(br.lo) > epsilon; ++i) br.lo -= 4.0;
  for (int i = 0; i < 200 && g(br.hi) <= epsilon; ++i) br.hi += 4.0;

  double lo = br.lo, hi = br.hi;  // g(lo) <= eps < g(hi)
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= epsilon)
      lo = mid;
    else
      hi = mid;
  }
  double value = lo;

  // snap to a pencil breakpoint just above the bisection endpoint; the sup of
  // a step segment is the breakpoint itself, approached from the left. Never
  // snap below the certified-feasible endpoint beyond rounding.
  const RealVector w = pencil_eigenvalues(rho, sigma);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > kOffSupportTol) {
      const double bp = std::log2(w(i));
      if (bp >= value - 1e-10 && bp <= value + 1e-7) {
        value = bp;
        break;
      }
    }
  }
  out.value = value;
  out.left_limit = g(value) > epsilon;
  return out;
}

HypothesisTest hypothesis_testing_divergence(const Matrix& rho, const Matrix& sigma,
                                             double epsilon) {
  check_pair(rho, sigma);
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("hypothesis_testing_divergence: epsilon out of (0,1)");
  const int d = static_cast<int>(rho.rows());

  // orthonormal basis of supp(sigma); the complementary projector costs nothing
  // and is always part of the optimal test
  EigenSystem sig_es = eig_decompose(sigma);
  const double sig_cut = kEigTieTol * std::max(1.0, std::abs(sig_es.values(0)));
  int rank = 0;
  while (rank < d && sig_es.values(rank) > sig_cut) ++rank;
  const Matrix basis = sig_es.vectors.leftCols(rank);
  const Matrix off = Matrix::Identity(d, d) - basis * basis.adjoint();
  const double free_mass = (off * rho * off).trace().real();

  HypothesisTest out;
  if (free_mass >= 1.0 - epsilon - kOffSupportTol && free_mass > kOffSupportTol) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    out.optimal_test = off;
    out.type1_pass = free_mass;
    out.beta = 0.0;
    return out;
  }

  const Matrix rho_r = basis.adjoint() * rho * basis;
  const Matrix sigma_r = basis.adjoint() * sigma * basis;
  const double target = 1.0 - epsilon - free_mass;

  // Neyman-Pearson threshold test Q = {rho > nu sigma} + t Pi_ker; the pass
  // probability nu -> tr[rho {rho > nu sigma}] is nonincreasing
  auto strict_pass = [&](double nu) {
    const Matrix p = compare_projector(rho_r, nu * sigma_r, Cmp::Greater);
    return (p * rho_r).trace().real();
  };

  const Matrix is = inv_sqrt_psd(sigma_r);
  const double numax = eig_decompose(is * rho_r * is).values(0);
  double lo = 0.0, hi = std::max(1.0, numax * 1.5 + 1.0);
  for (int iter = 0; iter < 160; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (strict_pass(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  const double nu = 0.5 * (lo + hi);

  // classify the critical eigenspace with a band that widens until the
  // fractional weight can reach the constraint; the bisection parks nu at the
  // projector tie tolerance, so the crossing eigenvalue sits near that scale
  const Matrix diff = rho_r - nu * sigma_r;
  EigenSystem es = eig_decompose(diff);
  const double scale = std::max({1.0, std::abs(es.values(0)), std::abs(es.values(rank - 1))});
  const int dr = rank;
  Matrix p_strict, p_ker;
  double a = 0.0, jump = 0.0;
  for (double band = 1e-11 * scale;; band *= 10.0) {
    p_strict = Matrix::Zero(dr, dr);
    p_ker = Matrix::Zero(dr, dr);
    for (int i = 0; i < dr; ++i) {
      const Matrix proj = es.vectors.col(i) * es.vectors.col(i).adjoint();
      if (es.values(i) > band)
        p_strict += proj;
      else if (es.values(i) > -band)
        p_ker += proj;
    }
    a = (p_strict * rho_r).trace().real();
    jump = (p_ker * rho_r).trace().real();
    if (a <= target + 1e-12 || band > scale) break;
  }
  double t = 0.0;
  if (jump > 1e-13) t = std::clamp((target - a) / jump, 0.0, 1.0);

  const Matrix q_r = p_strict + t * p_ker;
  Matrix q = basis * q_r * basis.adjoint() + off;
  out.optimal_test = q;
  out.type1_pass = (q * rho).trace().real();
  out.beta = std::max(0.0, (q * sigma).trace().real());
  if (std::abs(out.type1_pass - (1.0 - epsilon)) > kGapTol)
    throw CertificateError("hypothesis_testing_divergence: Neyman-Pearson constraint missed by " +
                           std::to_string(out.type1_pass - (1.0 - epsilon)));
  out.value = -std::log2(out.beta);
  return out;
}

DmaxWitness dmax_witness_at(const Matrix& rho, const Matrix& sigma, double gamma) {
  check_pair(rho, sigma);
  const Matrix sp = std::exp2(gamma) * sigma;
  EigenSystem es = eig_decompose(rho - sp);
  const int d = static_cast<int>(rho.rows());
  Matrix delta = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (es.values(i) > 0.0) delta += es.values(i) * (es.vectors.col(i) * es.vectors.col(i).adjoint());

  const Matrix g = sqrt_psd(sp) * inv_sqrt_psd(sp + delta);
  DmaxWitness w;
  w.state = g * rho * g.adjoint();
  w.state = 0.5 * (w.state + w.state.adjoint());
  w.purified = purified_distance(rho, w.state);
  w.dominance_gap = eig_decompose(w.state - sp).values(0);
  return w;
}

MaxDivergence max_divergence(const Matrix& rho, const Matrix& sigma, double epsilon) {
  check_pair(rho, sigma);
  if (epsilon < 0.0) throw InputError("max_divergence: epsilon must be >= 0");

  MaxDivergence out;
  if (off_support_mass(rho, sigma) > kSupportTol && epsilon == 0.0) {
    out.infinite = true;
    out.lower = out.upper = std::numeric_limits<double>::infinity();
    return out;
  }

  const Matrix is = inv_sqrt_psd(sigma);
  const double lam_max = eig_decompose(is * rho * is).values(0);
  const double dmax0 = std::log2(lam_max);
  if (epsilon == 0.0) {
    out.exact = true;
    out.lower = out.upper = dmax0;
    return out;
  }

  // upper bound: smooth at gamma = overline-Ds at eps^2/8, shifted by 1e-6
  const double eps_gap = std::min(0.999999, epsilon * epsilon / 8.0);
  const DivergenceResult over = info_spectrum_divergence(rho, sigma, eps_gap, Direction::Overline);
  const double gamma = over.gamma + 1e-6;
  DmaxWitness w = dmax_witness_at(rho, sigma, gamma);
  if (w.dominance_gap > 1e-9)
    throw CertificateError("max_divergence: witness dominance failed, gap " +
                           std::to_string(w.dominance_gap));
  if (w.purified > epsilon + 1e-9)
    throw CertificateError("max_divergence: witness distance " + std::to_string(w.purified) +
                           " exceeds smoothing radius " + std::to_string(epsilon));
  out.upper = gamma;
  out.witness = w.state;

  // lower bound: dual tests 2^lambda >= (tr[Q rho] - eps) / tr[Q sigma] for any
  // 0 <= Q <= 1 (the smoothed state is within generalized trace distance eps)
  out.lower = -std::numeric_limits<double>::infinity();
  for (double e2 : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    HypothesisTest ht = hypothesis_testing_divergence(rho, sigma, e2);
    if (ht.infinite) continue;
    const double num = ht.type1_pass - epsilon;
    if (num <= 0.0 || ht.beta <= 0.0) continue;
    out.lower = std::max(out.lower, std::log2(num) - std::log2(ht.beta));
  }
  out.lower = std::min(out.lower, out.upper);
  return out;
}

RelEntStats relative_entropy_stats(const Matrix& rho, const Matrix& sigma) {
  check_pair(rho, sigma);
  RelEntStats out;
  if (off_support_mass(rho, sigma) > kSupportTol) {
    out.infinite = true;
    out.D = std::numeric_limits<double>::infinity();
    out.V = 0.0;
    out.s = 0.0;
    return out;
  }
  // K = log2(rho) - log2(sigma) with logs taken on the supports; the variance
  // uses the centered form tr[rho (K - D)^2] so flat spectra cancel exactly
  const int d = static_cast<int>(rho.rows());
  const Matrix log_rho = matrix_function_on_support(rho, &log2_safe);
  const Matrix log_sigma = matrix_function_on_support(sigma, &log2_safe);
  const Matrix k = log_rho - log_sigma;
  const double d_val = (rho * k).trace().real();
  const Matrix centered = k - d_val * Matrix::Identity(d, d);
  const double v = (rho * centered * centered).trace().real();
  out.D = d_val;
  out.V = std::max(0.0, v);
  out.s = std::sqrt(out.V);
  return out;
}

namespace {

DivergenceResult child_divergence(const Matrix& num, const Matrix& den, double epsilon,
                                  Direction dir) {
  return info_spectrum_divergence(num, den, epsilon, dir);
}

}  // namespace

DerivedEntropyResult info_spectrum_mutual(const Matrix& rho_ab, int dim_a, int dim_b,
                                          double epsilon, Direction dir,
                                          const MutualSearchOptions& opts) {
  const Matrix rho_a = partial_trace(rho_ab, dim_a, dim_b, Subsystem::A);
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, Subsystem::B);

  auto objective = [&](const Matrix& sigma_b) {
    const DivergenceResult r = child_divergence(rho_ab, kron(rho_a, sigma_b), epsilon, dir);
    return r.infinite ? std::numeric_limits<double>::infinity() : r.gamma;
  };

  DerivedEntropyResult out;
  out.upper_envelope = true;
  double best = objective(rho_b);  // anchor
  Matrix best_sigma = rho_b;

  for (int s = 0; s < opts.starts; ++s) {
    Rng rng(sub_seed(opts.seed, "mutual-start", static_cast<std::uint64_t>(s)));
    RealVector x(dim_b * dim_b);
    for (int i = 0; i < x.size(); ++i) x(i) = 0.5 * rng.gaussian();
    auto f = [&](const RealVector& v) { return objective(hermitian_param_to_state(v, dim_b)); };
    SimplexOptions so;
    so.max_iters = opts.max_iters;
    so.tol = opts.tol;
    SimplexResult r = nelder_mead(f, x, so);
    if (r.value < best) {
      best = r.value;
      best_sigma = hermitian_param_to_state(r.x, dim_b);
    }
  }
  out.value = best;
  out.sigma_b = best_sigma;
  return out;
}

DerivedEntropyResult derived_entropy(EntropyKind kind, Direction dir, const Matrix& state,
                                     double epsilon, int dim_a, int dim_b,
                                     const MutualSearchOptions& opts) {
  DerivedEntropyResult out;
  switch (kind) {
    case EntropyKind::Entropy: {
      const int d = static_cast<int>(state.rows());
      const Matrix eye = Matrix::Identity(d, d);
      // underline-H = -overline-D, overline-H = -underline-D
      const Direction flip = dir == Direction::Underline ? Direction::Overline : Direction::Underline;
      const DivergenceResult r = child_divergence(state, eye, epsilon, flip);
      out.value = -r.gamma;
      out.infinite = r.infinite;
      return out;
    }
    case EntropyKind::Conditional: {
      if (dim_a <= 0 || dim_b <= 0) throw InputError("derived_entropy: bipartite dims required");
      const Matrix rho_b = partial_trace(state, dim_a, dim_b, Subsystem::B);
      const Matrix den = kron(Matrix::Identity(dim_a, dim_a), rho_b);
      const Direction flip = dir == Direction::Underline ? Direction::Overline : Direction::Underline;
      const DivergenceResult r = child_divergence(state, den, epsilon, flip);
      out.value = -r.gamma;
      out.infinite = r.infinite;
      return out;
    }
    case EntropyKind::Mutual:
      if (dim_a <= 0 || dim_b <= 0) throw InputError("derived_entropy: bipartite dims required");
      return info_spectrum_mutual(state, dim_a, dim_b, epsilon, dir, opts);
  }
  throw InputError("derived_entropy: unknown kind");
}

}  // namespace infospec
