#include "infospec/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "infospec/optim.hpp"

namespace infospec {

namespace {

constexpr double kDegenerateV = 1e-20;

ExpansionCoefficients make_coeffs(Task task, double a, double sqrt_v, double quantile_sign,
                                  double epsilon, RemainderTag tag) {
  ExpansionCoefficients c;
  c.task = task;
  c.eps = epsilon;
  c.a = a;
  c.dispersion = sqrt_v;
  c.b = quantile_sign * sqrt_v * normal_quantile(epsilon);
  c.remainder = tag;
  c.degenerate = sqrt_v * sqrt_v <= kDegenerateV;
  return c;
}

// spectrum-only stats against the identity: S, V = tr[rho (log rho)^2] - S^2
void entropy_stats(const RealVector& spectrum, double& s_out, double& v_out) {
  double s = 0.0, mass = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double lam = spectrum(i);
    if (lam > 0.0) {
      s -= lam * std::log2(lam);
      mass += lam;
    }
  }
  double v = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double lam = spectrum(i);
    if (lam > 0.0) {
      const double x = -std::log2(lam) - s / mass;
      v += lam * x * x;
    }
  }
  s_out = s;
  v_out = std::max(0.0, v);
}

}  // namespace

ExpansionCoefficients divergence_expansion(const Matrix& rho, const Matrix& sigma, double epsilon,
                                           Direction dir) {
  const RelEntStats st = relative_entropy_stats(rho, sigma);
  if (st.infinite) throw InputError("divergence_expansion: supp(rho) not within supp(sigma)");
  const double sign = dir == Direction::Underline ? 1.0 : -1.0;
  return make_coeffs(Task::Divergence, st.D, st.s, sign, epsilon, RemainderTag::LogN);
}

ExpansionCoefficients source_coding_expansion(const Matrix& rho, double epsilon) {
  EigenSystem es = eig_decompose(rho);
  double s, v;
  entropy_stats(es.values, s, v);
  return make_coeffs(Task::SourceVisible, s, std::sqrt(v), -1.0, epsilon, RemainderTag::LogN);
}

BlindBracket source_coding_expansion_blind(const Matrix& rho, double epsilon) {
  EigenSystem es = eig_decompose(rho);
  double s, v;
  entropy_stats(es.values, s, v);
  BlindBracket br;
  br.lower = make_coeffs(Task::SourceBlind, s, std::sqrt(v), -1.0, epsilon, RemainderTag::LogN);
  // the upper bracket of the eps-error task carries the halved quantile
  br.upper = make_coeffs(Task::SourceBlind, s, std::sqrt(v), -1.0, epsilon / 2.0, RemainderTag::LogN);
  return br;
}

namespace {

// Stinespring parametrization: an unconstrained complex (d*env) x d matrix is
// orthonormalized into an isometry; Kraus blocks follow.
QuantumChannel channel_from_params(const RealVector& x, int dim, int env) {
  Matrix g(dim * env, dim);
  int idx = 0;
  for (int i = 0; i < dim * env; ++i)
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(x(idx), x(idx + 1));
      idx += 2;
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(dim);
  std::vector<Matrix> kraus;
  for (int k = 0; k < env; ++k) {
    Matrix a(dim, dim);
    for (int o = 0; o < dim; ++o) a.row(o) = q.row(o * env + k);
    kraus.push_back(std::move(a));
  }
  return QuantumChannel(dim, dim, std::move(kraus));
}

}  // namespace

DenseCodingExpansion dense_coding_expansion(const Matrix& rho_ab, int dim_a, int dim_b,
                                            double epsilon, ChannelMode mode,
                                            const ChannelSearchOptions& opts) {
  if (rho_ab.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionMismatch("dense_coding_expansion: dims mismatch");
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, Subsystem::B);
  const double s_b = von_neumann_entropy(rho_b);
  const double log_da = std::log2(static_cast<double>(dim_a));
  const Matrix denom = kron(Matrix::Identity(dim_a, dim_a), rho_b);

  auto evaluate = [&](const Matrix& sigma_ab) {
    struct Eval {
      double entropy;
      double dispersion;
    };
    const RelEntStats st = relative_entropy_stats(sigma_ab, denom);
    return Eval{von_neumann_entropy(sigma_ab), st.s};
  };

  QuantumChannel best_channel = QuantumChannel::identity(dim_a);
  auto id_eval = evaluate(rho_ab);
  double best_entropy = id_eval.entropy;
  double best_dispersion = id_eval.dispersion;

  if (mode == ChannelMode::Optimize) {
    const int env = dim_a * dim_a;
    auto consider = [&](const QuantumChannel& ch) {
      const Matrix sigma = ch.apply_to_a(rho_ab, dim_b);
      const auto ev = evaluate(sigma);
      // best first-order coefficient wants min entropy; among ties (within the
      // search tolerance) the theorem takes the larger dispersion
      if (ev.entropy < best_entropy - opts.tol) {
        best_entropy = ev.entropy;
        best_dispersion = ev.dispersion;
        best_channel = ch;
      } else if (ev.entropy <= best_entropy + opts.tol && ev.dispersion > best_dispersion) {
        best_dispersion = ev.dispersion;
        best_channel = ch;
      }
    };
    consider(QuantumChannel::dephasing(dim_a));
    for (int s = 0; s < opts.starts; ++s) {
      Rng rng(sub_seed(opts.seed, "dense-coding-start", static_cast<std::uint64_t>(s)));
      RealVector x(2 * dim_a * env * dim_a);
      for (int i = 0; i < x.size(); ++i) x(i) = rng.gaussian();
      auto f = [&](const RealVector& v) {
        return von_neumann_entropy(channel_from_params(v, dim_a, env).apply_to_a(rho_ab, dim_b));
      };
      SimplexOptions so;
      so.max_iters = opts.max_iters;
      so.tol = opts.tol;
      SimplexResult r = nelder_mead(f, x, so);
      consider(channel_from_params(r.x, dim_a, env));
    }
  }

  DenseCodingExpansion out{make_coeffs(Task::DenseCoding, log_da + s_b - best_entropy,
                                       best_dispersion, +1.0, epsilon, RemainderTag::LogN),
                           best_channel};
  return out;
}

ExpansionCoefficients entanglement_expansion(const BipartitePureState& psi, double epsilon,
                                             Task task) {
  if (task != Task::Distill && task != Task::Dilute)
    throw InputError("entanglement_expansion: task must be distill or dilute");
  double s, v;
  entropy_stats(psi.schmidt().coefficients, s, v);
  const double sign = task == Task::Distill ? +1.0 : -1.0;
  return make_coeffs(task, s, std::sqrt(v), sign, epsilon, RemainderTag::LogN);
}

IrreversibilityGap irreversibility_gap(const BipartitePureState& psi, double epsilon, double delta,
                                       long n) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5) || !(delta > 0.0) || !(delta < 0.5))
    throw InputError("irreversibility_gap: epsilon and delta must lie in (0, 1/2)");
  if (n < 1) throw InputError("irreversibility_gap: n must be >= 1");
  double s, v;
  entropy_stats(psi.schmidt().coefficients, s, v);
  IrreversibilityGap out;
  if (v <= kDegenerateV) {
    out.degenerate = true;
    return out;  // maximally entangled inputs are reversible at this order
  }
  out.coefficient = -std::sqrt(v) * (normal_quantile(delta) + normal_quantile(epsilon));
  out.gap_bits = out.coefficient * std::sqrt(static_cast<double>(n));
  const double n_star = 1.0 / (out.coefficient * out.coefficient);
  out.crossover_n = static_cast<long>(std::ceil(n_star - 1e-12));
  if (out.crossover_n < 1) out.crossover_n = 1;
  return out;
}

Matrix CqChannel::average(const RealVector& p) const {
  Matrix w = Matrix::Zero(dim_b(), dim_b());
  for (int x = 0; x < alphabet(); ++x) w += p(x) * outputs[x];
  return w;
}

Matrix CqChannel::cq_state(const RealVector& p) const {
  const int k = alphabet(), d = dim_b();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k) * d);
  for (int x = 0; x < k; ++x)
    out.block(static_cast<Eigen::Index>(x) * d, static_cast<Eigen::Index>(x) * d, d, d) =
        p(x) * outputs[x];
  return out;
}

double holevo_information(const CqChannel& w, const RealVector& p) {
  const Matrix avg = w.average(p);
  double i = von_neumann_entropy(avg);
  for (int x = 0; x < w.alphabet(); ++x)
    if (p(x) > 0.0) i -= p(x) * von_neumann_entropy(w.outputs[x]);
  return i;
}

namespace {

struct BaRun {
  RealVector prior;
  double info;
  double upper;  // max_x D(W_x || W_bar), a capacity upper bound
};

BaRun blahut_arimoto(const CqChannel& w, RealVector p, double tol, long max_iters) {
  const int k = w.alphabet();
  double info = 0.0, upper = 0.0;
  for (long it = 0; it < max_iters; ++it) {
    const Matrix avg = w.average(p);
    std::vector<double> dvals(k);
    info = 0.0;
    upper = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < k; ++x) {
      dvals[x] = relative_entropy_stats(w.outputs[x], avg).D;
      info += p(x) * dvals[x];
      upper = std::max(upper, dvals[x]);
    }
    if (upper - info <= tol) return {p, info, upper};
    double norm = 0.0;
    for (int x = 0; x < k; ++x) {
      p(x) *= std::exp2(dvals[x] - upper);  // shift for stability
      norm += p(x);
    }
    p /= norm;
  }
  throw std::runtime_error("cq_capacity: alternating maximization did not converge, residual " +
                           std::to_string(upper - info));
}

double cq_dispersion(const CqChannel& w, const RealVector& p) {
  const Matrix rho_xb = w.cq_state(p);
  const int k = w.alphabet();
  Matrix rho_x = Matrix::Zero(k, k);
  for (int x = 0; x < k; ++x) rho_x(x, x) = p(x);
  // V(rho_XB || rho_X (x) rho_B); supp(rho_XB) is inside supp(denom)
  return relative_entropy_stats(rho_xb, kron(rho_x, w.average(p))).V;
}

}  // namespace

DispersionSet cq_capacity(const CqChannel& w, const CapacityOptions& opts) {
  if (w.outputs.empty()) throw InputError("cq_capacity: empty alphabet");
  for (const auto& m : w.outputs)
    if (std::abs(m.trace().real() - 1.0) > 1e-9)
      throw InputError("cq_capacity: channel outputs must be normalized");
  const int k = w.alphabet();

  const BaRun main = blahut_arimoto(w, RealVector::Constant(k, 1.0 / k), opts.tol, opts.max_iters);

  DispersionSet out;
  out.capacity = main.info;

  // collect the maximizer set from perturbed restarts
  std::vector<BaRun> runs{main};
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(sub_seed(opts.seed, "cq-restart", static_cast<std::uint64_t>(r)));
    RealVector p0 = random_prior(k, rng);
    try {
      runs.push_back(blahut_arimoto(w, p0, std::min(1e-8, opts.tol * 100), opts.max_iters));
      out.capacity = std::max(out.capacity, runs.back().info);
    } catch (const std::runtime_error&) {
      // a non-converged restart contributes no candidate
    }
  }
  std::vector<RealVector> candidates;
  for (const BaRun& run : runs)
    if (run.info >= out.capacity - out.maximizer_tol) candidates.push_back(run.prior);
  for (const RealVector& c : candidates) {
    bool dup = false;
    for (const RealVector& kept : out.maximizer_set)
      if ((c - kept).cwiseAbs().maxCoeff() < 1e-4) {
        dup = true;
        break;
      }
    if (!dup) out.maximizer_set.push_back(c);
  }

  out.v_min = std::numeric_limits<double>::infinity();
  out.v_max = -std::numeric_limits<double>::infinity();
  for (const RealVector& p : out.maximizer_set) {
    const double v = cq_dispersion(w, p);
    out.v_min = std::min(out.v_min, v);
    out.v_max = std::max(out.v_max, v);
  }
  return out;
}

ExpansionCoefficients cq_expansion(const CqChannel& w, double epsilon,
                                   const CapacityOptions& opts) {
  const DispersionSet ds = cq_capacity(w, opts);
  const double v_eps = ds.v_eps(epsilon);
  ExpansionCoefficients c = make_coeffs(Task::CqChannel, ds.capacity, std::sqrt(std::max(0.0, v_eps)),
                                        +1.0, epsilon, RemainderTag::SqrtN);
  c.degenerate = ds.v_min <= kDegenerateV;
  return c;
}

}  // namespace infospec
