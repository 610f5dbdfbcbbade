#include "infospec/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace infospec {

namespace {

double underline_entropy(const Matrix& rho, double epsilon) {
  // \underline H_s^eps = -overline-D_s^eps(rho || 1)
  const int d = static_cast<int>(rho.rows());
  return -info_spectrum_divergence(rho, Matrix::Identity(d, d), epsilon, Direction::Overline).gamma;
}

double overline_entropy(const Matrix& rho, double epsilon) {
  // \bar H_s^eps = -underline-D_s^eps(rho || 1)
  const int d = static_cast<int>(rho.rows());
  return -info_spectrum_divergence(rho, Matrix::Identity(d, d), epsilon, Direction::Underline).gamma;
}

double overline_conditional(const Matrix& rho_ab, int dim_a, int dim_b, double epsilon) {
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, Subsystem::B);
  const Matrix den = kron(Matrix::Identity(dim_a, dim_a), rho_b);
  return -info_spectrum_divergence(rho_ab, den, epsilon, Direction::Underline).gamma;
}

long projector_rank(const Matrix& p) { return std::lround(p.trace().real()); }

}  // namespace

MajorizationCertificate majorization_check(const RealVector& source, const RealVector& target) {
  if (source.size() != target.size())
    throw InputError("majorization_check: spectra must share a padded length");
  const int d = static_cast<int>(source.size());
  for (int i = 1; i < d; ++i) {
    if (source(i) > source(i - 1) + 1e-12 || target(i) > target(i - 1) + 1e-12)
      throw InputError("majorization_check: spectra must be non-increasing");
  }
  MajorizationCertificate cert;
  cert.source_spectrum = source;
  cert.target_spectrum = target;
  cert.partial_sums_ok.resize(d);
  cert.valid = true;
  double ps = 0.0, pt = 0.0;
  for (int i = 0; i < d; ++i) {
    ps += source(i);
    pt += target(i);
    const double slack = pt - ps;
    const bool ok = i + 1 == d ? std::abs(slack) <= 1e-10 : slack >= -1e-10;
    cert.partial_sums_ok[i] = ok;
    if (!ok) {
      cert.valid = false;
      cert.worst_violation = std::max(cert.worst_violation, i + 1 == d ? std::abs(slack) : -slack);
    }
  }
  return cert;
}

CodeRecord visible_code(const PureStateEnsemble& ensemble, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("visible_code: epsilon out of (0,1)");
  const Matrix& rho = ensemble.average();
  const int d = static_cast<int>(rho.rows());
  const double gamma = overline_entropy(rho, epsilon);
  const Matrix p = compare_projector(rho, std::exp2(-gamma) * Matrix::Identity(d, d),
                                     Cmp::GreaterEqual);

  CodeRecord rec;
  rec.gamma = gamma;
  rec.m = projector_rank(p);
  rec.merit = FigureOfMerit::EnsembleAverage;
  double fbar = 0.0;
  for (int i = 0; i < ensemble.size(); ++i) {
    const Vector& psi = ensemble.states()[i];
    const double overlap = (psi.adjoint() * p * psi).value().real();
    // V: psi -> P psi P / tr(P psi): the decoded overlap collapses to tr(P psi)
    if (overlap <= 1e-14) rec.junk_signals.push_back(i);
    fbar += ensemble.probs()(i) * overlap;
  }
  rec.value = fbar;
  rec.fidelity_sq = fbar;
  return rec;
}

CodeRecord blind_code(const DensityOperator& rho, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("blind_code: epsilon out of (0,1)");
  const int d = rho.dim();
  const double gamma = overline_entropy(rho.matrix(), epsilon / 2.0);
  const Matrix p = compare_projector(rho.matrix(), std::exp2(-gamma) * Matrix::Identity(d, d),
                                     Cmp::GreaterEqual);

  // Kraus set {P} along with |phi><i| on the complement, phi inside im(P)
  EigenSystem es = eig_decompose(p);
  Vector phi = es.vectors.col(0);  // eigenvalue 1 direction
  double fe = std::norm((p * rho.matrix()).trace());
  for (int i = 0; i < d; ++i) {
    if (es.values(i) < 0.5) {
      const Matrix a = phi * es.vectors.col(i).adjoint();
      fe += std::norm((a * rho.matrix()).trace());
    }
  }

  CodeRecord rec;
  rec.gamma = gamma;
  rec.m = projector_rank(p);
  rec.merit = FigureOfMerit::Entanglement;
  rec.value = fe;
  rec.fidelity_sq = fe;
  return rec;
}

ConcentrationOutcome concentrate(const BipartitePureState& psi, double epsilon, double eta) {
  if (!(eta > 0.0) || !(eta < epsilon) || !(epsilon < 1.0))
    throw InputError("concentrate: need 0 < eta < epsilon < 1");
  const Matrix rho_a = psi.reduced(Subsystem::A);
  const int d = psi.dim_a();

  const double gamma_prime = underline_entropy(rho_a, epsilon - eta);
  const double gamma = gamma_prime + std::log2(eta);

  // ties at the threshold join the kept-for-abort side {rho >= 2^{-gamma} 1}
  const Matrix q = compare_projector(rho_a, std::exp2(-gamma) * Matrix::Identity(d, d), Cmp::Less);
  const double keep_mass = (q * rho_a).trace().real();
  const double p_fail = 1.0 - keep_mass;

  const double m_real = std::exp2(gamma) * keep_mass;
  const long m = static_cast<long>(std::floor(m_real));
  if (m < 1)
    throw ProtocolFailure("concentrate: threshold too aggressive, floor(2^gamma tr(Q rho)) = 0 with gamma=" +
                          std::to_string(gamma) + ", keep mass " + std::to_string(keep_mass));

  // post-measurement Schmidt spectrum: kept coefficients, renormalized
  const RealVector& lam = psi.schmidt().coefficients;
  const double thr = std::exp2(-gamma);
  std::vector<double> kept;
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (lam(k) < thr && lam(k) > 0.0) kept.push_back(lam(k));
  std::sort(kept.begin(), kept.end(), std::greater<double>());
  double kept_sum = 0.0;
  for (double v : kept) kept_sum += v;

  const std::size_t len = std::max<std::size_t>(kept.size(), static_cast<std::size_t>(m));
  RealVector source = RealVector::Zero(static_cast<Eigen::Index>(len));
  RealVector target = RealVector::Zero(static_cast<Eigen::Index>(len));
  for (std::size_t k = 0; k < kept.size(); ++k) source(static_cast<Eigen::Index>(k)) = kept[k] / kept_sum;
  for (long k = 0; k < m; ++k) target(k) = 1.0 / static_cast<double>(m);

  ConcentrationOutcome out;
  out.record.gamma = gamma;
  out.record.m = m;
  out.record.merit = FigureOfMerit::ProtocolFidelitySquared;
  out.record.value = 1.0 - p_fail;  // success probability; conversion is exact on success
  out.record.fidelity_sq = 1.0 - p_fail;
  out.record.p_fail = p_fail;
  out.record.delta_rounding = gamma + std::log2(keep_mass) - std::log2(static_cast<double>(m));
  out.post_spectrum = source;
  out.certificate = majorization_check(source, target);
  return out;
}

CodeRecord dilute(const BipartitePureState& psi, long m) {
  if (m < 1) throw InputError("dilute: M must be >= 1");
  const RealVector& lam = psi.schmidt().coefficients;
  double f2 = 0.0;
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(m, lam.size()); ++k) f2 += lam(k);
  f2 = std::min(1.0, f2);
  CodeRecord rec;
  rec.m = m;
  rec.merit = FigureOfMerit::ProtocolFidelitySquared;
  rec.value = f2;
  rec.fidelity_sq = f2;
  return rec;
}

CodeRecord dilute_at_epsilon(const BipartitePureState& psi, double epsilon) {
  const Matrix rho_a = psi.reduced(Subsystem::A);
  const double gamma = overline_entropy(rho_a, epsilon);
  const long m = std::max(1L, static_cast<long>(std::floor(std::exp2(gamma))));
  CodeRecord rec = dilute(psi, m);
  rec.gamma = gamma;
  return rec;
}

std::vector<Matrix> weyl_set(int d) {
  if (d < 2) throw InputError("weyl_set: d must be >= 2");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  Matrix x_shift = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x_shift((j + 1) % d, j) = 1.0;
  Matrix z_phase = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    z_phase(j, j) = std::exp(Complex(0.0, 2.0 * M_PI * j / static_cast<double>(d)));
  for (int p = 0; p < d; ++p) {
    Matrix zp = Matrix::Identity(d, d);
    for (int i = 0; i < p; ++i) zp = zp * z_phase;
    for (int q = 0; q < d; ++q) {
      Matrix xq = Matrix::Identity(d, d);
      for (int i = 0; i < q; ++i) xq = xq * x_shift;
      out.push_back(xq * zp);  // U_{p,q} = X^q Z^p
    }
  }
  return out;
}

OneShotBracket one_shot_bounds(Task task, const OneShotInputs& inputs, const EpsilonSpec& slacks) {
  const double eps = slacks.epsilon;
  OneShotBracket out;
  switch (task) {
    case Task::SourceVisible:
    case Task::SourceBlind: {
      const Matrix* rho = nullptr;
      if (inputs.ensemble) rho = &inputs.ensemble->average();
      else if (inputs.rho) rho = &inputs.rho->matrix();
      else throw InputError("one_shot_bounds: source coding needs an ensemble or a state");
      if (!slacks.eta) throw InputError("one_shot_bounds: source coding needs eta");
      const double eta = *slacks.eta;
      if (eps + eta >= 1.0) throw InputError("one_shot_bounds: eps + eta must stay below 1");
      out.lower = overline_entropy(*rho, eps + eta) + std::log2(eta);
      out.upper = overline_entropy(*rho, task == Task::SourceVisible ? eps : eps / 2.0);
      return out;
    }
    case Task::DenseCoding: {
      if (!inputs.rho_ab) throw InputError("one_shot_bounds: dense coding needs rho_AB");
      if (!slacks.eta || !slacks.c || !slacks.delta)
        throw InputError("one_shot_bounds: dense coding needs eta, c, delta");
      const double eta = *slacks.eta, c = *slacks.c, delta = *slacks.delta;
      if (eta <= c / (1.0 + c) * eps)
        throw InputError("one_shot_bounds: dense coding requires eta > c*eps/(1+c)");
      if (eps - eta <= 0.0) throw InputError("one_shot_bounds: dense coding requires eta < eps");
      const double log_da = std::log2(static_cast<double>(inputs.dim_a));

      auto min_cond_entropy = [&](double e) {
        // min over encoder-side channels of \bar H_s^e(A|B); identity anchor or
        // the expansion module's multi-start searcher
        double best = overline_conditional(*inputs.rho_ab, inputs.dim_a, inputs.dim_b, e);
        if (inputs.channel_mode == ChannelMode::Optimize) {
          DenseCodingExpansion dc = dense_coding_expansion(*inputs.rho_ab, inputs.dim_a,
                                                           inputs.dim_b, e, ChannelMode::Optimize,
                                                           inputs.search);
          const Matrix sigma = dc.channel.apply_to_a(*inputs.rho_ab, inputs.dim_b);
          best = std::min(best, overline_conditional(sigma, inputs.dim_a, inputs.dim_b, e));
        }
        return best;
      };
      out.lower = log_da - min_cond_entropy(eps - eta) + std::log2(c / (1.0 + c)) +
                  std::log2(eta - c / (1.0 + c) * eps);
      out.upper = log_da - min_cond_entropy(eps + eta) + delta - std::log2(eta);
      if (eps + eta >= 1.0) throw InputError("one_shot_bounds: eps + eta must stay below 1");
      return out;
    }
    case Task::Distill: {
      if (!inputs.psi) throw InputError("one_shot_bounds: distillation needs a pure state");
      if (!slacks.eta || !slacks.delta) throw InputError("one_shot_bounds: distillation needs eta, delta");
      const double eta = *slacks.eta, delta = *slacks.delta;
      if (eta >= eps) throw InputError("one_shot_bounds: distillation requires eta < eps");
      if (eps + eta >= 1.0) throw InputError("one_shot_bounds: eps + eta must stay below 1");
      const Matrix rho_a = inputs.psi->reduced(Subsystem::A);
      double delta_rounding = 0.0;
      try {
        delta_rounding = concentrate(*inputs.psi, eps, eta).record.delta_rounding;
      } catch (const ProtocolFailure&) {
        // the bound is reported with no rounding correction when the protocol
        // cannot emit even one ebit
      }
      out.lower = underline_entropy(rho_a, eps - eta) + std::log2(eta) + std::log2(1.0 - eps) -
                  delta_rounding;
      out.upper = -overline_conditional(inputs.psi->density(), inputs.psi->dim_a(),
                                        inputs.psi->dim_b(), eps + eta) +
                  delta - std::log2(eta);
      return out;
    }
    case Task::Dilute: {
      if (!inputs.psi) throw InputError("one_shot_bounds: dilution needs a pure state");
      if (!slacks.eta || !slacks.delta) throw InputError("one_shot_bounds: dilution needs eta, delta");
      const double eta = *slacks.eta, delta = *slacks.delta;
      if (eps + eta >= 1.0) throw InputError("one_shot_bounds: eps + eta must stay below 1");
      const Matrix rho_a = inputs.psi->reduced(Subsystem::A);
      out.lower = overline_entropy(rho_a, eps + eta) - delta + std::log2(eta);
      out.upper = overline_entropy(rho_a, eps);
      return out;
    }
    case Task::CqChannel: {
      if (!inputs.cq) throw InputError("one_shot_bounds: cq task needs a channel");
      if (!slacks.eta || !slacks.c || !slacks.delta)
        throw InputError("one_shot_bounds: cq needs eta, c, delta");
      const double eta = *slacks.eta, c = *slacks.c, delta = *slacks.delta;
      if (eta <= c / (1.0 + c) * eps)
        throw InputError("one_shot_bounds: cq requires eta > c*eps/(1+c)");
      if (eps - eta <= 0.0 || eps + eta >= 1.0)
        throw InputError("one_shot_bounds: cq requires 0 < eps - eta and eps + eta < 1");

      // lower: max_p underline-D at eps - eta with rho_X (x) rho_B
      const CqChannel& w = *inputs.cq;
      const int k = w.alphabet();
      auto lower_at = [&](const RealVector& p) {
        const Matrix rho_xb = w.cq_state(p);
        Matrix rho_x = Matrix::Zero(k, k);
        for (int x = 0; x < k; ++x) rho_x(x, x) = p(x);
        const Matrix den = kron(rho_x, w.average(p));
        return info_spectrum_divergence(rho_xb, den, eps - eta, Direction::Underline).gamma;
      };
      CapacityOptions copts;
      copts.seed = inputs.search.seed;
      const DispersionSet ds = cq_capacity(w, copts);
      double best_lower = -std::numeric_limits<double>::infinity();
      RealVector best_p = ds.maximizer_set.front();
      for (const RealVector& p : ds.maximizer_set) {
        const double v = lower_at(p);
        if (v > best_lower) {
          best_lower = v;
          best_p = p;
        }
      }
      out.lower = best_lower + std::log2(c / (1.0 + c)) + std::log2(eta - c / (1.0 + c) * eps);

      // upper: max_p min_sigma underline-D at eps + eta; the searcher gives an
      // upper envelope of the inner min, evaluated at the capacity maximizers
      double best_upper = -std::numeric_limits<double>::infinity();
      for (const RealVector& p : ds.maximizer_set) {
        const Matrix rho_xb = w.cq_state(p);
        MutualSearchOptions mopts;
        mopts.seed = inputs.search.seed;
        mopts.starts = inputs.search.starts;
        const DerivedEntropyResult mi =
            info_spectrum_mutual(rho_xb, k, w.dim_b(), eps + eta, Direction::Underline, mopts);
        best_upper = std::max(best_upper, mi.value);
      }
      out.upper = best_upper + delta - std::log2(eta);
      out.bracket_guaranteed = false;  // the max over priors is evaluated on a finite set
      return out;
    }
    default:
      throw InputError("one_shot_bounds: unsupported task");
  }
}

PgmSimulation pgm_dense_coding_simulation(const Matrix& rho_ab, int dim_a, int dim_b, long m,
                                          double gamma, double c, std::uint64_t seed) {
  if (m < 1) throw InputError("pgm_dense_coding_simulation: M must be >= 1");
  const std::vector<Matrix> weyl = weyl_set(dim_a);
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);

  Rng rng(seed);
  std::vector<Matrix> codewords;
  for (long i = 0; i < m; ++i) {
    const int x = rng.uniform_int(0, static_cast<int>(weyl.size()) - 1);
    const Matrix u = kron(weyl[static_cast<std::size_t>(x)], eye_b);
    codewords.push_back(u * rho_ab * u.adjoint());
  }
  Matrix s = Matrix::Zero(rho_ab.rows(), rho_ab.cols());
  for (const Matrix& cw : codewords) s += cw;
  const Matrix si = inv_sqrt_psd(s);

  double p_ok = 0.0;
  for (const Matrix& cw : codewords) {
    const Matrix y = si * cw * si;  // pretty-good measurement element
    p_ok += (y * cw).trace().real() / static_cast<double>(m);
  }

  // Hayashi-Nagaoka right-hand side for the uniform Weyl ensemble at gamma
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, Subsystem::B);
  const Matrix wbar = kron(Matrix::Identity(dim_a, dim_a) / static_cast<double>(dim_a), rho_b);
  const Matrix proj = compare_projector(rho_ab, std::exp2(gamma) * wbar, Cmp::Less);
  const double miss = (proj * rho_ab).trace().real();
  PgmSimulation sim;
  sim.code_size = m;
  sim.p_error = 1.0 - p_ok;
  sim.hn_bound = (1.0 + c) * miss +
                 (2.0 + c + 1.0 / c) * std::exp2(-gamma) * static_cast<double>(m);
  sim.within_bound = sim.p_error <= sim.hn_bound + 1e-9;
  return sim;
}

}  // namespace infospec
