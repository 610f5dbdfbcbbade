#include "infospec/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace infospec {

namespace {

constexpr double kZeroMass = 0.0;

struct Atom {
  double z;
  double p;
};

// merge atoms whose support values coincide within tol
std::vector<Atom> merge_atoms(std::vector<Atom> atoms, double tol) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.z < b.z; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && a.z - out.back().z <= tol) {
      out.back().p += a.p;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

ClassicalLLR finalize(std::vector<Atom> atoms, double inf_mass, const LlrOptions& opts) {
  std::vector<Atom> kept;
  kept.reserve(atoms.size());
  for (const Atom& a : atoms)
    if (a.p > opts.prune_mass) kept.push_back(a);
  kept = merge_atoms(std::move(kept), opts.merge_tol);

  ClassicalLLR out;
  out.inf_mass = inf_mass;
  out.support.reserve(kept.size());
  out.probs.reserve(kept.size());
  double mass = 0.0, mean = 0.0;
  for (const Atom& a : kept) {
    out.support.push_back(a.z);
    out.probs.push_back(a.p);
    mass += a.p;
    mean += a.p * a.z;
  }
  if (mass > 0.0) {
    mean /= mass;
    double var = 0.0;
    for (const Atom& a : kept) var += a.p * (a.z - mean) * (a.z - mean);
    var /= mass;
    out.mu = mean;
    out.s = std::sqrt(std::max(0.0, var));
  }
  return out;
}

}  // namespace

double ClassicalLLR::total_mass() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0) + inf_mass;
}

RelEntStats ClassicalPair::moments() const {
  RelEntStats out;
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kZeroMass) continue;
    if (q[i] <= kZeroMass) {
      out.infinite = true;
      out.D = std::numeric_limits<double>::infinity();
      return out;
    }
    d += p[i] * (std::log2(p[i]) - std::log2(q[i]));
  }
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kZeroMass) continue;
    const double z = std::log2(p[i]) - std::log2(q[i]);
    v += p[i] * (z - d) * (z - d);
  }
  out.D = d;
  out.V = std::max(0.0, v);
  out.s = std::sqrt(out.V);
  return out;
}

ClassicalPair nussbaum_szkola(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) throw DimensionMismatch("nussbaum_szkola: dimension mismatch");
  EigenSystem er = eig_decompose(rho);
  EigenSystem es = eig_decompose(sigma);
  const int d = static_cast<int>(rho.rows());
  const double cut_r = kEigTieTol * std::max(1.0, std::abs(er.values(0)));
  const double cut_s = kEigTieTol * std::max(1.0, std::abs(es.values(0)));

  ClassicalPair pair;
  pair.p.reserve(static_cast<std::size_t>(d) * d);
  pair.q.reserve(static_cast<std::size_t>(d) * d);
  for (int x = 0; x < d; ++x) {
    const double r = er.values(x) > cut_r ? er.values(x) : 0.0;
    for (int y = 0; y < d; ++y) {
      const double s = es.values(y) > cut_s ? es.values(y) : 0.0;
      const double overlap = std::norm(er.vectors.col(x).dot(es.vectors.col(y)));
      pair.p.push_back(r * overlap);
      pair.q.push_back(s * overlap);
    }
  }
  return pair;
}

ClassicalPair product_pair(const ClassicalPair& a, const ClassicalPair& b) {
  ClassicalPair out;
  out.p.reserve(a.p.size() * b.p.size());
  out.q.reserve(a.q.size() * b.q.size());
  for (std::size_t i = 0; i < a.p.size(); ++i)
    for (std::size_t j = 0; j < b.p.size(); ++j) {
      out.p.push_back(a.p[i] * b.p[j]);
      out.q.push_back(a.q[i] * b.q[j]);
    }
  return out;
}

ClassicalLLR llr_distribution(const ClassicalPair& pair, const LlrOptions& opts) {
  if (pair.p.size() != pair.q.size()) throw InputError("llr_distribution: size mismatch");
  std::vector<Atom> atoms;
  double inf_mass = 0.0;
  for (std::size_t i = 0; i < pair.p.size(); ++i) {
    if (pair.p[i] <= kZeroMass) continue;
    if (pair.q[i] <= kZeroMass) {
      inf_mass += pair.p[i];
      continue;
    }
    atoms.push_back({std::log2(pair.p[i]) - std::log2(pair.q[i]), pair.p[i]});
  }
  return finalize(std::move(atoms), inf_mass, opts);
}

namespace {

ClassicalLLR convolve(const ClassicalLLR& a, const ClassicalLLR& b, const LlrOptions& opts) {
  const std::size_t na = a.support.size(), nb = b.support.size();
  if (na * nb > opts.atom_cap)
    throw InputError("llr convolution exceeds the atom cap; use the type-enumeration path or a smaller n");
  std::vector<Atom> atoms;
  atoms.reserve(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) atoms.push_back({a.support[i] + b.support[j], a.probs[i] * b.probs[j]});
  // a sum is +inf whenever either summand is
  double fin_a = 0.0, fin_b = 0.0;
  for (double p : a.probs) fin_a += p;
  for (double p : b.probs) fin_b += p;
  const double inf_mass = a.inf_mass * (fin_b + b.inf_mass) + fin_a * b.inf_mass;
  LlrOptions local = opts;
  local.prune_mass = 0.0;  // pruning only happens on the single-letter input
  return finalize(std::move(atoms), inf_mass, local);
}

// exact multinomial type enumeration over k letters
void enumerate_types(int k, long n, std::vector<long>& counts, int pos, long remaining,
                     const std::vector<double>& logp, const std::vector<double>& z,
                     double log_multinom_partial, double z_partial, std::vector<Atom>& out) {
  if (pos == k - 1) {
    counts[pos] = remaining;
    double logmass = log_multinom_partial - std::lgamma(static_cast<double>(remaining) + 1.0) +
                     static_cast<double>(remaining) * logp[pos];
    out.push_back({z_partial + static_cast<double>(remaining) * z[pos], std::exp(logmass)});
    return;
  }
  for (long c = 0; c <= remaining; ++c) {
    enumerate_types(k, n, counts, pos + 1, remaining - c, logp, z,
                    log_multinom_partial - std::lgamma(static_cast<double>(c) + 1.0) +
                        static_cast<double>(c) * logp[pos],
                    z_partial + static_cast<double>(c) * z[pos], out);
  }
}

double composition_count(int k, long n) {
  // C(n + k - 1, k - 1)
  double c = 1.0;
  for (int i = 1; i <= k - 1; ++i) c *= static_cast<double>(n + i) / i;
  return c;
}

}  // namespace

ClassicalLLR iid_llr_distribution(const ClassicalLLR& single, long n, const LlrOptions& opts) {
  if (n < 1) throw InputError("iid_llr_distribution: n must be >= 1");
  if (n == 1) return single;

  const int k = static_cast<int>(single.support.size());
  const bool has_inf = single.inf_mass > 0.0;
  if (!has_inf && k >= 1 && composition_count(k, n) < static_cast<double>(opts.atom_cap)) {
    // type enumeration path
    std::vector<double> logp(k), z(k);
    double mass = 0.0;
    for (int i = 0; i < k; ++i) mass += single.probs[i];
    for (int i = 0; i < k; ++i) {
      logp[i] = std::log(single.probs[i] / mass);
      z[i] = single.support[i];
    }
    std::vector<Atom> atoms;
    std::vector<long> counts(k, 0);
    enumerate_types(k, n, counts, 0, n, logp, z, std::lgamma(static_cast<double>(n) + 1.0), 0.0,
                    atoms);
    LlrOptions local = opts;
    local.prune_mass = 0.0;
    ClassicalLLR out = finalize(std::move(atoms), 0.0, local);
    const double scale = std::pow(mass, static_cast<double>(n));
    for (double& p : out.probs) p *= scale;
    return out;
  }

  // binary-powered convolution
  ClassicalLLR base = single;
  ClassicalLLR acc;
  bool acc_set = false;
  long rem = n;
  while (rem > 0) {
    if (rem & 1) {
      acc = acc_set ? convolve(acc, base, opts) : base;
      acc_set = true;
    }
    rem >>= 1;
    if (rem > 0) base = convolve(base, base, opts);
  }
  return acc;
}

ClassicalLLR iid_llr_distribution(const ClassicalPair& pair, long n, const LlrOptions& opts) {
  return iid_llr_distribution(llr_distribution(pair, opts), n, opts);
}

ClassicalQuantile classical_info_spectrum(const ClassicalLLR& llr, double epsilon, Direction dir) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("classical_info_spectrum: epsilon out of (0,1)");
  const std::size_t k = llr.support.size();
  ClassicalQuantile out;
  if (dir == Direction::Underline) {
    // sup{R : P(Z <= R) <= eps}; the cdf is right-continuous, so the sup sits
    // at the first atom whose inclusive cdf exceeds eps, approached from the left
    double cdf = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      cdf += llr.probs[i];
      if (cdf > epsilon) {
        out.value = llr.support[i];
        out.left_limit = true;
        return out;
      }
    }
    // all finite mass fits under eps; feasibility extends through +inf
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  // overline: inf{R : P(Z > R) <= eps}; the exclusive tail is right-continuous,
  // so the inf is attained at the smallest feasible atom
  double tail = llr.inf_mass;  // P(Z > largest atom)
  if (tail > epsilon) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  std::size_t best = k;  // smallest index with exclusive tail <= eps
  for (std::size_t i = k; i-- > 0;) {
    if (tail <= epsilon) best = i;
    tail += llr.probs[i];
  }
  if (tail <= epsilon) {
    // the whole distribution fits in the tail budget: R unbounded below
    out.infinite = true;
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = llr.support[best];
  return out;
}

ClassicalQuantile classical_info_spectrum(const ClassicalPair& pair, double epsilon, Direction dir) {
  return classical_info_spectrum(llr_distribution(pair), epsilon, dir);
}

double classical_trace_gap(const ClassicalLLR& llr, double gamma) {
  // T(gamma) = sum_z P(z) (1 - 2^{gamma - z})_+ plus the never-dominated mass
  double t = llr.inf_mass;
  for (std::size_t i = 0; i < llr.support.size(); ++i) {
    const double term = 1.0 - std::exp2(gamma - llr.support[i]);
    if (term > 0.0) t += llr.probs[i] * term;
  }
  return t;
}

DivergenceResult classical_spectrum_divergence(const ClassicalLLR& llr, double epsilon,
                                               Direction dir) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw InputError("classical_spectrum_divergence: epsilon out of (0,1)");
  const double target = dir == Direction::Underline ? 1.0 - epsilon : epsilon;
  DivergenceResult res;
  if (target <= llr.inf_mass) {
    res.infinite = true;
    res.gamma = std::numeric_limits<double>::infinity();
    res.achieved_gap = llr.inf_mass;
    return res;
  }
  double lo = llr.support.front() - 60.0, hi = llr.support.back() + 2.0;
  for (int i = 0; i < 200 && classical_trace_gap(llr, lo) < target; ++i) lo -= 16.0;
  for (int i = 0; i < 200 && classical_trace_gap(llr, hi) > target; ++i) hi += 16.0;
  while (hi - lo > kGammaBracketTol) {
    const double mid = 0.5 * (lo + hi);
    if (classical_trace_gap(llr, mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  res.gamma = 0.5 * (lo + hi);
  res.achieved_gap = classical_trace_gap(llr, res.gamma);
  res.bracket = {lo, hi};
  return res;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Acklam's rational initialization refined by Halley steps on Phi(z) - eps.
double quantile_raw(double eps) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01, -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (eps < p_low) {
    const double q = std::sqrt(-2.0 * std::log(eps));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = eps - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  for (int i = 0; i < 3; ++i) {
    const double e = normal_cdf(x) - eps;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf == 0.0) break;
    const double u = e / pdf;
    x -= u / (1.0 + 0.5 * x * u);  // Halley
  }
  return x;
}

}  // namespace

double normal_quantile(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InputError("normal_quantile: epsilon out of (0,1)");
  if (epsilon == 0.5) return 0.0;
  if (epsilon > 0.5) return -quantile_raw(1.0 - epsilon);  // antisymmetric by construction
  return quantile_raw(epsilon);
}

DivergenceResult tensor_power_divergence(const Matrix& rho, const Matrix& sigma, int n,
                                         double epsilon, Direction dir, long dim_cap) {
  if (n < 1) throw InputError("tensor_power_divergence: n must be >= 1");
  double size = 1.0;
  for (int i = 0; i < n; ++i) size *= static_cast<double>(rho.rows());
  if (size > static_cast<double>(dim_cap))
    throw InputError("tensor_power_divergence: d^n exceeds the dense-path cap");
  return info_spectrum_divergence(kron_power(rho, n), kron_power(sigma, n), epsilon, dir);
}

RateSequenceProbe spectral_rate_probe(const ClassicalPair& pair, const std::vector<long>& n_grid,
                                      const std::vector<double>& eps_grid, Direction dir) {
  RateSequenceProbe probe;
  probe.n_grid = n_grid;
  probe.eps_grid = eps_grid;
  const ClassicalLLR single = llr_distribution(pair);
  for (long n : n_grid) {
    const ClassicalLLR lln = iid_llr_distribution(single, n);
    std::vector<double> row;
    row.reserve(eps_grid.size());
    for (double eps : eps_grid)
      row.push_back(classical_spectrum_divergence(lln, eps, dir).gamma / static_cast<double>(n));
    probe.rates.push_back(std::move(row));
  }
  return probe;
}

}  // namespace infospec
