#include "infospec/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "infospec/hermitian.hpp"

namespace infospec {

SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f, RealVector start,
                          const SimplexOptions& opts) {
  const int n = static_cast<int>(start.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<RealVector> pts(n + 1, start);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += opts.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  SimplexResult res;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (vals[worst] - vals[best] < opts.tol) break;

    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= n;

    const RealVector refl = centroid + alpha * (centroid - pts[worst]);
    const double f_refl = f(refl);
    if (f_refl < vals[best]) {
      const RealVector exp_pt = centroid + gamma * (refl - centroid);
      const double f_exp = f(exp_pt);
      if (f_exp < f_refl) {
        pts[worst] = exp_pt;
        vals[worst] = f_exp;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
    } else if (f_refl < vals[second]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
    } else {
      const RealVector contr = centroid + rho * (pts[worst] - centroid);
      const double f_contr = f(contr);
      if (f_contr < vals[worst]) {
        pts[worst] = contr;
        vals[worst] = f_contr;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  res.x = pts[best];
  res.value = vals[best];
  res.iterations = iter;
  res.converged = iter < opts.max_iters;
  return res;
}

Matrix hermitian_param_to_state(const RealVector& x, int dim) {
  if (x.size() != static_cast<Eigen::Index>(dim) * dim)
    throw InputError("hermitian_param_to_state: need dim^2 parameters");
  Matrix h = Matrix::Zero(dim, dim);
  int idx = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = x(idx++);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(x(idx), x(idx + 1));
      h(j, i) = std::conj(h(i, j));
      idx += 2;
    }
  EigenSystem es = eig_decompose(h);
  const double shift = es.values(0);  // stabilize exp
  Matrix out = Matrix::Zero(dim, dim);
  double tr = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double w = std::exp(es.values(i) - shift);
    out += w * (es.vectors.col(i) * es.vectors.col(i).adjoint());
    tr += w;
  }
  out /= tr;
  return 0.5 * (out + out.adjoint());
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace infospec
