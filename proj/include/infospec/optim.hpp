#pragma once

#include <functional>

#include "infospec/common.hpp"

namespace infospec {

struct SimplexOptions {
  int max_iters = 400;
  double tol = 1e-8;        // simplex spread stopping criterion
  double initial_step = 0.5;
};

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead simplex descent (standard coefficients).
SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f, RealVector start,
                          const SimplexOptions& opts = {});

// Map an unconstrained real vector of length d*d to a density matrix through
// sigma = exp(H)/tr exp(H); inverse-free, surjective onto full-rank states.
Matrix hermitian_param_to_state(const RealVector& x, int dim);

// Golden-section maximization of a unimodal scalar function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-10);

}  // namespace infospec
