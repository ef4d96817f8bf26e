#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace bam {

struct NelderMeadOptions {
  int max_evals = 150;
  double initial_step = 0.5;  ///< simplex edge along each coordinate
  double f_tol = 1e-6;        ///< stop when the simplex values span less than this
  double x_tol = 1e-6;        ///< ... and the simplex diameter is below this
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
  std::vector<double> trace;  ///< objective value of every evaluation, in order
};

/// Minimizes `f` with the standard reflection / expansion / contraction /
/// shrink rules (coefficients 1, 2, 1/2, 1/2). Non-finite values are treated
/// as +infinity. The returned point is the best one evaluated.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {});

}  // namespace bam
