#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <variant>
#include <vector>

namespace bam {

/// Squared-exponential kernel with one length-scale per input dimension.
struct SeArdParams {
  double signal_variance = 1.0;
  Eigen::VectorXd length_scales;
};

/// weight_variance * <x, x'> + bias_variance.
struct LinearKernelParams {
  double weight_variance = 1.0;
  double bias_variance = 0.0;
};

using Kernel = std::variant<SeArdParams, LinearKernelParams>;

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Gram matrix cannot be factorized even at the largest jitter.
class CholeskyError : public KernelError {
 public:
  using KernelError::KernelError;
};

double se_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x2, const SeArdParams& p);
double linear(const Eigen::VectorXd& x, const Eigen::VectorXd& x2, const LinearKernelParams& p);
double evaluate(const Kernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& x2);

/// Throws KernelError if parameters are non-positive/non-finite or the
/// length-scale count does not match `dim` (SE only).
void check_params(const Kernel& k, int dim);

/// Natural scale used for jitter: signal variance (SE) or weight plus bias
/// variance (linear).
double kernel_scale(const Kernel& k);

/// Row-major Gram matrix K[i][j] = k(X[i], X[j]), filled for j >= i and
/// mirrored, so it is exactly symmetric.
Eigen::MatrixXd gram(const std::vector<Eigen::VectorXd>& X, const Kernel& k);

/// k(X[i], x) for all i.
Eigen::VectorXd cross(const std::vector<Eigen::VectorXd>& X, const Kernel& k,
                      const Eigen::VectorXd& x);

struct JitteredGram {
  Eigen::MatrixXd matrix;  ///< includes the jitter on the diagonal
  double jitter = 0.0;
};

/// Gram matrix plus diagonal jitter. Starts at `relative_jitter` times the
/// kernel scale and escalates by 10x up to 1e-4 times the scale until a
/// Cholesky factorization succeeds; throws CholeskyError otherwise.
JitteredGram gram(const std::vector<Eigen::VectorXd>& X, const Kernel& k,
                  double relative_jitter);

}  // namespace bam
