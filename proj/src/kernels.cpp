#include "bam/kernels.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace bam {

namespace {

void require_same_size(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::Index n) {
  if (a.size() != n || b.size() != n)
    throw KernelError("kernel: input dimensions " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()) + " do not match " + std::to_string(n));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double se_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x2, const SeArdParams& p) {
  require_same_size(x, x2, p.length_scales.size());
  double r2 = 0.0;
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double u = (x(d) - x2(d)) / p.length_scales(d);
    r2 += u * u;
  }
  return p.signal_variance * std::exp(-0.5 * r2);
}

double linear(const Eigen::VectorXd& x, const Eigen::VectorXd& x2, const LinearKernelParams& p) {
  require_same_size(x, x2, x.size());
  return p.weight_variance * x.dot(x2) + p.bias_variance;
}

double evaluate(const Kernel& k, const Eigen::VectorXd& x, const Eigen::VectorXd& x2) {
  return std::visit(overloaded{[&](const SeArdParams& p) { return se_ard(x, x2, p); },
                               [&](const LinearKernelParams& p) { return linear(x, x2, p); }},
                    k);
}

void check_params(const Kernel& k, int dim) {
  std::visit(overloaded{
                 [&](const SeArdParams& p) {
                   if (!(p.signal_variance > 0.0) || !std::isfinite(p.signal_variance))
                     throw KernelError("se_ard: signal variance must be positive");
                   if (p.length_scales.size() != dim)
                     throw KernelError("se_ard: expected " + std::to_string(dim) +
                                       " length-scales, got " +
                                       std::to_string(p.length_scales.size()));
                   if (!(p.length_scales.array() > 0.0).all() || !p.length_scales.allFinite())
                     throw KernelError("se_ard: length-scales must be positive");
                 },
                 [&](const LinearKernelParams& p) {
                   if (!(p.weight_variance > 0.0) || !std::isfinite(p.weight_variance))
                     throw KernelError("linear: weight variance must be positive");
                   if (!(p.bias_variance >= 0.0) || !std::isfinite(p.bias_variance))
                     throw KernelError("linear: bias variance must be nonnegative");
                 }},
             k);
}

double kernel_scale(const Kernel& k) {
  return std::visit(
      overloaded{[](const SeArdParams& p) { return p.signal_variance; },
                 [](const LinearKernelParams& p) { return p.weight_variance + p.bias_variance; }},
      k);
}

Eigen::MatrixXd gram(const std::vector<Eigen::VectorXd>& X, const Kernel& k) {
  const auto n = static_cast<Eigen::Index>(X.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = evaluate(k, X[i], X[j]);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

Eigen::VectorXd cross(const std::vector<Eigen::VectorXd>& X, const Kernel& k,
                      const Eigen::VectorXd& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(X.size()));
  for (std::size_t i = 0; i < X.size(); ++i) out(static_cast<Eigen::Index>(i)) = evaluate(k, X[i], x);
  return out;
}

JitteredGram gram(const std::vector<Eigen::VectorXd>& X, const Kernel& k,
                  double relative_jitter) {
  if (X.empty()) throw KernelError("gram: empty input set");
  const Eigen::MatrixXd K = gram(X, k);
  const double scale = kernel_scale(k);
  const double max_jitter = 1e-4 * scale;
  for (double jitter = relative_jitter * scale;;
       jitter = jitter > 0.0 ? 10.0 * jitter : 1e-8 * scale) {
    JitteredGram out{K, jitter};
    out.matrix.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(out.matrix);
    if (llt.info() == Eigen::Success) return out;
    if (jitter >= max_jitter * (1.0 - 1e-9))
      throw CholeskyError("gram: Cholesky failed with jitter up to " + std::to_string(jitter));
  }
}

}  // namespace bam
