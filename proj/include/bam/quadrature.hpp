#pragma once

#include <functional>
#include <vector>

namespace bam {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line, computed
/// by Golub-Welsch. Rules are cached per node count.
const QuadratureRule& gauss_hermite(int n);

/// Gauss-Legendre rule on [-1, 1].
const QuadratureRule& gauss_legendre(int n);

/// E[fn(x)] for x ~ N(mean, var) with an n-node Gauss-Hermite rule.
double expect_gaussian(const std::function<double(double)>& fn, double mean,
                       double var, int n);

}  // namespace bam
