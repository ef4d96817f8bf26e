#include "bam/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bam {

namespace {

// Orthonormal polynomials from the three-term recurrence with zero
// diagonal: b[k] p_{k+1} = x p_k - b[k-1] p_{k-1}, p_0 = 1 / sqrt(mu0).
// Returns p_n(x) and p_n'(x); accumulates sum_{k<n} p_k(x)^2.
struct Recurrence {
  double value, derivative, christoffel_sum;
};

Recurrence evaluate(const Eigen::VectorXd& b, double mu0, double x) {
  const Eigen::Index n = b.size() + 1;
  double p_prev = 0.0, p = 1.0 / std::sqrt(mu0);
  double d_prev = 0.0, d = 0.0;
  double sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sum += p * p;
    // b_n is not part of the Jacobi matrix; any positive scale keeps the
    // root of p_n unchanged.
    const double bk = k + 1 < n ? b(k) : 1.0;
    const double bprev = k > 0 ? b(k - 1) : 0.0;
    const double p_next = (x * p - bprev * p_prev) / bk;
    const double d_next = (p + x * d - bprev * d_prev) / bk;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d, sum};
}

// Golub-Welsch for the starting nodes, then Newton refinement on the
// recurrence and Christoffel-sum weights, which stay accurate for the tiny
// weights at the extreme nodes.
QuadratureRule golub_welsch(const Eigen::VectorXd& off_diagonal, double mu0) {
  const Eigen::Index n = off_diagonal.size() + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = off_diagonal(i);
    jacobi(i + 1, i) = off_diagonal(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 5; ++it) {
      const Recurrence r = evaluate(off_diagonal, mu0, x);
      if (r.derivative == 0.0) break;
      x -= r.value / r.derivative;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / evaluate(off_diagonal, mu0, x).christoffel_sum;
  }
  // Symmetrize so that rules are exactly odd/even about the origin.
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    const Eigen::Index j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <typename Build>
const QuadratureRule& cached(std::map<int, QuadratureRule>& cache, int n,
                             Build build) {
  static std::mutex mutex;
  if (n < 1) throw std::invalid_argument("quadrature: node count must be >= 1");
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build(n)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_hermite(int n) {
  static std::map<int, QuadratureRule> cache;
  return cached(cache, n, [](int m) {
    Eigen::VectorXd beta(m - 1);
    for (int k = 1; k < m; ++k) beta(k - 1) = std::sqrt(0.5 * k);
    return golub_welsch(beta, std::sqrt(std::numbers::pi));
  });
}

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  return cached(cache, n, [](int m) {
    Eigen::VectorXd beta(m - 1);
    for (int k = 1; k < m; ++k) beta(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(beta, 2.0);
  });
}

double expect_gaussian(const std::function<double(double)>& fn, double mean,
                       double var, int n) {
  const QuadratureRule& rule = gauss_hermite(n);
  const double scale = std::sqrt(2.0 * var);
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    acc += rule.weights[k] * fn(mean + scale * rule.nodes[k]);
  return acc / std::sqrt(std::numbers::pi);
}

}  // namespace bam
