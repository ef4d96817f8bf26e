#pragma once

#include <optional>
#include <utility>

namespace bam {

/// One-dimensional Gaussian in natural parameters. Zero precision is the
/// uniform (improper) message; negative precision is representable so that
/// callers can detect an invalid cavity after a division.
struct Gaussian1D {
  double precision = 0.0;       ///< 1 / variance
  double precision_mean = 0.0;  ///< mean / variance

  static Gaussian1D uniform() { return {}; }
  static Gaussian1D from_moments(double mean, double variance) {
    return {1.0 / variance, mean / variance};
  }

  bool is_uniform() const { return precision == 0.0 && precision_mean == 0.0; }
  bool is_proper() const { return precision > 0.0; }
  double mean() const { return precision_mean / precision; }
  double variance() const { return 1.0 / precision; }

  friend bool operator==(const Gaussian1D&, const Gaussian1D&) = default;
};

/// Mean, variance and log-normalizer of a moment-matched distribution.
struct MomentResult {
  double mean = 0.0;
  double variance = 1.0;
  double log_z = 0.0;
};

/// Moments of a two-variable tilted distribution p(f, y), one marginal each.
/// Both results carry the same log-normalizer.
struct TiltedMoments {
  MomentResult y;
  MomentResult f;
};

/// Product of two Gaussians. The second member is the log of the
/// convolution normalizer N(mean_a | mean_b, var_a + var_b) when both are
/// proper, and 0 otherwise.
std::pair<Gaussian1D, double> multiply(const Gaussian1D& a, const Gaussian1D& b);

/// Quotient a / b: natural parameters subtract.
Gaussian1D divide(const Gaussian1D& a, const Gaussian1D& b);

/// Convex combination of natural parameters: keep `fraction_new` of `next`.
Gaussian1D damp(const Gaussian1D& previous, const Gaussian1D& next,
                double fraction_new);

/// log of the integral of exp(-precision x^2 / 2 + precision_mean x);
/// requires positive precision.
double log_partition(const Gaussian1D& g);

/// Largest absolute natural-parameter difference.
double max_abs_change(const Gaussian1D& a, const Gaussian1D& b);

/// log of the standard normal density.
double log_norm_pdf(double z);

/// log Phi(z), accurate in the far lower tail.
double log_norm_cdf(double z);

/// N(z) / Phi(z), the inverse Mills ratio.
double inverse_mills_ratio(double z);

/// Mean, variance and log-normalizer of 1{x > 0} N(x | mu, sigma2).
MomentResult trunc_gauss_moments(double mu, double sigma2);

/// Tilted moments for the truncated component factor
/// 1{y > 0} N(y | f, beta) cavity_f(f) cavity_y(y). cavity_f must be proper;
/// a uniform cavity_y contributes the constant 1.
TiltedMoments truncated_tilted_moments(const Gaussian1D& cavity_f,
                                       const Gaussian1D& cavity_y, double beta);

/// Tilted moments for the Poisson component factor under the continuous
/// relaxation exp(y f - e^f - lgamma(y + 1)) on y > 0. The outer integral
/// over f uses two Gauss-Legendre panels split at the f-marginal mode. For
/// each f node the inner y integral is Gauss-Hermite around its mode, or
/// Gauss-Legendre panels when the mass reaches the boundary at zero.
/// cavity_f must be proper; cavity_y may be uniform. Returns nullopt when
/// the normalizer is not positive and finite.
std::optional<TiltedMoments> poisson_tilted_moments(const Gaussian1D& cavity_f,
                                                    const Gaussian1D& cavity_y,
                                                    int quad_nodes);

/// Mean and variance of y under the relaxed Poisson density at fixed f,
/// normalized over y > 0; log_z is the log of its normalizer.
MomentResult relaxed_poisson_moments(double f, int quad_nodes);

/// log p(y | f) for the relaxed Poisson density, y > 0.
double relaxed_poisson_log_density(double y, double f);

}  // namespace bam
