#pragma once

#include "bam/ep.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bam {

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
};

/// Predictive summaries for one future observation. The total is assembled
/// from the shares: means add, and variances add on top of the noise.
struct PredictiveDistribution {
  MeanVar routine;
  std::vector<MeanVar> events;
  MeanVar total;
};

/// Latent GP prediction k*^T (K + Sigma~)^-1 mu~ and
/// k(x*, x*) - k*^T (K + Sigma~)^-1 k*.
MeanVar predict_latent(const FittedModel& model, const Eigen::VectorXd& x_star, Component which);

/// Moments of the component value given a Gaussian latent N(f_mean, f_var):
/// the truncated case uses 1{y > 0} N(y | f_mean, f_var + beta) in closed
/// form; the Poisson case integrates the relaxed Poisson mean and variance
/// over f with Gauss-Hermite.
MeanVar share_moments(double f_mean, double f_var, double beta, Likelihood likelihood,
                      int quad_nodes);

MeanVar predict_component_share(const FittedModel& model, const Eigen::VectorXd& x_star,
                                Component which);

PredictiveDistribution predict_total(const FittedModel& model, const Eigen::VectorXd& x_routine,
                                     const std::vector<Eigen::VectorXd>& x_events);

/// predict_total for every observation of `ds` (its totals are ignored).
std::vector<PredictiveDistribution> predict_dataset(const FittedModel& model, const Dataset& ds);

/// One JSON line per observation:
/// {"id", "total": {"mean", "var"}, "routine": {...}, "events": [{...}]}.
void write_predictions(const Dataset& ds, const std::vector<PredictiveDistribution>& preds,
                       std::ostream& out);

}  // namespace bam
