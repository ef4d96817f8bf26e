#pragma once

#include "bam/ep.hpp"
#include "bam/predict.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <vector>

namespace bam {

/// Conjugate Bayesian linear regression on [1; x^r] or [1; x^r; sum_i x^{e_i}]
/// with an isotropic Gaussian prior on the weights.
struct BlrModel {
  bool use_events = false;
  int d_routine = 0;
  int d_event = 0;
  double prior_var = 1.0;
  double noise_var = 1.0;
  Eigen::VectorXd mean;        ///< posterior weight mean, intercept first
  Eigen::MatrixXd covariance;  ///< posterior weight covariance
  double log_evidence = 0.0;
};

/// Design row for one observation.
Eigen::VectorXd blr_features(const Observation& o, bool use_events, int d_routine, int d_event);

BlrModel fit_blr(const Dataset& ds, bool use_events, double prior_var, double noise_var);

/// fit_blr at the (prior_var, noise_var) pair of largest evidence on a
/// log-spaced grid.
BlrModel fit_blr_evidence(const Dataset& ds, bool use_events);

/// Predictive mean and variance (noise included) of the total.
MeanVar blr_predict(const BlrModel& model, const Observation& o);

/// Linear shares: routine = intercept + w_r^T x^r, event i = w_e^T x^{e_i}.
/// Their means sum to the predictive mean. Shares are not constrained to be
/// positive.
PredictiveDistribution blr_decompose(const BlrModel& model, const Observation& o);

/// Exact GP regression on [x^r] or [x^r; sum_i x^{e_i}] with an SE-ARD
/// kernel and Gaussian noise. Targets are optionally centred on their
/// training mean.
struct GpBaselineParams {
  SeArdParams kernel;
  double noise_var = 0.1;
  bool center_targets = true;
};

struct GpBaseline {
  bool use_events = false;
  int d_routine = 0;
  int d_event = 0;
  GpBaselineParams params;
  std::vector<Eigen::VectorXd> inputs;
  Eigen::LLT<Eigen::MatrixXd> chol;  ///< of K + noise I
  Eigen::VectorXd alpha;             ///< (K + noise I)^-1 (y - offset)
  double offset = 0.0;
  double log_evidence = 0.0;
};

Eigen::VectorXd gp_baseline_input(const Observation& o, bool use_events, int d_routine,
                                  int d_event);

GpBaseline fit_gp_baseline(const Dataset& ds, bool use_events, const GpBaselineParams& params);

/// Predictive mean and variance of the total (noise included).
MeanVar gp_baseline_predict(const GpBaseline& model, const Observation& o);

/// Maximizes the GP evidence over log signal variance, log length-scales and
/// log noise with Nelder-Mead from `init`.
GpBaselineParams optimize_gp_baseline(const Dataset& ds, bool use_events,
                                      const GpBaselineParams& init, int max_evals = 300);

/// The additive model with linear kernels on both components and the
/// truncated likelihood. Non-linear kernels in `hp` are replaced by unit
/// linear kernels.
FittedModel fit_bam_lr(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg = {});

/// Hyperparams with linear kernels for both components.
Hyperparams bam_lr_hyperparams(const Hyperparams& hp);

}  // namespace bam
