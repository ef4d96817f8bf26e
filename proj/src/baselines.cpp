#include "bam/baselines.hpp"

#include "bam/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bam {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

Eigen::VectorXd summed_events(const Observation& o, int d_event) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d_event);
  for (const auto& e : o.events) s += e;
  return s;
}

}  // namespace

Eigen::VectorXd blr_features(const Observation& o, bool use_events, int d_routine, int d_event) {
  Eigen::VectorXd phi(1 + d_routine + (use_events ? d_event : 0));
  phi(0) = 1.0;
  phi.segment(1, d_routine) = o.routine;
  if (use_events) phi.tail(d_event) = summed_events(o, d_event);
  return phi;
}

BlrModel fit_blr(const Dataset& ds, bool use_events, double prior_var, double noise_var) {
  if (!(prior_var > 0.0) || !(noise_var > 0.0))
    throw std::invalid_argument("fit_blr: variances must be positive");
  BlrModel m;
  m.use_events = use_events;
  m.d_routine = ds.d_routine();
  m.d_event = use_events ? ds.d_event() : 0;
  m.prior_var = prior_var;
  m.noise_var = noise_var;
  const int p = 1 + m.d_routine + m.d_event;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(p, p) / prior_var;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  double yy = 0.0;
  for (const auto& o : ds.observations()) {
    const Eigen::VectorXd phi = blr_features(o, use_events, m.d_routine, m.d_event);
    A.selfadjointView<Eigen::Lower>().rankUpdate(phi, 1.0 / noise_var);
    b += phi * (o.y / noise_var);
    yy += o.y * o.y;
  }
  A.triangularView<Eigen::StrictlyUpper>() = A.transpose();
  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  m.mean = llt.solve(b);
  m.covariance = llt.solve(Eigen::MatrixXd::Identity(p, p));

  // log N(y | 0, prior_var Phi Phi^T + noise_var I) in weight space:
  // the quadratic term is y^T y / s2 - b^T A^-1 b.
  const double n = static_cast<double>(ds.size());
  const double log_det_a = 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  m.log_evidence = -0.5 * n * (kLog2Pi + std::log(noise_var)) -
                   0.5 * p * std::log(prior_var) - 0.5 * log_det_a -
                   0.5 * (yy / noise_var - b.dot(m.mean));
  return m;
}

BlrModel fit_blr_evidence(const Dataset& ds, bool use_events) {
  BlrModel best;
  best.log_evidence = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 24; ++i) {
    for (int j = 0; j <= 24; ++j) {
      const double prior_var = std::pow(10.0, -3.0 + 0.25 * i);
      const double noise_var = std::pow(10.0, -4.0 + 0.25 * j);
      BlrModel m = fit_blr(ds, use_events, prior_var, noise_var);
      if (m.log_evidence > best.log_evidence) best = std::move(m);
    }
  }
  return best;
}

MeanVar blr_predict(const BlrModel& model, const Observation& o) {
  const Eigen::VectorXd phi = blr_features(o, model.use_events, model.d_routine, model.d_event);
  return {phi.dot(model.mean), phi.dot(model.covariance * phi) + model.noise_var};
}

PredictiveDistribution blr_decompose(const BlrModel& model, const Observation& o) {
  if (!model.use_events)
    throw std::invalid_argument("blr_decompose: model was fitted without event features");
  const int dr = model.d_routine, de = model.d_event;
  PredictiveDistribution p;
  Eigen::VectorXd phi_r = Eigen::VectorXd::Zero(model.mean.size());
  phi_r(0) = 1.0;
  phi_r.segment(1, dr) = o.routine;
  p.routine = {phi_r.dot(model.mean), phi_r.dot(model.covariance * phi_r)};
  const Eigen::VectorXd w_e = model.mean.tail(de);
  const Eigen::MatrixXd cov_e = model.covariance.bottomRightCorner(de, de);
  for (const auto& e : o.events) p.events.push_back({w_e.dot(e), e.dot(cov_e * e)});
  const MeanVar total = blr_predict(model, o);
  p.total = total;
  return p;
}

Eigen::VectorXd gp_baseline_input(const Observation& o, bool use_events, int d_routine,
                                  int d_event) {
  if (!use_events) return o.routine;
  Eigen::VectorXd x(d_routine + d_event);
  x << o.routine, summed_events(o, d_event);
  return x;
}

GpBaseline fit_gp_baseline(const Dataset& ds, bool use_events, const GpBaselineParams& params) {
  GpBaseline m;
  m.use_events = use_events;
  m.d_routine = ds.d_routine();
  m.d_event = use_events ? ds.d_event() : 0;
  m.params = params;
  check_params(params.kernel, m.d_routine + m.d_event);
  if (!(params.noise_var > 0.0)) throw std::invalid_argument("GP baseline: noise must be positive");
  Eigen::VectorXd y(static_cast<Eigen::Index>(ds.size()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    m.inputs.push_back(gp_baseline_input(ds[i], use_events, m.d_routine, m.d_event));
    y(static_cast<Eigen::Index>(i)) = ds[i].y;
  }
  if (params.center_targets) m.offset = y.mean();
  y.array() -= m.offset;
  Eigen::MatrixXd K = gram(m.inputs, params.kernel);
  K.diagonal().array() += params.noise_var;
  m.chol.compute(K);
  if (m.chol.info() != Eigen::Success) throw CholeskyError("GP baseline: K + noise I not positive definite");
  m.alpha = m.chol.solve(y);
  const double log_det = 2.0 * Eigen::MatrixXd(m.chol.matrixL()).diagonal().array().log().sum();
  m.log_evidence = -0.5 * y.dot(m.alpha) - 0.5 * log_det -
                   0.5 * static_cast<double>(ds.size()) * kLog2Pi;
  return m;
}

MeanVar gp_baseline_predict(const GpBaseline& model, const Observation& o) {
  const Eigen::VectorXd x = gp_baseline_input(o, model.use_events, model.d_routine, model.d_event);
  const Eigen::VectorXd k = cross(model.inputs, model.params.kernel, x);
  const Eigen::VectorXd v = model.chol.matrixL().solve(k);
  const double var = se_ard(x, x, model.params.kernel) - v.squaredNorm() + model.params.noise_var;
  return {model.offset + k.dot(model.alpha), var};
}

GpBaselineParams optimize_gp_baseline(const Dataset& ds, bool use_events,
                                      const GpBaselineParams& init, int max_evals) {
  const Eigen::Index d = init.kernel.length_scales.size();
  auto unpack = [&](const Eigen::VectorXd& z) {
    GpBaselineParams p = init;
    p.kernel.signal_variance = std::exp(z(0));
    p.kernel.length_scales = z.segment(1, d).array().exp();
    p.noise_var = std::exp(z(d + 1));
    return p;
  };
  Eigen::VectorXd z0(d + 2);
  z0(0) = std::log(init.kernel.signal_variance);
  z0.segment(1, d) = init.kernel.length_scales.array().log();
  z0(d + 1) = std::log(init.noise_var);
  auto objective = [&](const Eigen::VectorXd& z) {
    try {
      return -fit_gp_baseline(ds, use_events, unpack(z)).log_evidence;
    } catch (const KernelError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  NelderMeadOptions opt;
  opt.max_evals = max_evals;
  return unpack(nelder_mead(objective, z0, opt).x);
}

Hyperparams bam_lr_hyperparams(const Hyperparams& hp) {
  Hyperparams out = hp;
  out.likelihood = Likelihood::truncated_gaussian;
  if (!std::holds_alternative<LinearKernelParams>(out.routine_kernel))
    out.routine_kernel = LinearKernelParams{1.0, 1.0};
  if (!std::holds_alternative<LinearKernelParams>(out.event_kernel))
    out.event_kernel = LinearKernelParams{1.0, 1.0};
  return out;
}

FittedModel fit_bam_lr(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg) {
  return fit(ds, bam_lr_hyperparams(hp), cfg);
}

}  // namespace bam
