#include "bam/predict.hpp"

#include "bam/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace bam {

MeanVar predict_latent(const FittedModel& model, const Eigen::VectorXd& x_star, Component which) {
  const int dim = which == Component::routine ? model.d_routine : model.d_event;
  if (x_star.size() != dim)
    throw std::invalid_argument("predict: input has dimension " + std::to_string(x_star.size()) +
                                ", expected " + std::to_string(dim));
  const Kernel& kernel =
      which == Component::routine ? model.hp.routine_kernel : model.hp.event_kernel;
  const double prior_var = evaluate(kernel, x_star, x_star);
  const GpPosterior& q = model.gp(which);
  if (q.size() == 0) return {0.0, prior_var};

  const Eigen::VectorXd k_star = cross(q.inputs, kernel, x_star);
  const double mean = k_star.dot(q.alpha);
  const Eigen::VectorXd v =
      q.chol_b.matrixL().solve(q.sqrt_site_precision.cwiseProduct(k_star));
  const double var = std::clamp(prior_var - v.squaredNorm(), 1e-12 * prior_var, prior_var);
  return {mean, var};
}

MeanVar share_moments(double f_mean, double f_var, double beta, Likelihood likelihood,
                      int quad_nodes) {
  if (likelihood == Likelihood::truncated_gaussian) {
    const MomentResult m = trunc_gauss_moments(f_mean, f_var + beta);
    return {m.mean, m.variance};
  }
  const QuadratureRule& gh = gauss_hermite(quad_nodes);
  const double s = std::numbers::sqrt2 * std::sqrt(f_var);
  double m1 = 0.0, m2 = 0.0, within = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    const double w = gh.weights[k] / std::sqrt(std::numbers::pi);
    const MomentResult c = relaxed_poisson_moments(f_mean + s * gh.nodes[k], quad_nodes);
    m1 += w * c.mean;
    m2 += w * c.mean * c.mean;
    within += w * c.variance;
  }
  return {m1, within + std::max(m2 - m1 * m1, 0.0)};
}

MeanVar predict_component_share(const FittedModel& model, const Eigen::VectorXd& x_star,
                                Component which) {
  const MeanVar f = predict_latent(model, x_star, which);
  const double beta = which == Component::routine ? model.hp.beta_r : model.hp.beta_e;
  return share_moments(f.mean, f.var, beta, model.hp.likelihood, model.cfg.quad_nodes);
}

PredictiveDistribution predict_total(const FittedModel& model, const Eigen::VectorXd& x_routine,
                                     const std::vector<Eigen::VectorXd>& x_events) {
  PredictiveDistribution p;
  p.routine = predict_component_share(model, x_routine, Component::routine);
  p.total = {p.routine.mean, model.hp.noise_v + p.routine.var};
  for (const auto& x : x_events) {
    p.events.push_back(predict_component_share(model, x, Component::event));
    p.total.mean += p.events.back().mean;
    p.total.var += p.events.back().var;
  }
  return p;
}

std::vector<PredictiveDistribution> predict_dataset(const FittedModel& model, const Dataset& ds) {
  std::vector<PredictiveDistribution> out;
  out.reserve(ds.size());
  for (const auto& o : ds.observations()) out.push_back(predict_total(model, o.routine, o.events));
  return out;
}

void write_predictions(const Dataset& ds, const std::vector<PredictiveDistribution>& preds,
                       std::ostream& out) {
  using nlohmann::json;
  if (preds.size() != ds.size())
    throw std::invalid_argument("write_predictions: prediction count does not match dataset");
  auto mv = [](const MeanVar& m) { return json{{"mean", m.mean}, {"var", m.var}}; };
  for (std::size_t i = 0; i < ds.size(); ++i) {
    json rec{{"id", ds[i].id}, {"total", mv(preds[i].total)}, {"routine", mv(preds[i].routine)}};
    rec["events"] = json::array();
    for (const auto& e : preds[i].events) rec["events"].push_back(mv(e));
    out << rec.dump() << '\n';
  }
}

}  // namespace bam
