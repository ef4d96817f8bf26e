#include "bam/hyperopt.hpp"

#include "bam/optimize.hpp"
#include "bam/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace bam {

namespace {

void push_kernel(std::vector<double>& z, const Kernel& k) {
  if (const auto* se = std::get_if<SeArdParams>(&k)) {
    z.push_back(std::log(se->signal_variance));
    for (Eigen::Index d = 0; d < se->length_scales.size(); ++d)
      z.push_back(std::log(se->length_scales(d)));
  } else {
    const auto& lin = std::get<LinearKernelParams>(k);
    z.push_back(std::log(lin.weight_variance));
    if (lin.bias_variance > 0.0) z.push_back(std::log(lin.bias_variance));
  }
}

Kernel pop_kernel(const Eigen::VectorXd& z, Eigen::Index& i, const Kernel& like) {
  if (const auto* se = std::get_if<SeArdParams>(&like)) {
    SeArdParams out;
    out.signal_variance = std::exp(z(i++));
    out.length_scales.resize(se->length_scales.size());
    for (Eigen::Index d = 0; d < out.length_scales.size(); ++d) out.length_scales(d) = std::exp(z(i++));
    return out;
  }
  LinearKernelParams out = std::get<LinearKernelParams>(like);
  out.weight_variance = std::exp(z(i++));
  if (out.bias_variance > 0.0) out.bias_variance = std::exp(z(i++));
  return out;
}

}  // namespace

Eigen::VectorXd pack_hyperparams(const Hyperparams& hp, bool has_events) {
  std::vector<double> z;
  push_kernel(z, hp.routine_kernel);
  if (has_events) push_kernel(z, hp.event_kernel);
  if (hp.likelihood == Likelihood::truncated_gaussian) {
    z.push_back(std::log(hp.beta_r));
    if (has_events) z.push_back(std::log(hp.beta_e));
  }
  z.push_back(std::log(hp.noise_v));
  return Eigen::Map<Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size()));
}

Hyperparams unpack_hyperparams(const Eigen::VectorXd& z, const Hyperparams& like, bool has_events) {
  Hyperparams hp = like;
  Eigen::Index i = 0;
  hp.routine_kernel = pop_kernel(z, i, like.routine_kernel);
  if (has_events) hp.event_kernel = pop_kernel(z, i, like.event_kernel);
  if (hp.likelihood == Likelihood::truncated_gaussian) {
    hp.beta_r = std::exp(z(i++));
    if (has_events) hp.beta_e = std::exp(z(i++));
  }
  hp.noise_v = std::exp(z(i++));
  return hp;
}

OptResult optimize(const Dataset& ds, const Hyperparams& init, const OptConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_evals < 1)
    throw std::invalid_argument("optimize: restarts and max_evals must be positive");
  const bool has_events = ds.total_events() > 0;
  init.check(ds.d_routine(), ds.d_event());
  EPConfig ep;
  ep.damping = cfg.inner_damping;
  ep.max_iters = cfg.inner_max_iters;
  ep.tol = cfg.inner_tol;
  ep.quad_nodes = cfg.quad_nodes;

  OptResult res;
  struct Eval {
    double objective, evidence;
    bool converged;
  };
  // Messages of the last converged fit seed the next one; reset per restart
  // so restarts stay independent of each other.
  std::optional<EPState> warm;
  auto evaluate = [&](const Hyperparams& hp) -> Eval {
    try {
      const FittedModel m = warm && cfg.warm_start ? fit(ds, hp, ep, *warm) : fit(ds, hp, ep);
      if (m.converged && std::isfinite(m.log_evidence)) warm = m.state;
      if (!std::isfinite(m.log_evidence)) {
        res.failures.push_back("non-finite evidence");
        return {-std::numeric_limits<double>::infinity(), m.log_evidence, m.converged};
      }
      const double penalty = m.converged ? 0.0 : cfg.nonconverged_penalty;
      return {m.log_evidence - penalty, m.log_evidence, m.converged};
    } catch (const std::exception& e) {
      res.failures.push_back(e.what());
      return {-std::numeric_limits<double>::infinity(), 0.0, false};
    }
  };

  const Eigen::VectorXd z0 = pack_hyperparams(init, has_events);
  const Eval at_init = evaluate(init);
  ++res.evaluations;
  res.hp = init;
  res.objective = at_init.objective;
  res.init_objective = at_init.objective;
  res.log_evidence = at_init.evidence;
  res.converged_fit = at_init.converged;

  NelderMeadOptions nm;
  nm.max_evals = cfg.max_evals;
  nm.initial_step = cfg.initial_step;
  nm.f_tol = 1e-4;
  nm.x_tol = 1e-3;
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd start = z0;
    warm.reset();
    if (r > 0) {
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> normal(0.0, cfg.restart_spread);
      for (Eigen::Index i = 0; i < start.size(); ++i) start(i) += normal(rng);
    }
    const NelderMeadResult out = nelder_mead(
        [&](const Eigen::VectorXd& z) { return -evaluate(unpack_hyperparams(z, init, has_events)).objective; },
        start, nm);
    res.evaluations += out.evals;
    std::vector<double> trace(out.trace.size());
    std::transform(out.trace.begin(), out.trace.end(), trace.begin(), [](double v) { return -v; });
    res.traces.push_back(std::move(trace));
    if (-out.value > res.objective) {
      // Re-evaluate from cold messages so the reported evidence is what a
      // plain fit at these hyperparameters gives.
      const Hyperparams hp = unpack_hyperparams(out.x, init, has_events);
      warm.reset();
      const Eval e = evaluate(hp);
      ++res.evaluations;
      if (e.objective > res.objective) {
        res.hp = hp;
        res.objective = e.objective;
        res.log_evidence = e.evidence;
        res.converged_fit = e.converged;
        res.best_restart = r;
      }
    }
  }
  if (!std::isfinite(res.objective))
    throw HyperoptError("optimize: every evidence evaluation failed", res.failures);
  return res;
}

std::vector<Relevance> ard_relevance(const SeArdParams& kernel,
                                     const std::vector<std::string>& names) {
  if (static_cast<Eigen::Index>(names.size()) != kernel.length_scales.size())
    throw std::invalid_argument("ard_relevance: " + std::to_string(names.size()) + " names for " +
                                std::to_string(kernel.length_scales.size()) + " length-scales");
  std::vector<Relevance> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    out.push_back({names[i], kernel.length_scales(static_cast<Eigen::Index>(i))});
  std::stable_sort(out.begin(), out.end(), [](const Relevance& a, const Relevance& b) {
    return a.length_scale < b.length_scale;
  });
  return out;
}

std::vector<Relevance> ard_relevance(const Hyperparams& hp, Component which,
                                     const std::vector<std::string>& names) {
  const Kernel& k = which == Component::routine ? hp.routine_kernel : hp.event_kernel;
  const auto* se = std::get_if<SeArdParams>(&k);
  if (!se) throw std::invalid_argument("ard_relevance: component kernel has no length-scales");
  return ard_relevance(*se, names);
}

nlohmann::json opt_config_to_json(const OptConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"max_evals", cfg.max_evals},
          {"seed", cfg.seed},
          {"restart_spread", cfg.restart_spread},
          {"initial_step", cfg.initial_step},
          {"inner_max_iters", cfg.inner_max_iters},
          {"inner_damping", cfg.inner_damping},
          {"inner_tol", cfg.inner_tol},
          {"quad_nodes", cfg.quad_nodes},
          {"nonconverged_penalty", cfg.nonconverged_penalty},
          {"warm_start", cfg.warm_start}};
}

OptConfig opt_config_from_json(const nlohmann::json& j, const OptConfig& d) {
  OptConfig c = d;
  c.restarts = j.value("restarts", c.restarts);
  c.max_evals = j.value("max_evals", c.max_evals);
  c.seed = j.value("seed", c.seed);
  c.restart_spread = j.value("restart_spread", c.restart_spread);
  c.initial_step = j.value("initial_step", c.initial_step);
  c.inner_max_iters = j.value("inner_max_iters", c.inner_max_iters);
  c.inner_damping = j.value("inner_damping", c.inner_damping);
  c.inner_tol = j.value("inner_tol", c.inner_tol);
  c.quad_nodes = j.value("quad_nodes", c.quad_nodes);
  c.nonconverged_penalty = j.value("nonconverged_penalty", c.nonconverged_penalty);
  c.warm_start = j.value("warm_start", c.warm_start);
  return c;
}

nlohmann::json opt_result_to_json(const OptResult& r) {
  return {{"hyperparams", hyperparams_to_json(r.hp)},
          {"log_evidence", r.log_evidence},
          {"objective", r.objective},
          {"init_objective", r.init_objective},
          {"converged_fit", r.converged_fit},
          {"evaluations", r.evaluations},
          {"best_restart", r.best_restart},
          {"failures", r.failures}};
}

std::string relevance_tsv(const std::vector<Relevance>& ranked) {
  std::ostringstream out;
  out.precision(6);
  out << "rank\tfeature\tlength_scale\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out << i + 1 << '\t' << ranked[i].name << '\t' << ranked[i].length_scale << '\n';
  return out.str();
}

}  // namespace bam
