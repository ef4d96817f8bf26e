#include "bam/ep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bam {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

// Replaces `msg` by `next` damped against its current value and returns the
// natural-parameter change. A non-proper result is rejected.
double update_damped(Gaussian1D& msg, const Gaussian1D& next, double damping) {
  const Gaussian1D damped = damp(msg, next, damping);
  if (!(damped.precision > 0.0) || !std::isfinite(damped.precision_mean)) return 0.0;
  const double change = max_abs_change(msg, damped);
  msg = damped;
  return change;
}

}  // namespace

void Hyperparams::check(int d_routine, int d_event) const {
  check_params(routine_kernel, d_routine);
  if (d_event > 0) check_params(event_kernel, d_event);
  require_positive(noise_v, "noise_v");
  if (likelihood == Likelihood::truncated_gaussian) {
    require_positive(beta_r, "beta_r");
    require_positive(beta_e, "beta_e");
  }
}

void EPConfig::check() const {
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("damping must lie in (0, 1]");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  require_positive(tol, "tol");
  if (quad_nodes <= 0) throw std::invalid_argument("quad_nodes must be positive");
  if (!(relative_jitter >= 0.0)) throw std::invalid_argument("relative_jitter must be >= 0");
}

GpPosterior gp_posterior(std::vector<Eigen::VectorXd> inputs, Kernel kernel,
                         Eigen::MatrixXd K, const Eigen::VectorXd& site_precision,
                         const Eigen::VectorXd& site_precision_mean) {
  GpPosterior q;
  q.inputs = std::move(inputs);
  q.kernel = std::move(kernel);
  q.sqrt_site_precision = site_precision.cwiseMax(0.0).cwiseSqrt();
  const Eigen::VectorXd& s = q.sqrt_site_precision;

  Eigen::MatrixXd B = s.asDiagonal() * K * s.asDiagonal();
  B.diagonal().array() += 1.0;
  q.chol_b.compute(B);
  if (q.chol_b.info() != Eigen::Success)
    throw CholeskyError("EP posterior: factorization of I + S^1/2 K S^1/2 failed");
  const auto L = q.chol_b.matrixL();
  q.log_det_b = 2.0 * L.nestedExpression().diagonal().array().log().sum();

  // alpha = nu - S^1/2 B^-1 S^1/2 K nu, mean = K alpha.
  const Eigen::VectorXd k_nu = K * site_precision_mean;
  q.alpha = site_precision_mean - s.cwiseProduct(q.chol_b.solve(s.cwiseProduct(k_nu)));
  q.mean = K * q.alpha;

  // diag(Sigma) = diag(K) - column norms of V = L^-1 S^1/2 K.
  Eigen::MatrixXd V = s.asDiagonal() * K;
  L.solveInPlace(V);
  q.variance = K.diagonal() - V.colwise().squaredNorm().transpose();
  q.site_quadratic = site_precision_mean.dot(q.mean);
  q.K = std::move(K);
  return q;
}

EPEngine::EPEngine(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg)
    : ds_(&ds), hp_(hp), cfg_(cfg) {
  if (ds.empty()) throw std::invalid_argument("EP: empty dataset");
  hp_.check(ds.d_routine(), ds.d_event());
  cfg_.check();
  event_offset_.reserve(ds.size() + 1);
  event_offset_.push_back(0);
  for (const auto& o : ds.observations()) {
    routine_inputs_.push_back(o.routine);
    for (const auto& e : o.events) event_inputs_.push_back(e);
    event_offset_.push_back(event_inputs_.size());
  }
  routine_gram_ = bam::gram(routine_inputs_, hp_.routine_kernel, cfg_.relative_jitter).matrix;
  if (!event_inputs_.empty())
    event_gram_ = bam::gram(event_inputs_, hp_.event_kernel, cfg_.relative_jitter).matrix;
}

const Eigen::MatrixXd& EPEngine::gram(Component c) const {
  return c == Component::routine ? routine_gram_ : event_gram_;
}

const std::vector<Eigen::VectorXd>& EPEngine::inputs(Component c) const {
  return c == Component::routine ? routine_inputs_ : event_inputs_;
}

EPState EPEngine::initial_state() const {
  EPState s;
  s.routine.resize(routine_inputs_.size());
  s.events.resize(event_inputs_.size());
  s.event_offset = event_offset_;
  return s;
}

GpPosterior EPEngine::posterior(const EPState& state, Component c) const {
  const auto& msgs = state.messages(c);
  Eigen::VectorXd tau(static_cast<Eigen::Index>(msgs.size()));
  Eigen::VectorXd nu(tau.size());
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    tau(static_cast<Eigen::Index>(i)) = msgs[i].h_to_f.precision;
    nu(static_cast<Eigen::Index>(i)) = msgs[i].h_to_f.precision_mean;
  }
  const Kernel& k = c == Component::routine ? hp_.routine_kernel : hp_.event_kernel;
  return gp_posterior(inputs(c), k, gram(c), tau, nu);
}

double EPEngine::gp_to_site_messages(EPState& state, Component c) const {
  if (state.messages(c).empty()) return 0.0;
  return gp_to_site_messages(state, posterior(state, c), c);
}

double EPEngine::gp_to_site_messages(EPState& state, const GpPosterior& q, Component c) const {
  auto& msgs = state.messages(c);
  double change = 0.0;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const Gaussian1D marginal = Gaussian1D::from_moments(q.mean(idx), q.variance(idx));
    const Gaussian1D next = divide(marginal, msgs[i].h_to_f);
    if (!(next.precision > 0.0) || !std::isfinite(next.precision_mean)) continue;
    change = std::max(change, max_abs_change(msgs[i].gp_to_f, next));
    msgs[i].gp_to_f = next;
  }
  return change;
}

double EPEngine::sum_factor_messages(EPState& state, std::size_t n) const {
  const double y = (*ds_)[n].y;
  const std::size_t first = state.event_offset[n], last = state.event_offset[n + 1];

  // Direct recomputation per outgoing message; E_n is small, and removing a
  // term from a running sum would lose precision.
  std::vector<ComponentMessages*> all{&state.routine[n]};
  for (std::size_t j = first; j < last; ++j) all.push_back(&state.events[j]);
  double change = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    double m = 0.0, v = 0.0;
    bool ok = true;
    for (std::size_t j = 0; j < all.size() && ok; ++j) {
      if (j == i) continue;
      const Gaussian1D& in = all[j]->h_to_y;
      ok = in.is_proper();
      if (ok) {
        m += in.mean();
        v += in.variance();
      }
    }
    const Gaussian1D next =
        ok ? Gaussian1D::from_moments(y - m, hp_.noise_v + v) : Gaussian1D::uniform();
    change = std::max(change, max_abs_change(all[i]->sum_to_y, next));
    all[i]->sum_to_y = next;
  }
  return change;
}

std::optional<TiltedMoments> EPEngine::tilted(Component c, const Gaussian1D& cavity_f,
                                              const Gaussian1D& cavity_y) const {
  if (hp_.likelihood == Likelihood::poisson)
    return poisson_tilted_moments(cavity_f, cavity_y, cfg_.quad_nodes);
  const double beta = c == Component::routine ? hp_.beta_r : hp_.beta_e;
  try {
    return truncated_tilted_moments(cavity_f, cavity_y, beta);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

double EPEngine::component_factor_messages(EPState& state, std::size_t n, Direction dir) const {
  double change = 0.0;
  auto update = [&](ComponentMessages& cm, Component c) {
    if (!cm.gp_to_f.is_proper()) return;
    const auto t = tilted(c, cm.gp_to_f, cm.sum_to_y);
    if (!t) return;
    if (dir == Direction::toward_sum) {
      const Gaussian1D proj = Gaussian1D::from_moments(t->y.mean, t->y.variance);
      const Gaussian1D next = divide(proj, cm.sum_to_y);
      if (!(next.precision > 0.0)) return;
      change = std::max(change, update_damped(cm.h_to_y, next, cfg_.damping));
    } else {
      const Gaussian1D proj = Gaussian1D::from_moments(t->f.mean, t->f.variance);
      const Gaussian1D next = divide(proj, cm.gp_to_f);
      if (!(next.precision > 0.0)) return;
      change = std::max(change, update_damped(cm.h_to_f, next, cfg_.damping));
    }
  };
  update(state.routine[n], Component::routine);
  for (std::size_t j = state.event_offset[n]; j < state.event_offset[n + 1]; ++j)
    update(state.events[j], Component::event);
  return change;
}

double EPEngine::sweep(EPState& state) const {
  double change = gp_to_site_messages(state, Component::routine);
  change = std::max(change, gp_to_site_messages(state, Component::event));
  for (std::size_t n = 0; n < ds_->size(); ++n) {
    change = std::max(change, component_factor_messages(state, n, Direction::toward_sum));
    change = std::max(change, sum_factor_messages(state, n));
    change = std::max(change, component_factor_messages(state, n, Direction::toward_gp));
  }
  return change;
}

double EPEngine::log_marginal_likelihood(const EPState& state) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double total = 0.0;

  // Gaussian integral of each GP prior against its unnormalized sites.
  for (Component c : {Component::routine, Component::event}) {
    if (state.messages(c).empty()) continue;
    const GpPosterior q = posterior(state, c);
    total += -0.5 * q.log_det_b + 0.5 * q.site_quadratic;
  }

  // Sum factor against the unnormalized h -> y messages.
  for (std::size_t n = 0; n < ds_->size(); ++n) {
    double mean = 0.0, var = hp_.noise_v, lp = 0.0;
    auto add = [&](const Gaussian1D& m) {
      if (!m.is_proper()) return false;
      mean += m.mean();
      var += m.variance();
      lp += log_partition(m);
      return true;
    };
    if (!add(state.routine[n].h_to_y)) return kNegInf;
    for (std::size_t j = state.event_offset[n]; j < state.event_offset[n + 1]; ++j)
      if (!add(state.events[j].h_to_y)) return kNegInf;
    const double r = (*ds_)[n].y - mean;
    total += lp - 0.5 * (kLog2Pi + std::log(var) + r * r / var);
  }

  // Per-factor constants log C = log Z_tilted minus the normalizers of the
  // site terms against their cavities.
  auto g = [](const Gaussian1D& m) { return m.is_proper() ? log_partition(m) : 0.0; };
  auto correction = [&](const ComponentMessages& cm, Component c) {
    const auto t = tilted(c, cm.gp_to_f, cm.sum_to_y);
    if (!t) return kNegInf;
    const double log_z = t->y.log_z;
    const double site_f = g(multiply(cm.h_to_f, cm.gp_to_f).first) - g(cm.gp_to_f);
    const double site_y = g(multiply(cm.h_to_y, cm.sum_to_y).first) - g(cm.sum_to_y);
    return log_z - site_f - site_y;
  };
  for (const auto& cm : state.routine) total += correction(cm, Component::routine);
  for (const auto& cm : state.events) total += correction(cm, Component::event);
  return total;
}

double EPEngine::message_norm(const EPState& state) {
  double s = 0.0;
  auto add = [&](const Gaussian1D& m) {
    s += m.precision * m.precision + m.precision_mean * m.precision_mean;
  };
  for (const auto* v : {&state.routine, &state.events})
    for (const auto& cm : *v) {
      add(cm.gp_to_f);
      add(cm.h_to_f);
      add(cm.h_to_y);
      add(cm.sum_to_y);
    }
  return s;
}

FittedModel assemble(const EPEngine& engine, EPState state, bool converged, int iterations) {
  FittedModel m;
  const Dataset& ds = engine.dataset();
  m.hp = engine.hyperparams();
  m.cfg = engine.config();
  m.converged = converged;
  m.iterations = iterations;
  m.fingerprint = ds.fingerprint();
  m.d_routine = ds.d_routine();
  m.d_event = ds.d_event();
  m.routine_gp = engine.posterior(state, Component::routine);
  if (!state.events.empty()) m.event_gp = engine.posterior(state, Component::event);
  auto marginal = [](const ComponentMessages& cm) {
    return multiply(cm.h_to_y, cm.sum_to_y).first;
  };
  for (const auto& cm : state.routine) m.routine_marginals.push_back(marginal(cm));
  for (const auto& cm : state.events) m.event_marginals.push_back(marginal(cm));
  m.log_evidence = engine.log_marginal_likelihood(state);
  m.state = std::move(state);
  return m;
}

FittedModel fit(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg) {
  const EPEngine engine(ds, hp, cfg);
  return fit_from(engine, engine.initial_state());
}

FittedModel fit(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg,
                const EPState& warm_start) {
  const EPEngine engine(ds, hp, cfg);
  EPState state = engine.initial_state();
  if (warm_start.routine.size() != state.routine.size() ||
      warm_start.event_offset != state.event_offset)
    throw std::invalid_argument("fit: warm-start state does not match the dataset");
  return fit_from(engine, warm_start);
}

FittedModel fit_from(const EPEngine& engine, EPState state) {
  const EPConfig& cfg = engine.config();
  std::vector<double> trace_change, trace_norm;
  bool converged = false;
  int iter = 0;
  while (iter < cfg.max_iters) {
    const double change = engine.sweep(state);
    ++iter;
    trace_change.push_back(change);
    trace_norm.push_back(EPEngine::message_norm(state));
    if (change < cfg.tol) {
      converged = true;
      break;
    }
  }
  FittedModel m = assemble(engine, std::move(state), converged, iter);
  m.trace_max_change = std::move(trace_change);
  m.trace_norm = std::move(trace_norm);
  return m;
}

double log_marginal_likelihood(const FittedModel& model, const Dataset& ds) {
  if (ds.fingerprint() != model.fingerprint)
    throw std::invalid_argument("log_marginal_likelihood: dataset does not match the model");
  return EPEngine(ds, model.hp, model.cfg).log_marginal_likelihood(model.state);
}

}  // namespace bam
