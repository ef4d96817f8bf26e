#pragma once

#include "bam/data.hpp"
#include "bam/gaussian.hpp"
#include "bam/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace bam {

enum class Likelihood { truncated_gaussian, poisson };
enum class Component { routine, event };

/// Kernel choice per component, component variances beta_r / beta_e,
/// observation noise v and the component output distribution. The betas
/// are unused by the Poisson likelihood.
struct Hyperparams {
  Kernel routine_kernel = SeArdParams{};
  Kernel event_kernel = SeArdParams{};
  double beta_r = 0.2;
  double beta_e = 0.2;
  double noise_v = 0.01;
  Likelihood likelihood = Likelihood::truncated_gaussian;

  void check(int d_routine, int d_event) const;
};

struct EPConfig {
  double damping = 0.5;  ///< fraction of the new message kept, in (0, 1]
  int max_iters = 200;
  double tol = 1e-4;     ///< on the max absolute natural-parameter change
  int quad_nodes = 20;
  double relative_jitter = 1e-8;

  void check() const;
};

/// All messages on the edges around one component factor h (one routine
/// value or one event value of one observation). Each variable has exactly
/// two neighbours, so variable-to-factor messages equal the opposite
/// factor-to-variable message and are not stored separately.
struct ComponentMessages {
  Gaussian1D gp_to_f;  ///< GP factor -> latent f (the f-side cavity of h)
  Gaussian1D h_to_f;   ///< h -> f, i.e. the site approximation sent to the GP
  Gaussian1D h_to_y;   ///< h -> component value y, forwarded to the sum factor
  Gaussian1D sum_to_y; ///< sum factor -> y (the y-side cavity of h)

  friend bool operator==(const ComponentMessages&, const ComponentMessages&) = default;
};

struct EPState {
  std::vector<ComponentMessages> routine;  ///< one per observation
  std::vector<ComponentMessages> events;   ///< observation-major, event-minor
  std::vector<std::size_t> event_offset;   ///< N + 1 offsets into `events`

  std::vector<ComponentMessages>& messages(Component c) {
    return c == Component::routine ? routine : events;
  }
  const std::vector<ComponentMessages>& messages(Component c) const {
    return c == Component::routine ? routine : events;
  }
};

/// Gaussian posterior q(f) = N(mu, Sigma) of one GP given its site
/// approximations, kept in the factored form
/// B = I + S^1/2 K S^1/2 = L L^T with S = diag(site precisions).
struct GpPosterior {
  std::vector<Eigen::VectorXd> inputs;
  Kernel kernel;
  Eigen::MatrixXd K;
  Eigen::VectorXd sqrt_site_precision;
  Eigen::LLT<Eigen::MatrixXd> chol_b;
  Eigen::VectorXd alpha;  ///< (K + Sigma~)^-1 mu~, so mean = K alpha
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  ///< diag(Sigma)
  double log_det_b = 0.0;
  double site_quadratic = 0.0;  ///< nu~^T mu

  std::size_t size() const { return inputs.size(); }
};

/// Computes q(f) for Gram matrix K (jitter included) and sites given in
/// natural parameters. Sites may be uniform; precisions must be >= 0.
GpPosterior gp_posterior(std::vector<Eigen::VectorXd> inputs, Kernel kernel,
                         Eigen::MatrixXd K, const Eigen::VectorXd& site_precision,
                         const Eigen::VectorXd& site_precision_mean);

/// Factor-graph EP over the additive model for a fixed dataset and
/// hyperparameters. The individual message updates are public so that they
/// can be exercised in isolation; `sweep` runs one full iteration of the
/// fixed schedule.
class EPEngine {
 public:
  EPEngine(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg);

  const Dataset& dataset() const { return *ds_; }
  const Hyperparams& hyperparams() const { return hp_; }
  const EPConfig& config() const { return cfg_; }
  const Eigen::MatrixXd& gram(Component c) const;
  const std::vector<Eigen::VectorXd>& inputs(Component c) const;

  /// Every message uniform.
  EPState initial_state() const;

  /// q(f) for one component from the current sites.
  GpPosterior posterior(const EPState& state, Component c) const;

  /// GP -> f messages q(f_i) / m_{h->f_i} for every site of one component.
  /// Sites whose quotient has non-positive precision keep their previous
  /// message. Returns the largest natural-parameter change.
  double gp_to_site_messages(EPState& state, Component c) const;
  double gp_to_site_messages(EPState& state, const GpPosterior& q, Component c) const;

  /// Sum-factor messages for observation n: each component receives
  /// N(y_n - sum of the other means, v + sum of the other variances), or
  /// the uniform message if any other incoming message is not proper.
  double sum_factor_messages(EPState& state, std::size_t n) const;

  enum class Direction { toward_sum, toward_gp };
  /// Moment-matches every component factor of observation n and updates
  /// either the h -> y messages (toward_sum) or the h -> f sites
  /// (toward_gp), damped. Skips a factor when the quotient would have
  /// non-positive precision or Poisson quadrature fails.
  double component_factor_messages(EPState& state, std::size_t n, Direction dir) const;

  /// Tilted moments of one component factor given its two cavities.
  std::optional<TiltedMoments> tilted(Component c, const Gaussian1D& cavity_f,
                                      const Gaussian1D& cavity_y) const;

  /// One iteration: routine-GP and event-GP messages, then per observation
  /// component factors toward the sum, the sum factor, and component
  /// factors toward the GPs. Returns the largest natural-parameter change.
  double sweep(EPState& state) const;

  /// EP approximation of log p(y | inputs, hyperparameters).
  double log_marginal_likelihood(const EPState& state) const;

  /// Sum of squared natural parameters over all stored messages.
  static double message_norm(const EPState& state);

 private:
  const Dataset* ds_;
  Hyperparams hp_;
  EPConfig cfg_;
  std::vector<Eigen::VectorXd> routine_inputs_, event_inputs_;
  Eigen::MatrixXd routine_gram_, event_gram_;
  std::vector<std::size_t> event_offset_;
};

/// Converged (or last-iterate) EP solution with derived marginals.
struct FittedModel {
  Hyperparams hp;
  EPConfig cfg;
  EPState state;
  bool converged = false;
  int iterations = 0;
  double log_evidence = 0.0;
  std::uint64_t fingerprint = 0;
  int d_routine = 0;
  int d_event = 0;
  std::vector<double> trace_max_change;  ///< per iteration
  std::vector<double> trace_norm;        ///< per iteration
  GpPosterior routine_gp;
  GpPosterior event_gp;  ///< empty when the dataset has no events
  std::vector<Gaussian1D> routine_marginals;  ///< q(y_n^r)
  std::vector<Gaussian1D> event_marginals;    ///< q(y_n^{e_i}), observation-major

  const GpPosterior& gp(Component c) const {
    return c == Component::routine ? routine_gp : event_gp;
  }
};

/// Runs EP to convergence or cfg.max_iters. Non-convergence is reported in
/// the result, not thrown.
FittedModel fit(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg = {});

/// As above, starting the sweeps from the messages of an earlier fit on the
/// same dataset (possibly with other hyperparameters).
FittedModel fit(const Dataset& ds, const Hyperparams& hp, const EPConfig& cfg,
                const EPState& warm_start);

/// Runs the sweeps of `engine` from `state`.
FittedModel fit_from(const EPEngine& engine, EPState state);

/// Rebuilds posteriors, marginals and evidence from a stored message state.
FittedModel assemble(const EPEngine& engine, EPState state, bool converged,
                     int iterations);

double log_marginal_likelihood(const FittedModel& model, const Dataset& ds);

}  // namespace bam
