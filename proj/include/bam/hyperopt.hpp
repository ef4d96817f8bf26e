#pragma once

#include "bam/ep.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bam {

struct OptConfig {
  int restarts = 2;              ///< restart 0 starts at init, later ones at seeded perturbations
  int max_evals = 150;           ///< evidence evaluations per restart
  std::uint64_t seed = 0;
  double restart_spread = 0.5;   ///< sd of the log-space perturbation of later restarts
  double initial_step = 0.5;     ///< Nelder-Mead simplex edge in log space
  int inner_max_iters = 60;
  double inner_damping = 0.5;
  double inner_tol = 1e-4;
  int quad_nodes = 20;
  double nonconverged_penalty = 10.0;
  bool warm_start = true;        ///< start each EP fit from the previous converged messages
};

struct OptResult {
  Hyperparams hp;
  double log_evidence = 0.0;  ///< EP evidence at hp
  double objective = 0.0;     ///< evidence minus the non-convergence penalty
  double init_objective = 0.0;
  bool converged_fit = false;
  int evaluations = 0;
  int best_restart = -1;      ///< -1 when init was kept
  std::vector<std::vector<double>> traces;  ///< objective per evaluation, per restart
  std::vector<std::string> failures;
};

class HyperoptError : public std::runtime_error {
 public:
  HyperoptError(const std::string& what, std::vector<std::string> log)
      : std::runtime_error(what), failure_log(std::move(log)) {}
  std::vector<std::string> failure_log;
};

/// Log-space parameter vector: per component kernel parameters (SE: signal
/// variance and length-scales; linear: weight and, if nonzero, bias
/// variance), then beta_r and beta_e for the truncated likelihood, then the
/// noise variance. Event parameters are omitted when the dataset has no
/// events.
Eigen::VectorXd pack_hyperparams(const Hyperparams& hp, bool has_events);
Hyperparams unpack_hyperparams(const Eigen::VectorXd& z, const Hyperparams& like, bool has_events);

/// Type-II maximum likelihood by Nelder-Mead on the EP evidence. The result
/// never has a lower objective than `init`.
OptResult optimize(const Dataset& ds, const Hyperparams& init, const OptConfig& cfg = {});

struct Relevance {
  std::string name;
  double length_scale = 0.0;
};

/// Features ordered by ascending length-scale; ties keep input order.
std::vector<Relevance> ard_relevance(const SeArdParams& kernel,
                                     const std::vector<std::string>& names);
std::vector<Relevance> ard_relevance(const Hyperparams& hp, Component which,
                                     const std::vector<std::string>& names);

nlohmann::json opt_config_to_json(const OptConfig& cfg);
OptConfig opt_config_from_json(const nlohmann::json& j, const OptConfig& defaults = {});
nlohmann::json opt_result_to_json(const OptResult& r);

/// "rank\tfeature\tlength_scale" rows with a header line.
std::string relevance_tsv(const std::vector<Relevance>& ranked);

}  // namespace bam
