#pragma once

#include "bam/data.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bam {

struct Metrics {
  double rae = 0.0;       ///< 100 * sum|pred - y| / sum|mean(y) - y|
  double corrcoef = 0.0;  ///< Pearson
  double r2 = 0.0;        ///< 1 - SSE/SST clamped below at 0
  double r2_raw = 0.0;    ///< 1 - SSE/SST
};

/// Throws std::invalid_argument on empty or unequal inputs and
/// std::domain_error when y_true is constant.
Metrics metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// k contiguous test blocks in dataset order. With group keys, runs of
/// equal consecutive keys form indivisible groups and the blocks are
/// balanced by group count. Throws if k exceeds the number of groups or a
/// key reappears after its run ended.
std::vector<Fold> cv_folds(std::size_t n, int k,
                           const std::optional<std::vector<std::string>>& group_keys = {});
std::vector<Fold> cv_folds(const Dataset& ds, int k,
                           const std::optional<std::vector<std::string>>& group_keys = {});

/// Estimated component values for one observation.
struct ComponentEstimate {
  double routine = 0.0;
  std::vector<double> events;
};

struct DecompositionMetrics {
  Metrics routine;  ///< pooled over observations
  Metrics events;   ///< pooled over all (observation, event) pairs
};

/// Throws DataError unless every estimate lines up with `truth` entry by
/// entry and event by event.
DecompositionMetrics evaluate_decomposition(const std::vector<ComponentEstimate>& estimates,
                                            const std::vector<GroundTruth::Entry>& truth);

struct Summary {
  double mean = 0.0;
  double stderr_ = 0.0;  ///< sample standard deviation / sqrt(n)
};

Summary summarize(const std::vector<double>& values);

/// "0.941 (0.005)".
std::string format_mean_stderr(const Summary& s, int decimals = 3);

}  // namespace bam
