#pragma once

#include "bam/ep.hpp"
#include "bam/eval.hpp"
#include "bam/hyperopt.hpp"
#include "bam/simulate.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bam {

enum class ModelKind { blr, gp, bam_lr, bam_gp_poisson, bam_gp_trunc };

/// Display name: "BLR", "GP", "BAM-LR", "BAM-GP (poisson)", "BAM-GP (trunc)".
std::string model_name(ModelKind kind);
ModelKind parse_model(const std::string& name);
std::vector<ModelKind> all_models();

struct BenchmarkConfig {
  std::uint64_t seed = 1;
  int n = 1000;
  int k = 10;
  /// Size of the independently generated tuning set on which every model's
  /// hyperparameters are chosen by evidence maximization.
  int tune_n = 200;
  std::vector<ModelKind> models = all_models();
  ToyParams toy;
  OptConfig opt;
  EPConfig ep;
};

struct ModelResult {
  ModelKind kind = ModelKind::blr;
  std::vector<Metrics> folds;  ///< totals, one entry per test fold
  std::optional<DecompositionMetrics> decomposition;  ///< pooled over test folds
  nlohmann::json tuned;        ///< selected hyperparameters
  int nonconverged_folds = 0;
  double seconds = 0.0;

  Summary summary(double Metrics::*field) const;
};

struct BenchmarkResult {
  BenchmarkConfig config;
  std::vector<ModelResult> models;

  const ModelResult* find(ModelKind kind) const;
};

/// Generates the toy data and the tuning set, tunes each model, and runs
/// k-fold cross-validation. Progress goes to `log` when given.
BenchmarkResult run_benchmark(const BenchmarkConfig& cfg, std::ostream* log = nullptr);

/// Model x metric table of "mean (stderr)" cells over folds.
std::string prediction_table_tsv(const BenchmarkResult& r);
/// Model x component table of pooled decomposition metrics.
std::string decomposition_table_tsv(const BenchmarkResult& r);
nlohmann::json benchmark_report(const BenchmarkResult& r);

}  // namespace bam
