#include "bam/benchmark.hpp"

#include "bam/baselines.hpp"
#include "bam/predict.hpp"
#include "bam/snapshot.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bam {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTuneSeedOffset = 1000003;

json metrics_json(const Metrics& m) {
  return {{"rae", m.rae}, {"corrcoef", m.corrcoef}, {"r2", m.r2}, {"r2_raw", m.r2_raw}};
}

Hyperparams default_bam_hyperparams(const Dataset& ds, Likelihood lik) {
  Hyperparams hp;
  hp.routine_kernel = SeArdParams{1.0, Eigen::VectorXd::Ones(ds.d_routine())};
  hp.event_kernel = SeArdParams{1.0, Eigen::VectorXd::Ones(std::max(ds.d_event(), 1))};
  hp.beta_r = hp.beta_e = 0.1;
  hp.noise_v = 0.05;
  hp.likelihood = lik;
  return hp;
}

// Per-model state after tuning: a function that fits on a training set and
// returns per-observation predictions for a test set.
struct FoldOutput {
  std::vector<double> totals;
  std::vector<ComponentEstimate> components;  // empty when not decomposable
  bool converged = true;
};

}  // namespace

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::blr: return "BLR";
    case ModelKind::gp: return "GP";
    case ModelKind::bam_lr: return "BAM-LR";
    case ModelKind::bam_gp_poisson: return "BAM-GP (poisson)";
    case ModelKind::bam_gp_trunc: return "BAM-GP (trunc)";
  }
  return "?";
}

ModelKind parse_model(const std::string& name) {
  if (name == "blr" || name == "BLR") return ModelKind::blr;
  if (name == "gp" || name == "GP") return ModelKind::gp;
  if (name == "bam-lr" || name == "BAM-LR") return ModelKind::bam_lr;
  if (name == "bam-gp-poisson" || name == "BAM-GP (poisson)") return ModelKind::bam_gp_poisson;
  if (name == "bam-gp-trunc" || name == "BAM-GP (trunc)") return ModelKind::bam_gp_trunc;
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::vector<ModelKind> all_models() {
  return {ModelKind::blr, ModelKind::gp, ModelKind::bam_lr, ModelKind::bam_gp_poisson,
          ModelKind::bam_gp_trunc};
}

Summary ModelResult::summary(double Metrics::*field) const {
  std::vector<double> v;
  for (const auto& m : folds) v.push_back(m.*field);
  return summarize(v);
}

const ModelResult* BenchmarkResult::find(ModelKind kind) const {
  for (const auto& m : models)
    if (m.kind == kind) return &m;
  return nullptr;
}

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg, std::ostream* log) {
  BenchmarkResult result;
  result.config = cfg;
  const ToySample sample = generate_toy(cfg.n, cfg.seed, cfg.toy);
  const ToySample tuning = generate_toy(cfg.tune_n, cfg.seed + kTuneSeedOffset, cfg.toy);
  const Dataset& ds = sample.data;
  const auto folds = cv_folds(ds, cfg.k);

  for (ModelKind kind : cfg.models) {
    const auto t0 = std::chrono::steady_clock::now();
    ModelResult mr;
    mr.kind = kind;
    if (log) *log << "[benchmark seed " << cfg.seed << "] tuning " << model_name(kind) << std::endl;

    // Tune on the independent set, then define the per-fold fit/predict.
    std::function<FoldOutput(const Dataset&, const Dataset&)> run_fold;
    switch (kind) {
      case ModelKind::blr: {
        const BlrModel tuned = fit_blr_evidence(tuning.data, true);
        mr.tuned = {{"prior_var", tuned.prior_var}, {"noise_var", tuned.noise_var}};
        run_fold = [tuned](const Dataset& train, const Dataset& test) {
          const BlrModel m = fit_blr(train, true, tuned.prior_var, tuned.noise_var);
          FoldOutput out;
          for (const auto& o : test.observations()) {
            const PredictiveDistribution p = blr_decompose(m, o);
            out.totals.push_back(p.total.mean);
            ComponentEstimate c{p.routine.mean, {}};
            for (const auto& e : p.events) c.events.push_back(e.mean);
            out.components.push_back(std::move(c));
          }
          return out;
        };
        break;
      }
      case ModelKind::gp: {
        GpBaselineParams init;
        const int dim = tuning.data.d_routine() + tuning.data.d_event();
        double var_y = 0.0, mean_y = 0.0;
        for (const auto& o : tuning.data.observations()) mean_y += o.y;
        mean_y /= static_cast<double>(tuning.data.size());
        for (const auto& o : tuning.data.observations()) var_y += (o.y - mean_y) * (o.y - mean_y);
        var_y /= static_cast<double>(tuning.data.size());
        init.kernel = SeArdParams{var_y, Eigen::VectorXd::Ones(dim)};
        init.noise_var = 0.1 * var_y;
        const GpBaselineParams tuned =
            optimize_gp_baseline(tuning.data, true, init, cfg.opt.restarts * cfg.opt.max_evals);
        mr.tuned = {{"kernel", kernel_to_json(tuned.kernel)}, {"noise_var", tuned.noise_var}};
        run_fold = [tuned](const Dataset& train, const Dataset& test) {
          const GpBaseline m = fit_gp_baseline(train, true, tuned);
          FoldOutput out;
          for (const auto& o : test.observations()) out.totals.push_back(gp_baseline_predict(m, o).mean);
          return out;
        };
        break;
      }
      case ModelKind::bam_lr:
      case ModelKind::bam_gp_poisson:
      case ModelKind::bam_gp_trunc: {
        Hyperparams init = default_bam_hyperparams(
            tuning.data,
            kind == ModelKind::bam_gp_poisson ? Likelihood::poisson : Likelihood::truncated_gaussian);
        if (kind == ModelKind::bam_lr) init = bam_lr_hyperparams(init);
        OptConfig opt = cfg.opt;
        opt.quad_nodes = cfg.ep.quad_nodes;
        const OptResult tuned = optimize(tuning.data, init, opt);
        mr.tuned = hyperparams_to_json(tuned.hp);
        const EPConfig ep = cfg.ep;
        run_fold = [hp = tuned.hp, ep](const Dataset& train, const Dataset& test) {
          const FittedModel m = fit(train, hp, ep);
          FoldOutput out;
          out.converged = m.converged;
          for (const auto& p : predict_dataset(m, test)) {
            out.totals.push_back(p.total.mean);
            ComponentEstimate c{p.routine.mean, {}};
            for (const auto& e : p.events) c.events.push_back(e.mean);
            out.components.push_back(std::move(c));
          }
          return out;
        };
        break;
      }
    }

    std::vector<ComponentEstimate> pooled;
    std::vector<GroundTruth::Entry> pooled_truth;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const FoldOutput out = run_fold(ds.subset(folds[f].train), ds.subset(folds[f].test));
      std::vector<double> y;
      for (std::size_t i : folds[f].test) y.push_back(ds[i].y);
      mr.folds.push_back(metrics(y, out.totals));
      if (!out.converged) ++mr.nonconverged_folds;
      for (std::size_t j = 0; j < out.components.size(); ++j) {
        pooled.push_back(out.components[j]);
        pooled_truth.push_back(sample.truth.entries[folds[f].test[j]]);
      }
      if (log)
        *log << "[benchmark seed " << cfg.seed << "] " << model_name(kind) << " fold " << f + 1
             << "/" << folds.size() << " R2 " << mr.folds.back().r2_raw << std::endl;
    }
    if (!pooled.empty()) mr.decomposition = evaluate_decomposition(pooled, pooled_truth);
    mr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.models.push_back(std::move(mr));
  }
  return result;
}

std::string prediction_table_tsv(const BenchmarkResult& r) {
  std::ostringstream out;
  out << "model\tRAE\tCorrCoef\tR2\n";
  for (const auto& m : r.models) {
    out << model_name(m.kind) << '\t' << format_mean_stderr(m.summary(&Metrics::rae)) << '\t'
        << format_mean_stderr(m.summary(&Metrics::corrcoef)) << '\t'
        << format_mean_stderr(m.summary(&Metrics::r2)) << '\n';
  }
  return out.str();
}

std::string decomposition_table_tsv(const BenchmarkResult& r) {
  std::ostringstream out;
  out << "model\tcomponent\tRAE\tCorrCoef\tR2\n";
  char buf[128];
  for (const auto& m : r.models) {
    if (!m.decomposition) continue;
    for (const auto& [label, met] : {std::pair{"A", m.decomposition->routine},
                                     std::pair{"B", m.decomposition->events}}) {
      std::snprintf(buf, sizeof buf, "%.3f\t%.3f\t%.3f", met.rae, met.corrcoef, met.r2);
      out << model_name(m.kind) << '\t' << label << '\t' << buf << '\n';
    }
  }
  return out.str();
}

json benchmark_report(const BenchmarkResult& r) {
  json models = json::array();
  for (const auto& m : r.models) {
    json folds = json::array();
    for (const auto& f : m.folds) folds.push_back(metrics_json(f));
    json entry{{"model", model_name(m.kind)},
               {"folds", folds},
               {"tuned", m.tuned},
               {"nonconverged_folds", m.nonconverged_folds},
               {"seconds", m.seconds}};
    for (const auto& [key, field] : {std::pair{"rae", &Metrics::rae},
                                     std::pair{"corrcoef", &Metrics::corrcoef},
                                     std::pair{"r2", &Metrics::r2},
                                     std::pair{"r2_raw", &Metrics::r2_raw}}) {
      const Summary s = m.summary(field);
      entry["summary"][key] = {{"mean", s.mean}, {"stderr", s.stderr_}};
    }
    if (m.decomposition)
      entry["decomposition"] = {{"A", metrics_json(m.decomposition->routine)},
                                {"B", metrics_json(m.decomposition->events)}};
    models.push_back(std::move(entry));
  }
  return {{"seed", r.config.seed},
          {"n", r.config.n},
          {"k", r.config.k},
          {"tune_n", r.config.tune_n},
          {"models", models}};
}

}  // namespace bam
